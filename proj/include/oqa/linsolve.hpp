#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oqa/scalar.hpp"

namespace oqa {

/// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Scalar& c);
Scalar sparse_get(const SparseVec& a, std::uint32_t index);

/// Solves A·X = B exactly over the Scalar field. A is n×n and given by its
/// columns; each right-hand side is one column of B. Returns std::nullopt
/// when A is singular.
///
/// Sparse Gauss-Jordan elimination; among candidate pivots of a column the
/// one with the smallest symbolic size is taken, so unit (monomial) pivots
/// are preferred and Laurent entries stay Laurent whenever possible.
std::optional<std::vector<SparseVec>> solve_linear(std::size_t n, const std::vector<SparseVec>& columns,
                                                   const std::vector<SparseVec>& rhs);

}  // namespace oqa
