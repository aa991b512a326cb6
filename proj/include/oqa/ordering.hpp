#pragma once

#include <string>
#include <vector>

#include "oqa/tensor.hpp"

namespace oqa {

/// How basis elements of a (possibly nested) tensor-product leg are laid
/// out along a matrix axis.
struct OrderingSpec {
  enum class Units { RowMajor, ColMajor };   // E_ij order inside M_n
  enum class Pairs { FirstMajor, SecondMajor };  // (a, b) order inside A⊗B
  Units units = Units::RowMajor;
  Pairs pairs = Pairs::FirstMajor;

  friend bool operator==(const OrderingSpec&, const OrderingSpec&) = default;
};

/// "row-major,first-major" and the like; either part may be omitted.
OrderingSpec parse_ordering(const std::string& text);
std::string to_string(const OrderingSpec& spec);
/// All four combinations.
std::vector<OrderingSpec> all_orderings();

/// Position of basis index `idx` of `leg` along an axis under `spec`.
std::uint32_t axis_position(const Algebra& leg, std::uint32_t idx, const OrderingSpec& spec);

using Matrix = std::vector<std::vector<Scalar>>;

/// Dense dim×dim matrix of a 2-leg element: row from the first leg, column
/// from the second.
Matrix to_matrix(const TensorElement& t, const OrderingSpec& spec);

std::string matrix_to_csv(const Matrix& m);

}  // namespace oqa
