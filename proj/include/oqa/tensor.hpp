#pragma once

#include <map>
#include <optional>
#include <vector>

#include "oqa/algebra.hpp"

namespace oqa {

using MultiIndex = std::vector<std::uint32_t>;

/// Sparse element of A_1 ⊗ ... ⊗ A_n: basis multi-index -> nonzero Scalar.
/// Terms are kept in lexicographic multi-index order, which fixes every
/// iteration and serialisation order.
class TensorElement {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  TensorElement() = default;
  explicit TensorElement(std::vector<AlgebraPtr> legs) : legs_(std::move(legs)) {}
  static TensorElement unit(std::vector<AlgebraPtr> legs);
  static TensorElement from_element(const Element& e);

  const std::vector<AlgebraPtr>& legs() const { return legs_; }
  std::size_t arity() const { return legs_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const MultiIndex& idx) const;

  /// Adds c to the coefficient at idx, dropping it if it cancels.
  void add_term(const MultiIndex& idx, const Scalar& c);
  /// Convenience for literals: labels are resolved per leg.
  void add_term(const std::vector<std::string>& labels, const Scalar& c);

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement scaled(const Scalar& c) const;
  Element to_element() const;  // arity 1 only

  std::vector<std::string> labels(const MultiIndex& idx) const;

  friend bool operator==(const TensorElement& a, const TensorElement& b);

 private:
  std::vector<AlgebraPtr> legs_;
  Terms terms_;
};

bool same_legs(const std::vector<AlgebraPtr>& a, const std::vector<AlgebraPtr>& b);

/// Places t at `positions` (strictly increasing, zero-based) among
/// target_legs, with the unit in every other leg.
TensorElement embed(const TensorElement& t, const std::vector<AlgebraPtr>& target_legs,
                    const std::vector<std::size_t>& positions);

/// Componentwise product s·t.
TensorElement tensor_multiply(const TensorElement& s, const TensorElement& t);

/// s · embed(t, s.legs(), positions) without materialising the embedding.
/// Where reversed[k] is set, leg positions[k] multiplies in the opposite
/// order (t-part on the left), i.e. the product of that leg's opposite
/// algebra.
TensorElement multiply_placed(const TensorElement& s, const TensorElement& t,
                              const std::vector<std::size_t>& positions, const std::vector<bool>& reversed = {});

/// One factor of an ordered product of embedded elements.
struct Placed {
  const TensorElement& element;
  std::vector<std::size_t> positions;
};

/// embed(f1)·embed(f2)·... in `legs`, e.g. {{r,{0,1}},{r,{0,2}},{r,{1,2}}}
/// is r12 r13 r23.
TensorElement ordered_product(const std::vector<AlgebraPtr>& legs, const std::vector<Placed>& factors);

/// Applies maps[k] on leg k; nullptr leaves the leg unchanged.
TensorElement apply_maps(const TensorElement& t, const std::vector<const AlgebraMap*>& maps);

/// Result leg k is input leg perm[k].
TensorElement permute_legs(const TensorElement& t, const std::vector<std::size_t>& perm);

/// s ⊗ t with legs concatenated.
TensorElement outer_product(const TensorElement& s, const TensorElement& t);

/// Groups consecutive legs into tensor-algebra legs; block_sizes must sum
/// to the arity. A block of size m becomes ((A_1 ⊗ A_2) ⊗ ...) ⊗ A_m.
TensorElement flatten(const TensorElement& t, const std::vector<std::size_t>& block_sizes);
/// Inverse of flatten for the same block sizes.
TensorElement unflatten(const TensorElement& t, const std::vector<std::size_t>& block_sizes);

/// Two-sided inverse in the tensor-product algebra. Throws
/// Error("NotInvertible").
TensorElement tensor_invert(const TensorElement& t);

/// True when s·t and t·s are both the unit.
bool is_two_sided_inverse(const TensorElement& s, const TensorElement& t);

struct TermDifference {
  MultiIndex index;
  Scalar lhs;
  Scalar rhs;
};

/// First multi-index (in term order) where the two elements differ.
std::optional<TermDifference> first_difference(const TensorElement& lhs, const TensorElement& rhs);

}  // namespace oqa
