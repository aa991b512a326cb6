#pragma once

#include <map>

#include "oqa/tensor.hpp"

namespace oqa {

/// Substitutes rational values for parameters throughout algebras, maps and
/// tensors. Algebras are rebuilt (and re-validated) only when their
/// structure constants mention a parameter; tensor-product algebras are
/// rebuilt from their evaluated factors so that the factor structure
/// survives.
class EvalContext {
 public:
  explicit EvalContext(Assignment values) : values_(std::move(values)) {}

  const Assignment& values() const { return values_; }

  Scalar scalar(const Scalar& s) const { return Scalar(s.evaluate(values_)); }
  SparseVec vec(const SparseVec& v) const;
  AlgebraPtr algebra(const AlgebraPtr& A);
  Element element(const Element& e);
  /// Certified automorphisms are re-certified after evaluation.
  AlgebraMap map(const AlgebraMap& f);
  /// Linear map without certification (antipodes).
  AlgebraMap linear_map(const AlgebraMap& f);
  TensorElement tensor(const TensorElement& t);

 private:
  Assignment values_;
  std::map<const Algebra*, AlgebraPtr> cache_;
};

}  // namespace oqa
