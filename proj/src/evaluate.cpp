#include "oqa/evaluate.hpp"

namespace oqa {

SparseVec EvalContext::vec(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) {
    Scalar e = scalar(c);
    if (!e.is_zero()) out.emplace_back(i, std::move(e));
  }
  return out;
}

AlgebraPtr EvalContext::algebra(const AlgebraPtr& A) {
  if (auto it = cache_.find(A.get()); it != cache_.end()) return it->second;
  AlgebraPtr out;
  if (A->is_tensor_product()) {
    out = tensor_algebra(algebra(A->factors[0]), algebra(A->factors[1]));
  } else {
    bool symbolic = false;
    auto scan = [&](const SparseVec& v) {
      for (const auto& [i, c] : v)
        if (!c.is_constant()) symbolic = true;
    };
    for (const auto& m : A->mul) scan(m);
    scan(A->unit);
    if (!symbolic) {
      out = A;
    } else {
      std::vector<SparseVec> mul;
      mul.reserve(A->mul.size());
      for (const auto& m : A->mul) mul.push_back(vec(m));
      out = make_algebra(A->name, A->basis, std::move(mul), vec(A->unit));
    }
  }
  cache_.emplace(A.get(), out);
  return out;
}

Element EvalContext::element(const Element& e) { return Element(algebra(e.algebra()), vec(e.coeffs())); }

AlgebraMap EvalContext::linear_map(const AlgebraMap& f) {
  std::vector<SparseVec> images;
  images.reserve(f.images().size());
  for (const auto& im : f.images()) images.push_back(vec(im));
  return AlgebraMap(algebra(f.source()), algebra(f.target()), std::move(images));
}

AlgebraMap EvalContext::map(const AlgebraMap& f) {
  AlgebraMap g = linear_map(f);
  if (!f.is_automorphism()) return g;
  return make_map(g.source(), g.target(), g.images(), true);
}

TensorElement EvalContext::tensor(const TensorElement& t) {
  std::vector<AlgebraPtr> legs;
  for (const auto& A : t.legs()) legs.push_back(algebra(A));
  TensorElement out(std::move(legs));
  for (const auto& [idx, c] : t.terms()) out.add_term(idx, scalar(c));
  return out;
}

}  // namespace oqa
