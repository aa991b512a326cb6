#include "oqa/tensor.hpp"

#include <numeric>

#include "oqa/error.hpp"

namespace oqa {

namespace {

using LegVec = std::vector<std::pair<std::uint32_t, Scalar>>;

// Calls fn(index, coeff) for every combination of one entry per leg.
template <typename Fn>
void for_each_combination(const std::vector<const SparseVec*>& per_leg, Fn&& fn) {
  const std::size_t n = per_leg.size();
  for (const auto* v : per_leg)
    if (v->empty()) return;
  std::vector<std::size_t> pos(n, 0);
  MultiIndex idx(n);
  for (;;) {
    Scalar c(1);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& [i, v] = (*per_leg[k])[pos[k]];
      idx[k] = i;
      c *= v;
    }
    fn(idx, c);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++pos[k] < per_leg[k]->size()) break;
      pos[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

void accumulate(TensorElement::Terms& acc, const MultiIndex& idx, const Scalar& c) {
  auto [it, inserted] = acc.try_emplace(idx, c);
  if (!inserted) it->second += c;
}

void drop_zeros(TensorElement::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
}

TensorElement from_terms(std::vector<AlgebraPtr> legs, TensorElement::Terms terms) {
  TensorElement t(std::move(legs));
  drop_zeros(terms);
  for (auto& [idx, c] : terms) t.add_term(idx, c);
  return t;
}

}  // namespace

bool same_legs(const std::vector<AlgebraPtr>& a, const std::vector<AlgebraPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!same_algebra(a[k], b[k])) return false;
  return true;
}

TensorElement TensorElement::unit(std::vector<AlgebraPtr> legs) {
  std::vector<const SparseVec*> units;
  for (const auto& A : legs) units.push_back(&A->unit);
  TensorElement t(std::move(legs));
  for_each_combination(units, [&](const MultiIndex& idx, const Scalar& c) { t.add_term(idx, c); });
  return t;
}

TensorElement TensorElement::from_element(const Element& e) {
  TensorElement t({e.algebra()});
  for (const auto& [i, c] : e.coeffs()) t.add_term(MultiIndex{i}, c);
  return t;
}

Scalar TensorElement::coeff(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Scalar() : it->second;
}

void TensorElement::add_term(const MultiIndex& idx, const Scalar& c) {
  if (idx.size() != legs_.size()) throw Error("ShapeMismatch", "multi-index arity differs from leg count");
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k] >= legs_[k]->dim()) throw Error("ShapeMismatch", "multi-index out of range");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TensorElement::add_term(const std::vector<std::string>& labels, const Scalar& c) {
  if (labels.size() != legs_.size()) throw Error("ShapeMismatch", "label count differs from leg count");
  MultiIndex idx(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) idx[k] = legs_[k]->index_of(labels[k]);
  add_term(idx, c);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  if (!same_legs(legs_, o.legs_)) throw Error("ShapeMismatch", "tensor legs differ");
  TensorElement out = *this;
  for (const auto& [idx, c] : o.terms_) out.add_term(idx, c);
  return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const { return *this + o.scaled(Scalar(-1)); }

TensorElement TensorElement::scaled(const Scalar& c) const {
  TensorElement out(legs_);
  if (c.is_zero()) return out;
  for (const auto& [idx, v] : terms_) out.terms_.emplace(idx, v * c);
  return out;
}

Element TensorElement::to_element() const {
  if (arity() != 1) throw Error("ShapeMismatch", "to_element needs a one-leg tensor");
  SparseVec v;
  for (const auto& [idx, c] : terms_) v.emplace_back(idx[0], c);
  return Element(legs_[0], std::move(v));
}

std::vector<std::string> TensorElement::labels(const MultiIndex& idx) const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < idx.size(); ++k) out.push_back(legs_[k]->basis[idx[k]]);
  return out;
}

bool operator==(const TensorElement& a, const TensorElement& b) {
  return same_legs(a.legs_, b.legs_) && a.terms_ == b.terms_;
}

TensorElement embed(const TensorElement& t, const std::vector<AlgebraPtr>& target_legs,
                    const std::vector<std::size_t>& positions) {
  if (positions.size() != t.arity()) throw Error("ShapeMismatch", "one position per leg is required");
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] >= target_legs.size()) throw Error("ShapeMismatch", "embedding position out of range");
    if (k > 0 && positions[k] <= positions[k - 1])
      throw Error("ShapeMismatch", "embedding positions must be strictly increasing");
    if (!same_algebra(target_legs[positions[k]], t.legs()[k]))
      throw Error("ShapeMismatch", "embedding leg algebra mismatch");
  }
  return multiply_placed(TensorElement::unit(target_legs), t, positions);
}

TensorElement multiply_placed(const TensorElement& s, const TensorElement& t,
                              const std::vector<std::size_t>& positions, const std::vector<bool>& reversed) {
  if (positions.size() != t.arity()) throw Error("ShapeMismatch", "one position per leg is required");
  const auto& legs = s.legs();
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] >= legs.size()) throw Error("ShapeMismatch", "placement position out of range");
    if (!same_algebra(legs[positions[k]], t.legs()[k])) throw Error("ShapeMismatch", "leg mismatch in product");
  }
  const std::size_t m = positions.size();
  std::vector<bool> rev(m, false);
  for (std::size_t k = 0; k < reversed.size() && k < m; ++k) rev[k] = reversed[k];

  TensorElement::Terms acc;
  std::vector<const SparseVec*> per_leg(legs.size());
  std::vector<SparseVec> singletons(legs.size());
  for (const auto& [si, sc] : s.terms()) {
    for (std::size_t l = 0; l < legs.size(); ++l) {
      singletons[l] = {{si[l], Scalar(1)}};
      per_leg[l] = &singletons[l];
    }
    for (const auto& [ti, tc] : t.terms()) {
      bool vanishes = false;
      for (std::size_t k = 0; k < m && !vanishes; ++k) {
        const std::size_t l = positions[k];
        const Algebra& A = *legs[l];
        per_leg[l] = rev[k] ? &A.product(ti[k], si[l]) : &A.product(si[l], ti[k]);
        vanishes = per_leg[l]->empty();
      }
      if (!vanishes) {
        Scalar c = sc * tc;
        for_each_combination(per_leg, [&](const MultiIndex& idx, const Scalar& v) { accumulate(acc, idx, c * v); });
      }
      for (std::size_t k = 0; k < m; ++k) per_leg[positions[k]] = &singletons[positions[k]];
    }
  }
  return from_terms(legs, std::move(acc));
}

TensorElement tensor_multiply(const TensorElement& s, const TensorElement& t) {
  if (!same_legs(s.legs(), t.legs())) throw Error("ShapeMismatch", "tensor legs differ");
  std::vector<std::size_t> all(s.arity());
  std::iota(all.begin(), all.end(), 0);
  return multiply_placed(s, t, all);
}

TensorElement ordered_product(const std::vector<AlgebraPtr>& legs, const std::vector<Placed>& factors) {
  if (factors.empty()) return TensorElement::unit(legs);
  TensorElement acc = embed(factors.front().element, legs, factors.front().positions);
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const auto& pos = factors[f].positions;
    for (std::size_t k = 1; k < pos.size(); ++k)
      if (pos[k] <= pos[k - 1]) throw Error("ShapeMismatch", "embedding positions must be strictly increasing");
    acc = multiply_placed(acc, factors[f].element, pos);
  }
  return acc;
}

TensorElement apply_maps(const TensorElement& t, const std::vector<const AlgebraMap*>& maps) {
  if (maps.size() != t.arity()) throw Error("ShapeMismatch", "one map slot per leg is required");
  std::vector<AlgebraPtr> legs = t.legs();
  for (std::size_t k = 0; k < maps.size(); ++k)
    if (maps[k]) {
      if (!same_algebra(maps[k]->source(), legs[k])) throw Error("ShapeMismatch", "map source differs from leg");
      legs[k] = maps[k]->target();
    }
  TensorElement::Terms acc;
  std::vector<SparseVec> singletons(t.arity());
  std::vector<const SparseVec*> per_leg(t.arity());
  for (const auto& [idx, c] : t.terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (maps[k]) {
        per_leg[k] = &maps[k]->image(idx[k]);
      } else {
        singletons[k] = {{idx[k], Scalar(1)}};
        per_leg[k] = &singletons[k];
      }
    }
    for_each_combination(per_leg, [&](const MultiIndex& i, const Scalar& v) { accumulate(acc, i, c * v); });
  }
  return from_terms(std::move(legs), std::move(acc));
}

TensorElement permute_legs(const TensorElement& t, const std::vector<std::size_t>& perm) {
  const std::size_t n = t.arity();
  if (perm.size() != n) throw Error("ShapeMismatch", "permutation length differs from leg count");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw Error("ShapeMismatch", "not a permutation of the legs");
    seen[p] = true;
  }
  std::vector<AlgebraPtr> legs(n);
  for (std::size_t k = 0; k < n; ++k) legs[k] = t.legs()[perm[k]];
  TensorElement out(std::move(legs));
  MultiIndex j(n);
  for (const auto& [idx, c] : t.terms()) {
    for (std::size_t k = 0; k < n; ++k) j[k] = idx[perm[k]];
    out.add_term(j, c);
  }
  return out;
}

TensorElement outer_product(const TensorElement& s, const TensorElement& t) {
  std::vector<AlgebraPtr> legs = s.legs();
  legs.insert(legs.end(), t.legs().begin(), t.legs().end());
  TensorElement out(legs);
  for (const auto& [a, ca] : s.terms())
    for (const auto& [b, cb] : t.terms()) {
      MultiIndex idx = a;
      idx.insert(idx.end(), b.begin(), b.end());
      out.add_term(idx, ca * cb);
    }
  return out;
}

namespace {

void check_blocks(std::size_t arity, const std::vector<std::size_t>& blocks) {
  std::size_t total = 0;
  for (auto b : blocks) {
    if (b == 0) throw Error("ShapeMismatch", "empty block in grouping");
    total += b;
  }
  if (total != arity) throw Error("ShapeMismatch", "grouping does not partition the legs");
}

// Splits a left-nested tensor algebra into `count` factors.
std::vector<AlgebraPtr> split_algebra(const AlgebraPtr& A, std::size_t count) {
  if (count == 1) return {A};
  if (!A->is_tensor_product()) throw Error("ShapeMismatch", "leg '" + A->name + "' is not a tensor product");
  auto head = split_algebra(A->factors[0], count - 1);
  head.push_back(A->factors[1]);
  return head;
}

}  // namespace

TensorElement flatten(const TensorElement& t, const std::vector<std::size_t>& block_sizes) {
  check_blocks(t.arity(), block_sizes);
  std::vector<AlgebraPtr> legs;
  std::size_t at = 0;
  for (auto b : block_sizes) {
    AlgebraPtr A = t.legs()[at];
    for (std::size_t k = 1; k < b; ++k) A = tensor_algebra(A, t.legs()[at + k]);
    legs.push_back(A);
    at += b;
  }
  TensorElement out(std::move(legs));
  MultiIndex j(block_sizes.size());
  for (const auto& [idx, c] : t.terms()) {
    at = 0;
    for (std::size_t g = 0; g < block_sizes.size(); ++g) {
      std::uint32_t v = 0;
      for (std::size_t k = 0; k < block_sizes[g]; ++k)
        v = v * static_cast<std::uint32_t>(t.legs()[at + k]->dim()) + idx[at + k];
      j[g] = v;
      at += block_sizes[g];
    }
    out.add_term(j, c);
  }
  return out;
}

TensorElement unflatten(const TensorElement& t, const std::vector<std::size_t>& block_sizes) {
  if (block_sizes.size() != t.arity()) throw Error("ShapeMismatch", "one block size per leg is required");
  std::vector<AlgebraPtr> legs;
  std::vector<std::vector<AlgebraPtr>> parts;
  for (std::size_t g = 0; g < t.arity(); ++g) {
    if (block_sizes[g] == 0) throw Error("ShapeMismatch", "empty block in grouping");
    parts.push_back(split_algebra(t.legs()[g], block_sizes[g]));
    legs.insert(legs.end(), parts.back().begin(), parts.back().end());
  }
  TensorElement out(legs);
  MultiIndex j(legs.size());
  for (const auto& [idx, c] : t.terms()) {
    std::size_t at = 0;
    for (std::size_t g = 0; g < parts.size(); ++g) {
      std::uint32_t v = idx[g];
      for (std::size_t k = parts[g].size(); k-- > 0;) {
        auto d = static_cast<std::uint32_t>(parts[g][k]->dim());
        j[at + k] = v % d;
        v /= d;
      }
      at += parts[g].size();
    }
    out.add_term(j, c);
  }
  return out;
}

TensorElement tensor_invert(const TensorElement& t) {
  if (t.arity() == 0) throw Error("ShapeMismatch", "empty tensor");
  const std::vector<std::size_t> all{t.arity()};
  TensorElement flat = flatten(t, all);
  Element inv = invert_element(flat.to_element());
  TensorElement out = unflatten(TensorElement::from_element(inv), all);
  if (!is_two_sided_inverse(t, out)) throw Error("NotInvertible", "inverse failed the two-sided check");
  return out;
}

bool is_two_sided_inverse(const TensorElement& s, const TensorElement& t) {
  if (!same_legs(s.legs(), t.legs())) return false;
  TensorElement one = TensorElement::unit(s.legs());
  return tensor_multiply(s, t) == one && tensor_multiply(t, s) == one;
}

std::optional<TermDifference> first_difference(const TensorElement& lhs, const TensorElement& rhs) {
  auto a = lhs.terms().begin();
  auto b = rhs.terms().begin();
  while (a != lhs.terms().end() || b != rhs.terms().end()) {
    if (b == rhs.terms().end() || (a != lhs.terms().end() && a->first < b->first))
      return TermDifference{a->first, a->second, Scalar()};
    if (a == lhs.terms().end() || b->first < a->first) return TermDifference{b->first, Scalar(), b->second};
    if (!(a->second == b->second)) return TermDifference{a->first, a->second, b->second};
    ++a;
    ++b;
  }
  return std::nullopt;
}

}  // namespace oqa
