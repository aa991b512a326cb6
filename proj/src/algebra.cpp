#include "oqa/algebra.hpp"

#include <map>
#include <mutex>

#include "oqa/error.hpp"

namespace oqa {

namespace {

std::string vec_to_string(const Algebra& A, const SparseVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")*" + A.basis[i];
  }
  return s;
}

}  // namespace

std::optional<std::uint32_t> Algebra::find(const std::string& label) const {
  for (std::uint32_t i = 0; i < basis.size(); ++i)
    if (basis[i] == label) return i;
  return std::nullopt;
}

std::uint32_t Algebra::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw Error("UnknownLabel", "algebra '" + name + "' has no basis element '" + label + "'");
}

bool same_algebra(const Algebra& a, const Algebra& b) {
  return &a == &b || (a.name == b.name && a.basis == b.basis && a.unit == b.unit && a.mul == b.mul);
}

SparseVec multiply(const Algebra& A, const SparseVec& x, const SparseVec& y) {
  SparseVec acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const SparseVec& p = A.product(i, j);
      if (!p.empty()) acc = sparse_add(acc, sparse_scale(p, a * b));
    }
  return acc;
}

AlgebraPtr make_algebra(std::string name, std::vector<std::string> basis, std::vector<SparseVec> mul,
                        SparseVec unit) {
  const auto n = static_cast<std::uint32_t>(basis.size());
  if (n == 0) throw Error("ShapeMismatch", "algebra '" + name + "' has an empty basis");
  if (mul.size() != static_cast<std::size_t>(n) * n)
    throw Error("ShapeMismatch", "structure constants of '" + name + "' are not dim x dim");
  for (const auto& v : mul)
    for (const auto& [k, c] : v)
      if (k >= n) throw Error("ShapeMismatch", "structure constant index out of range");
  auto A = std::make_shared<Algebra>();
  A->name = std::move(name);
  A->basis = std::move(basis);
  A->mul = std::move(mul);
  A->unit = std::move(unit);

  for (std::uint32_t i = 0; i < n; ++i) {
    SparseVec e{{i, Scalar(1)}};
    if (multiply(*A, A->unit, e) != e || multiply(*A, e, A->unit) != e)
      throw Error("BadUnit", "unit law fails on basis element '" + A->basis[i] + "' of '" + A->name + "'");
  }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const SparseVec& ij = A->product(i, j);
      for (std::uint32_t k = 0; k < n; ++k) {
        SparseVec ek{{k, Scalar(1)}};
        SparseVec left = multiply(*A, ij, ek);
        SparseVec right = multiply(*A, {{i, Scalar(1)}}, A->product(j, k));
        if (left != right)
          throw Error("NonAssociative", "(" + A->basis[i] + "*" + A->basis[j] + ")*" + A->basis[k] + " = " +
                                            vec_to_string(*A, left) + " but " + A->basis[i] + "*(" +
                                            A->basis[j] + "*" + A->basis[k] + ") = " + vec_to_string(*A, right));
      }
    }
  return A;
}

AlgebraPtr ground_field() {
  static const AlgebraPtr K = make_algebra("K", {"1"}, {{{0, Scalar(1)}}}, {{0, Scalar(1)}});
  return K;
}

AlgebraPtr matrix_algebra(int n) {
  if (n < 1) throw Error("ShapeMismatch", "matrix algebra order must be positive");
  static std::mutex mutex;
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto un = static_cast<std::uint32_t>(n);
  auto A = std::make_shared<Algebra>();
  A->name = "M" + std::to_string(n);
  A->matrix_order = n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      A->basis.push_back(n <= 9 ? "E" + std::to_string(i) + std::to_string(j)
                                : "E" + std::to_string(i) + "_" + std::to_string(j));
  A->mul.assign(static_cast<std::size_t>(un) * un * un * un, {});
  // E_ij E_lm = δ_jl E_im, indices zero-based row-major.
  for (std::uint32_t i = 0; i < un; ++i)
    for (std::uint32_t j = 0; j < un; ++j)
      for (std::uint32_t m = 0; m < un; ++m)
        A->mul[(i * un + j) * un * un + (j * un + m)] = {{i * un + m, Scalar(1)}};
  for (std::uint32_t i = 0; i < un; ++i) A->unit.emplace_back(i * un + i, Scalar(1));
  cache.emplace(n, A);
  return A;
}

AlgebraPtr opposite(const AlgebraPtr& A) {
  auto n = static_cast<std::uint32_t>(A->dim());
  std::vector<SparseVec> mul(A->mul.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) mul[i * n + j] = A->product(j, i);
  return make_algebra(A->name + "^op", A->basis, std::move(mul), A->unit);
}

AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B) {
  static std::mutex mutex;
  static std::map<std::pair<const Algebra*, const Algebra*>, AlgebraPtr> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({A.get(), B.get()}); it != cache.end()) return it->second;
  }
  const auto da = static_cast<std::uint32_t>(A->dim());
  const auto db = static_cast<std::uint32_t>(B->dim());
  const std::uint32_t n = da * db;
  auto T = std::make_shared<Algebra>();
  T->name = A->name + "⊗" + B->name;
  T->factors = {A, B};
  for (std::uint32_t a = 0; a < da; ++a)
    for (std::uint32_t b = 0; b < db; ++b) T->basis.push_back(A->basis[a] + "⊗" + B->basis[b]);
  T->mul.assign(static_cast<std::size_t>(n) * n, {});
  for (std::uint32_t a1 = 0; a1 < da; ++a1)
    for (std::uint32_t b1 = 0; b1 < db; ++b1)
      for (std::uint32_t a2 = 0; a2 < da; ++a2) {
        const SparseVec& pa = A->product(a1, a2);
        if (pa.empty()) continue;
        for (std::uint32_t b2 = 0; b2 < db; ++b2) {
          const SparseVec& pb = B->product(b1, b2);
          if (pb.empty()) continue;
          SparseVec out;
          for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : pb) out.emplace_back(ka * db + kb, ca * cb);
          T->mul[(a1 * db + b1) * n + (a2 * db + b2)] = std::move(out);
        }
      }
  for (const auto& [ka, ca] : A->unit)
    for (const auto& [kb, cb] : B->unit) T->unit.emplace_back(ka * db + kb, ca * cb);
  // Associativity and unit laws are inherited from the factors.
  std::lock_guard lock(mutex);
  // T holds A and B in its factors, so the raw-pointer key stays valid.
  auto it = cache.emplace(std::pair{A.get(), B.get()}, T).first;
  return it->second;
}

// ------------------------------------------------------------- Element

Element::Element(AlgebraPtr A, SparseVec coeffs) : algebra_(std::move(A)), coeffs_(std::move(coeffs)) {
  for (const auto& [i, c] : coeffs_)
    if (i >= algebra_->dim()) throw Error("ShapeMismatch", "element index out of range");
}

Element Element::basis(AlgebraPtr A, std::uint32_t i) { return Element(std::move(A), {{i, Scalar(1)}}); }

Element Element::one(AlgebraPtr A) {
  SparseVec u = A->unit;
  return Element(std::move(A), std::move(u));
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (!same_algebra(a.algebra(), b.algebra()))
    throw Error("ShapeMismatch", "elements of different algebras");
}
}  // namespace

Element Element::operator+(const Element& o) const {
  require_same(*this, o);
  return Element(algebra_, sparse_add(coeffs_, o.coeffs_));
}

Element Element::operator-(const Element& o) const {
  require_same(*this, o);
  return Element(algebra_, sparse_add(coeffs_, sparse_scale(o.coeffs_, Scalar(-1))));
}

Element Element::operator*(const Element& o) const {
  require_same(*this, o);
  return Element(algebra_, multiply(*algebra_, coeffs_, o.coeffs_));
}

Element Element::scaled(const Scalar& c) const { return Element(algebra_, sparse_scale(coeffs_, c)); }

bool operator==(const Element& a, const Element& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.coeffs_ == b.coeffs_;
}

std::string Element::to_string() const { return vec_to_string(*algebra_, coeffs_); }

// ----------------------------------------------------------- AlgebraMap

AlgebraMap::AlgebraMap(AlgebraPtr source, AlgebraPtr target, std::vector<SparseVec> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->dim())
    throw Error("ShapeMismatch", "map needs one image per basis element of '" + source_->name + "'");
  for (const auto& v : images_)
    for (const auto& [i, c] : v)
      if (i >= target_->dim()) throw Error("ShapeMismatch", "map image index out of range");
}

SparseVec AlgebraMap::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) out = sparse_add(out, sparse_scale(images_[i], c));
  return out;
}

Element AlgebraMap::apply(const Element& e) const {
  if (!same_algebra(e.algebra(), source_)) throw Error("ShapeMismatch", "map applied outside its source");
  return Element(target_, apply(e.coeffs()));
}

AlgebraMap AlgebraMap::inverse() const {
  if (!inverse_images_) throw Error("NotCertified", "map is not a certified automorphism");
  AlgebraMap g(target_, source_, *inverse_images_);
  g.inverse_images_ = std::make_shared<const std::vector<SparseVec>>(images_);
  return g;
}

bool operator==(const AlgebraMap& a, const AlgebraMap& b) {
  return same_algebra(a.source_, b.source_) && same_algebra(a.target_, b.target_) && a.images_ == b.images_;
}

std::optional<AlgebraMap> invert_linear(const AlgebraMap& f) {
  const auto n = f.source()->dim();
  if (f.target()->dim() != n) return std::nullopt;
  std::vector<SparseVec> identity(n);
  for (std::uint32_t i = 0; i < n; ++i) identity[i] = {{i, Scalar(1)}};
  auto sol = solve_linear(n, f.images(), identity);
  if (!sol) return std::nullopt;
  return AlgebraMap(f.target(), f.source(), std::move(*sol));
}

AlgebraMap make_map(AlgebraPtr source, AlgebraPtr target, std::vector<SparseVec> images,
                    bool require_automorphism) {
  AlgebraMap f(std::move(source), std::move(target), std::move(images));
  if (!require_automorphism) return f;
  if (!same_algebra(f.source_, f.target_))
    throw Error("ShapeMismatch", "an automorphism needs source = target");
  const Algebra& A = *f.source_;
  const auto n = static_cast<std::uint32_t>(A.dim());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (f.apply(A.product(i, j)) != multiply(A, f.images_[i], f.images_[j]))
        throw Error("NotMultiplicative", "F(" + A.basis[i] + "*" + A.basis[j] + ") != F(" + A.basis[i] + ")*F(" +
                                             A.basis[j] + ")");
  if (f.apply(A.unit) != A.unit) throw Error("NotUnital", "F(1) != 1");
  auto inv = invert_linear(f);
  if (!inv) throw Error("Singular", "map matrix is singular");
  f.inverse_images_ = std::make_shared<const std::vector<SparseVec>>(inv->images());
  return f;
}

AlgebraMap certify_automorphism(const AlgebraMap& f) {
  if (f.is_automorphism()) return f;
  return make_map(f.source(), f.target(), f.images(), true);
}

AlgebraMap identity_map(const AlgebraPtr& A) {
  std::vector<SparseVec> images(A->dim());
  for (std::uint32_t i = 0; i < A->dim(); ++i) images[i] = {{i, Scalar(1)}};
  AlgebraMap f(A, A, images);
  f.inverse_images_ = std::make_shared<const std::vector<SparseVec>>(std::move(images));
  return f;
}

AlgebraMap compose(const AlgebraMap& f, const AlgebraMap& g) {
  if (!same_algebra(g.target(), f.source())) throw Error("ShapeMismatch", "maps do not compose");
  std::vector<SparseVec> images;
  images.reserve(g.source()->dim());
  for (const auto& v : g.images()) images.push_back(f.apply(v));
  AlgebraMap h(g.source(), f.target(), std::move(images));
  if (f.is_automorphism() && g.is_automorphism()) {
    // (f g)^-1 = g^-1 f^-1
    AlgebraMap gi = g.inverse();
    std::vector<SparseVec> inv;
    for (const auto& v : *f.inverse_images_) inv.push_back(gi.apply(v));
    h.inverse_images_ = std::make_shared<const std::vector<SparseVec>>(std::move(inv));
  }
  return h;
}

AlgebraMap tensor_map(const AlgebraMap& f, const AlgebraMap& g) {
  auto S = tensor_algebra(f.source(), g.source());
  auto T = tensor_algebra(f.target(), g.target());
  auto build = [&](const AlgebraMap& x, const AlgebraMap& y, const AlgebraPtr& src, const AlgebraPtr& dst) {
    std::vector<SparseVec> images;
    images.reserve(src->dim());
    const auto dy = static_cast<std::uint32_t>(y.target()->dim());
    for (std::uint32_t a = 0; a < x.source()->dim(); ++a)
      for (std::uint32_t b = 0; b < y.source()->dim(); ++b) {
        SparseVec out;
        for (const auto& [ka, ca] : x.image(a))
          for (const auto& [kb, cb] : y.image(b)) out.emplace_back(ka * dy + kb, ca * cb);
        images.push_back(std::move(out));
      }
    return AlgebraMap(src, dst, std::move(images));
  };
  AlgebraMap h = build(f, g, S, T);
  if (f.is_automorphism() && g.is_automorphism()) {
    // The tensor product of automorphisms is one, inverted factorwise.
    h.inverse_images_ =
        std::make_shared<const std::vector<SparseVec>>(build(f.inverse(), g.inverse(), T, S).images());
  }
  return h;
}

bool maps_commute(const AlgebraMap& f, const AlgebraMap& g) {
  if (!same_algebra(f.source(), f.target()) || !same_algebra(g.source(), g.target()) ||
      !same_algebra(f.source(), g.source()))
    throw Error("ShapeMismatch", "maps_commute needs endomorphisms of one algebra");
  for (std::uint32_t i = 0; i < f.source()->dim(); ++i)
    if (f.apply(g.image(i)) != g.apply(f.image(i))) return false;
  return true;
}

Element invert_element(const Element& u) {
  const Algebra& A = *u.algebra();
  const auto n = static_cast<std::uint32_t>(A.dim());
  // Column j of L_u is u * e_j.
  std::vector<SparseVec> columns(n);
  for (std::uint32_t j = 0; j < n; ++j) columns[j] = multiply(A, u.coeffs(), {{j, Scalar(1)}});
  auto sol = solve_linear(n, columns, {A.unit});
  if (!sol) throw Error("NotInvertible", "left multiplication matrix is singular");
  Element v(u.algebra(), std::move((*sol)[0]));
  Element one = Element::one(u.algebra());
  if (!(u * v == one) || !(v * u == one)) throw Error("NotInvertible", "inverse is only one-sided");
  return v;
}

}  // namespace oqa
