#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oqa/linsolve.hpp"
#include "oqa/scalar.hpp"

namespace oqa {

struct Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional unital associative algebra given by structure
/// constants. Instances are immutable and created through make_algebra or
/// one of the constructors below, all of which guarantee the associativity
/// and unit laws on basis triples.
struct Algebra {
  std::string name;
  std::vector<std::string> basis;
  std::vector<SparseVec> mul;  // mul[i * dim + j] = e_i * e_j
  SparseVec unit;
  std::vector<AlgebraPtr> factors;  // (A, B) when this is A ⊗ B
  int matrix_order = 0;             // n when this is M_n with basis E_ij

  std::size_t dim() const { return basis.size(); }
  const SparseVec& product(std::uint32_t i, std::uint32_t j) const { return mul[i * dim() + j]; }
  std::optional<std::uint32_t> find(const std::string& label) const;
  std::uint32_t index_of(const std::string& label) const;  // throws UnknownLabel
  bool is_tensor_product() const { return factors.size() == 2; }
};

/// Structural equality (name, basis, structure constants and unit).
bool same_algebra(const Algebra& a, const Algebra& b);
inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || same_algebra(*a, *b);
}

SparseVec multiply(const Algebra& A, const SparseVec& x, const SparseVec& y);

/// Validates associativity and the unit laws on all basis triples.
/// Throws Error("NonAssociative") naming the triple and both products, or
/// Error("BadUnit") naming the failing basis element.
AlgebraPtr make_algebra(std::string name, std::vector<std::string> basis, std::vector<SparseVec> mul,
                        SparseVec unit);

/// The one-dimensional algebra K.
AlgebraPtr ground_field();
/// M_n(K), basis E_ij in row-major order, E_ij E_lm = δ_jl E_im.
AlgebraPtr matrix_algebra(int n);
AlgebraPtr opposite(const AlgebraPtr& A);
/// A ⊗ B with basis pairs in lexicographic order (A index major).
/// Results are memoised so repeated calls share one instance.
AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B);

class Element {
 public:
  explicit Element(AlgebraPtr A, SparseVec coeffs = {});
  static Element basis(AlgebraPtr A, std::uint32_t i);
  static Element one(AlgebraPtr A);

  const AlgebraPtr& algebra() const { return algebra_; }
  const SparseVec& coeffs() const { return coeffs_; }
  Scalar coeff(std::uint32_t i) const { return sparse_get(coeffs_, i); }
  bool is_zero() const { return coeffs_.empty(); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element scaled(const Scalar& c) const;
  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  SparseVec coeffs_;
};

/// Linear map between algebras given by basis images. When certified as an
/// automorphism, multiplicativity, unitality and invertibility have been
/// verified and the inverse is stored.
class AlgebraMap {
 public:
  AlgebraMap(AlgebraPtr source, AlgebraPtr target, std::vector<SparseVec> images);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const std::vector<SparseVec>& images() const { return images_; }
  const SparseVec& image(std::uint32_t i) const { return images_[i]; }
  bool is_automorphism() const { return inverse_images_ != nullptr; }

  SparseVec apply(const SparseVec& v) const;
  Element apply(const Element& e) const;

  /// Inverse of a certified automorphism (itself certified).
  AlgebraMap inverse() const;

  friend bool operator==(const AlgebraMap& a, const AlgebraMap& b);

 private:
  friend AlgebraMap make_map(AlgebraPtr, AlgebraPtr, std::vector<SparseVec>, bool);
  friend AlgebraMap tensor_map(const AlgebraMap&, const AlgebraMap&);
  friend AlgebraMap identity_map(const AlgebraPtr&);
  friend AlgebraMap compose(const AlgebraMap&, const AlgebraMap&);

  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<SparseVec> images_;
  std::shared_ptr<const std::vector<SparseVec>> inverse_images_;
};

/// Builds a map; with require_automorphism the map is certified or
/// Error("NotMultiplicative" | "NotUnital" | "Singular" | "ShapeMismatch")
/// is thrown.
AlgebraMap make_map(AlgebraPtr source, AlgebraPtr target, std::vector<SparseVec> images,
                    bool require_automorphism);
AlgebraMap identity_map(const AlgebraPtr& A);
/// f ∘ g. Certified when both are.
AlgebraMap compose(const AlgebraMap& f, const AlgebraMap& g);
/// f ⊗ g on tensor_algebra(f.source, g.source). Certified when both are.
AlgebraMap tensor_map(const AlgebraMap& f, const AlgebraMap& g);
/// Inverse of an arbitrary linear endomorphism, if it exists.
std::optional<AlgebraMap> invert_linear(const AlgebraMap& f);
/// Tries to certify f as an automorphism, returning the certified copy.
AlgebraMap certify_automorphism(const AlgebraMap& f);

bool maps_commute(const AlgebraMap& f, const AlgebraMap& g);

/// Two-sided inverse by exact solve of the left-multiplication matrix.
/// Throws Error("NotInvertible").
Element invert_element(const Element& u);

}  // namespace oqa
