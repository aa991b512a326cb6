#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oqa {

using Rational = mpq_class;
using VarId = std::uint32_t;

/// Parameters are interned process-wide; ids are stable for the lifetime of
/// the process and names are never removed.
VarId intern_variable(std::string_view name);
const std::string& variable_name(VarId id);

std::string rational_to_string(const Rational& q);

/// Values for parameters, keyed by interned id.
using Assignment = std::map<VarId, Rational>;

/// Product of parameters raised to nonzero integer powers. Factors are kept
/// sorted by variable id; exponent arithmetic is overflow-checked.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::int32_t>;

  Monomial() = default;
  static Monomial variable(VarId v, std::int32_t exponent = 1);

  bool is_one() const { return factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }
  std::int32_t exponent(VarId v) const;
  std::int64_t total_degree() const;

  Monomial operator*(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(std::int64_t n) const;

  /// Printed form with factors ordered by variable name, e.g. `a^2*nu^-1`.
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  explicit Monomial(std::vector<Factor> f) : factors_(std::move(f)) {}
  std::vector<Factor> factors_;
};

/// Sparse multivariate Laurent polynomial with rational coefficients.
class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constants convert implicitly
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT
  static LaurentPoly monomial(const Monomial& m, const Rational& c = 1);
  static LaurentPoly variable(VarId v) { return monomial(Monomial::variable(v)); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // precondition: is_constant()
  std::vector<VarId> variables() const;

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly shifted(const Monomial& m) const;

  Rational evaluate(const Assignment& values) const;

  /// Terms in display order: descending total degree, then descending
  /// exponents taken in variable-name order.
  std::vector<const Term*> display_order() const;
  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  static LaurentPoly from_unsorted(std::vector<Term> terms);
  std::vector<Term> terms_;  // sorted by mono, no zero coefficients
};

}  // namespace oqa
