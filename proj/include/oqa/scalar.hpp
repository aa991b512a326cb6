#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oqa/laurent.hpp"

namespace oqa {

/// Element of Q(parameters) stored as a quotient of Laurent polynomials.
///
/// Canonical form: a monomial denominator is always absorbed into the
/// numerator (so every Laurent polynomial has denominator 1), any other
/// denominator is shifted to carry no monomial factor and scaled to have
/// leading coefficient 1. When numerator and denominator live in a single
/// common parameter the pair is additionally reduced by their univariate gcd.
/// Equality is decided by cross-multiplication and never relies on the
/// canonical form being unique.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(const Rational& q) : num_(q), den_(1) {}  // NOLINT
  Scalar(long c) : Scalar(Rational(c)) {}           // NOLINT
  Scalar(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  static Scalar fraction(LaurentPoly num, LaurentPoly den);
  static Scalar parameter(std::string_view name);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_ == LaurentPoly(1); }
  bool is_constant() const { return is_laurent() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }
  std::vector<VarId> variables() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(std::int64_t n) const;

  Rational evaluate(const Assignment& values) const;
  Scalar substitute(VarId v, const Scalar& value) const;

  /// Canonical text: `a^2 - 2 + a^-2`, `1/2*nu`; a non-Laurent value prints
  /// as `(num)*(den)^-1`.
  std::string to_string() const;

  /// Exact equality by cross-multiplication.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

/// Parses the scalar grammar: integers, `p/q`, parameter names from
/// `parameters`, `^` with (possibly negative) integer exponents, `+ - * ( )`
/// and unary minus. `/` only accepts nonzero constant divisors. A negative
/// exponent on a parenthesised group denotes its exact reciprocal.
Scalar parse_scalar(std::string_view text, std::span<const std::string> parameters);

inline bool scalar_eq(const Scalar& a, const Scalar& b) { return a == b; }

/// Evaluates at named rationals; throws on a missing parameter or a
/// vanishing denominator.
Rational eval_scalar(const Scalar& s, const std::map<std::string, Rational>& assignment);

Assignment to_assignment(const std::map<std::string, Rational>& named);

}  // namespace oqa
