#include "oqa/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "oqa/error.hpp"

namespace oqa {

namespace {

// ------------------------------------------------- univariate helpers

using Dense = std::vector<Rational>;  // coefficient of v^i at index i

void trim(Dense& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Writes p = v^shift * dense(v); requires every monomial to involve only v.
Dense to_dense(const LaurentPoly& p, VarId v, std::int32_t& shift) {
  shift = INT32_MAX;
  for (const auto& t : p.terms()) shift = std::min(shift, t.mono.exponent(v));
  std::int64_t top = 0;
  for (const auto& t : p.terms()) top = std::max<std::int64_t>(top, t.mono.exponent(v) - shift);
  Dense d(static_cast<std::size_t>(top + 1));
  for (const auto& t : p.terms()) d[static_cast<std::size_t>(t.mono.exponent(v) - shift)] = t.coeff;
  return d;
}

LaurentPoly from_dense(const Dense& d, VarId v, std::int32_t shift) {
  LaurentPoly out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (sgn(d[i]) != 0)
      out = out + LaurentPoly::monomial(Monomial::variable(v, shift + static_cast<std::int32_t>(i)), d[i]);
  return out;
}

// Quotient and remainder of a / b over Q; b nonzero and trimmed.
std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Dense q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Dense gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool only_uses(const LaurentPoly& p, VarId v) {
  for (const auto& t : p.terms())
    for (auto [id, e] : t.mono.factors())
      if (id != v) return false;
  return true;
}

// Monomial whose exponent for each variable is the minimum over p's terms
// (absent variables count as exponent 0).
Monomial lowest_monomial(const LaurentPoly& p) {
  auto vars = p.variables();
  Monomial low;
  for (VarId v : vars) {
    std::int32_t m = 0;
    for (const auto& t : p.terms()) m = std::min(m, t.mono.exponent(v));
    low = low * Monomial::variable(v, m);
  }
  return low;
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar Scalar::fraction(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw Error("DivisionByZero", "division by zero");
  Scalar s;
  if (num.is_zero()) return s;
  if (den.is_monomial()) {
    const auto& t = den.terms()[0];
    s.num_ = num.shifted(t.mono.inverse()).scaled(1 / t.coeff);
    return s;
  }
  Monomial low = lowest_monomial(den).inverse();
  den = den.shifted(low);
  num = num.shifted(low);

  auto dvars = den.variables();
  if (dvars.size() == 1 && only_uses(num, dvars[0])) {
    VarId v = dvars[0];
    std::int32_t ns = 0, ds = 0;
    Dense n = to_dense(num, v, ns);
    Dense d = to_dense(den, v, ds);
    Dense g = gcd(n, d);
    if (g.size() > 1) {
      n = divmod(n, g).first;
      d = divmod(d, g).first;
      num = from_dense(n, v, ns);
      den = from_dense(d, v, ds);
      if (den.is_monomial()) return fraction(std::move(num), std::move(den));
    }
  }
  Rational lead = den.display_order().front()->coeff;
  s.num_ = num.scaled(1 / lead);
  s.den_ = den.scaled(1 / lead);
  return s;
}

Scalar Scalar::parameter(std::string_view name) {
  return Scalar(LaurentPoly::variable(intern_variable(name)));
}

std::vector<VarId> Scalar::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = -s.num_;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (is_laurent() && o.is_laurent()) return Scalar(num_ + o.num_);
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (is_laurent() && o.is_laurent()) return Scalar(num_ * o.num_);
  return fraction(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "division by zero");
  return fraction(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw Error("DivisionByZero", "division by zero");
  if (is_zero()) return {};
  return fraction(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar result(1);
  Scalar base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Rational Scalar::evaluate(const Assignment& values) const {
  Rational d = den_.evaluate(values);
  if (sgn(d) == 0) throw Error("VanishingDenominator", "denominator vanishes at the assignment");
  return num_.evaluate(values) / d;
}

Scalar Scalar::substitute(VarId v, const Scalar& value) const {
  auto sub = [&](const LaurentPoly& p) {
    Scalar out;
    for (const auto& t : p.terms()) {
      Scalar term(t.coeff);
      for (auto [id, e] : t.mono.factors())
        term *= id == v ? value.pow(e) : Scalar(LaurentPoly::monomial(Monomial::variable(id, e)));
      out += term;
    }
    return out;
  };
  auto vars = variables();
  if (std::find(vars.begin(), vars.end(), v) == vars.end()) return *this;
  return sub(num_) / sub(den_);
}

std::string Scalar::to_string() const {
  if (is_laurent()) return num_.to_string();
  auto wrap = [](const LaurentPoly& p) {
    std::string s = p.to_string();
    return p.is_monomial() && sgn(p.terms()[0].coeff) > 0 ? s : "(" + s + ")";
  };
  return wrap(num_) + "*(" + den_.to_string() + ")^-1";
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> params) : text_(text), params_(params) {}

  Scalar parse() {
    Scalar s = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Scalar term() {
    Scalar acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Scalar d = unary();
        if (!d.is_constant()) throw ParseError("division by a non-constant subexpression", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = primary();
    if (!eat('^')) return base;
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 9) throw ParseError("exponent too large", start);
    std::int64_t e = std::stoll(std::string(text_.substr(start, pos_ - start)));
    if (negative) e = -e;
    if (e < 0 && base.is_zero()) throw ParseError("division by zero", start);
    if (!base.num().is_monomial() && (e > 4096 || e < -4096))
      throw ParseError("exponent too large for a non-monomial base", start);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') fail("chained exponents are not allowed");
    return base.pow(e);
  }

  Scalar primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar s = expr();
      if (!eat(')')) fail("expected ')'");
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Scalar(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (std::find(params_.begin(), params_.end(), name) == params_.end())
        throw ParseError("unknown parameter '" + name + "'", start);
      return Scalar::parameter(name);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> params_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, std::span<const std::string> parameters) {
  return Parser(text, parameters).parse();
}

Assignment to_assignment(const std::map<std::string, Rational>& named) {
  Assignment out;
  for (const auto& [name, value] : named) out.emplace(intern_variable(name), value);
  return out;
}

Rational eval_scalar(const Scalar& s, const std::map<std::string, Rational>& assignment) {
  return s.evaluate(to_assignment(assignment));
}

}  // namespace oqa
