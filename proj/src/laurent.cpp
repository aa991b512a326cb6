#include "oqa/laurent.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "oqa/error.hpp"

namespace oqa {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
  std::int32_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error("Overflow", "exponent overflow");
  return out;
}

std::int32_t checked_mul(std::int32_t a, std::int64_t b) {
  std::int64_t wide = 0;
  if (__builtin_mul_overflow(static_cast<std::int64_t>(a), b, &wide) || wide > INT32_MAX ||
      wide < INT32_MIN)
    throw Error("Overflow", "exponent overflow");
  return static_cast<std::int32_t>(wide);
}

// Exponent vector in variable-name order, used for display sorting.
std::vector<std::pair<std::string, std::int32_t>> named_exponents(const Monomial& m) {
  std::vector<std::pair<std::string, std::int32_t>> out;
  for (auto [v, e] : m.factors()) out.emplace_back(variable_name(v), e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

VarId intern_variable(std::string_view name) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  std::string key(name);
  if (auto it = t.ids.find(key); it != t.ids.end()) return it->second;
  auto id = static_cast<VarId>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(std::move(key), id);
  return id;
}

const std::string& variable_name(VarId id) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  return t.names.at(id);
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(VarId v, std::int32_t exponent) {
  if (exponent == 0) return {};
  return Monomial({{v, exponent}});
}

std::int32_t Monomial::exponent(VarId v) const {
  for (auto [id, e] : factors_)
    if (id == v) return e;
  return 0;
}

std::int64_t Monomial::total_degree() const {
  std::int64_t d = 0;
  for (auto [v, e] : factors_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      auto e = checked_add(a->second, b->second);
      if (e != 0) out.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return Monomial(std::move(out));
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(std::int64_t n) const {
  if (n == 0) return {};
  std::vector<Factor> out;
  out.reserve(factors_.size());
  for (auto [v, e] : factors_) out.emplace_back(v, checked_mul(e, n));
  return Monomial(std::move(out));
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [name, e] : named_exponents(*this)) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const Rational& c) {
  LaurentPoly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

LaurentPoly LaurentPoly::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.mono < y.mono; });
  LaurentPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational LaurentPoly::constant_value() const {
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

std::vector<VarId> LaurentPoly::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : terms_)
    for (auto [v, e] : t.mono.factors()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  LaurentPoly out;
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->mono < a->mono) {
      out.terms_.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (sgn(c) != 0) out.terms_.push_back({a->mono, c});
      ++a;
      ++b;
    }
  }
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_monomial()) return shifted(o.terms_[0].mono).scaled(o.terms_[0].coeff);
  if (is_monomial()) return o.shifted(terms_[0].mono).scaled(terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& x : terms_)
    for (const auto& y : o.terms_) prod.push_back({x.mono * y.mono, x.coeff * y.coeff});
  return from_unsorted(std::move(prod));
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  LaurentPoly p = *this;
  if (c != 1)
    for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m) const {
  if (m.is_one()) return *this;
  // The sparse factor order is not translation invariant, so re-sort.
  std::vector<Term> moved;
  moved.reserve(terms_.size());
  for (const auto& t : terms_) moved.push_back({t.mono * m, t.coeff});
  return from_unsorted(std::move(moved));
}

Rational LaurentPoly::evaluate(const Assignment& values) const {
  Rational total = 0;
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (auto [v, e] : t.mono.factors()) {
      auto it = values.find(v);
      if (it == values.end())
        throw Error("MissingParameter", "no value assigned to parameter '" + variable_name(v) + "'");
      const Rational& base = it->second;
      if (e < 0 && sgn(base) == 0)
        throw Error("VanishingDenominator",
                    "negative power of '" + variable_name(v) + "' evaluated at 0");
      mpz_class num = 1, den = 1;
      auto n = static_cast<unsigned long>(e < 0 ? -static_cast<std::int64_t>(e) : e);
      mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
      mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
      Rational power = e < 0 ? Rational(den, num) : Rational(num, den);
      power.canonicalize();
      term *= power;
    }
    total += term;
  }
  return total;
}

std::vector<const LaurentPoly::Term*> LaurentPoly::display_order() const {
  std::vector<std::pair<std::pair<std::int64_t, std::vector<std::pair<std::string, std::int32_t>>>,
                        const Term*>>
      keyed;
  keyed.reserve(terms_.size());
  for (const auto& t : terms_) keyed.push_back({{t.mono.total_degree(), named_exponents(t.mono)}, &t});
  // Within equal total degree compare exponents variable by variable in
  // name order; an absent variable has exponent 0.
  auto exponent_key = [](const std::vector<std::pair<std::string, std::int32_t>>& a,
                         const std::vector<std::pair<std::string, std::int32_t>>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      std::int32_t ea = 0, eb = 0;
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        ea = ia->second;
        ++ia;
      } else if (ia == a.end() || ib->first < ia->first) {
        eb = ib->second;
        ++ib;
      } else {
        ea = ia->second;
        eb = ib->second;
        ++ia;
        ++ib;
      }
      if (ea != eb) return ea > eb;
    }
    return false;
  };
  std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
    if (x.first.first != y.first.first) return x.first.first > y.first.first;
    return exponent_key(x.first.second, y.first.second);
  });
  std::vector<const Term*> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const Term* t : display_order()) {
    bool negative = sgn(t->coeff) < 0;
    Rational mag = abs(t->coeff);
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t->mono.is_one()) {
      s += rational_to_string(mag);
    } else {
      if (mag != 1) s += rational_to_string(mag) + '*';
      s += t->mono.to_string();
    }
  }
  return s;
}

}  // namespace oqa
