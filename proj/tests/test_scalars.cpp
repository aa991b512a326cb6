#include <gtest/gtest.h>

#include <random>

#include "oqa/error.hpp"
#include "oqa/scalar.hpp"
#include "oracles.hpp"

using oqa::Rational;
using oqa::Scalar;
using oracle::S;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  static const char* atoms[] = {"a", "a^-1", "nu", "a - a^-1", "1/2*nu", "a^2 - 2 + a^-2", "3", "-2/3", "a*nu^-1"};
  std::uniform_int_distribution<int> pick(0, 8);
  std::uniform_int_distribution<int> ops(0, 2);
  Scalar s = S(atoms[pick(rng)]);
  for (int k = 0; k < 2; ++k) {
    Scalar t = S(atoms[pick(rng)]);
    switch (ops(rng)) {
      case 0: s += t; break;
      case 1: s -= t; break;
      default: s *= t; break;
    }
  }
  return s;
}

}  // namespace

TEST(ScalarParse, PrintsCanonicalForms) {
  EXPECT_EQ(S("a^2 - 2 + a^-2").to_string(), "a^2 - 2 + a^-2");
  EXPECT_EQ(S("nu/2").to_string(), "1/2*nu");
  EXPECT_EQ(S("(a - a^-1)*(a - a^-1)").to_string(), "a^2 - 2 + a^-2");
  EXPECT_EQ(S("0").to_string(), "0");
  EXPECT_EQ(S("-(a)").to_string(), "-a");
}

TEST(ScalarParse, RoundTripsThroughText) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Scalar s = random_scalar(rng);
    EXPECT_EQ(S(s.to_string()), s) << s.to_string();
  }
}

TEST(ScalarParse, NonLaurentQuotientRoundTrips) {
  Scalar q = S("a") / S("a + 1");
  EXPECT_FALSE(q.is_laurent());
  EXPECT_EQ(S(q.to_string()), q);
  EXPECT_EQ(q * S("a + 1"), S("a"));
}

TEST(ScalarParse, RejectsMalformedInput) {
  EXPECT_THROW(S("a +"), oqa::ParseError);
  EXPECT_THROW(S("b"), oqa::ParseError);
  EXPECT_THROW(S("1/0"), oqa::ParseError);
  EXPECT_THROW(S("1/a"), oqa::ParseError);
  EXPECT_THROW(S("0^-1"), oqa::ParseError);
  EXPECT_THROW(S("(a"), oqa::ParseError);
  EXPECT_THROW(S("2a"), oqa::ParseError);
}

TEST(ScalarArithmetic, FieldLawsHoldOnRandomValues) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x - x, Scalar(0));
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
      EXPECT_EQ(y * y.inverse(), Scalar(1));
    }
  }
}

TEST(ScalarArithmetic, EqualityIsByCrossMultiplication) {
  Scalar lhs = (S("a") * S("a") - Scalar(1)) / (S("a") - Scalar(1));
  EXPECT_EQ(lhs, S("a + 1"));
  EXPECT_EQ(S("a - a^-1").pow(-1) * S("a - a^-1"), Scalar(1));
  EXPECT_NE(S("a"), S("nu"));
}

TEST(ScalarArithmetic, InverseOfZeroThrows) {
  try {
    Scalar(0).inverse();
    FAIL() << "expected an exception";
  } catch (const oqa::Error& e) {
    EXPECT_EQ(e.kind(), "DivisionByZero");
  }
}

TEST(ScalarEvaluate, MatchesPlainRationalArithmetic) {
  std::map<std::string, Rational> at{{"a", Rational(3, 2)}, {"nu", Rational(-5, 7)}};
  EXPECT_EQ(oqa::eval_scalar(S("a - a^-1"), at), Rational(3, 2) - Rational(2, 3));
  EXPECT_EQ(oqa::eval_scalar(S("1/2*nu*a^2"), at), Rational(-5, 14) * Rational(9, 4));
  EXPECT_EQ(oqa::eval_scalar(S("a") / S("a + 1"), at), Rational(3, 5));
}

TEST(ScalarEvaluate, CommutesWithOperations) {
  std::mt19937 rng(5);
  std::map<std::string, Rational> at{{"a", Rational(5, 3)}, {"nu", Rational(2)}};
  for (int i = 0; i < 100; ++i) {
    Scalar x = random_scalar(rng), y = random_scalar(rng);
    Rational ex = oqa::eval_scalar(x, at), ey = oqa::eval_scalar(y, at);
    EXPECT_EQ(oqa::eval_scalar(x + y, at), ex + ey);
    EXPECT_EQ(oqa::eval_scalar(x * y, at), ex * ey);
    if (ey != 0 && !y.is_zero()) EXPECT_EQ(oqa::eval_scalar(x / y, at), ex / ey);
  }
}

TEST(ScalarEvaluate, ErrorsOnMissingParameterOrPole) {
  std::map<std::string, Rational> only_a{{"a", Rational(1)}};
  EXPECT_THROW(oqa::eval_scalar(S("nu"), only_a), oqa::Error);
  EXPECT_THROW(oqa::eval_scalar(Scalar(1) / S("a - 1"), only_a), oqa::Error);
  EXPECT_THROW(oqa::eval_scalar(S("a^-1"), {{"a", Rational(0)}}), oqa::Error);
}

TEST(ScalarSubstitute, ReplacesParameterByExpression) {
  oqa::VarId x = oqa::intern_variable("x");
  std::vector<std::string> ps{"a", "x"};
  Scalar cell = oqa::parse_scalar("-x^2*a", ps);
  Scalar got = cell.substitute(x, S("a - a^-1"));
  EXPECT_EQ(got, S("-a^3 + 2*a - a^-1"));
}
