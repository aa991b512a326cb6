#include <gtest/gtest.h>

#include "oqa/catalog.hpp"
#include "oqa/error.hpp"
#include "oracles.hpp"

using namespace oqa;
using oracle::lit;
using oracle::S;

namespace {

const std::vector<std::string> kAxioms{"r-invertible",       "D-automorphism",     "U-automorphism",
                                       "D-U-commute",        "inverse-pair-left",  "inverse-pair-right",
                                       "D-invariance",       "U-invariance",       "yang-baxter"};

std::vector<std::string> axiom_names(const CheckReport& r) {
  std::vector<std::string> out;
  for (const auto& a : r.results()) out.push_back(a.axiom);
  return out;
}

// p_{2} written out term by term.
TensorElement literal_p2() {
  AlgebraPtr M = matrix_algebra(2);
  return lit({M, M}, {{{"E12", "E21"}, "a - a^-1"},
                      {{"E11", "E11"}, "a"},
                      {{"E22", "E22"}, "a"},
                      {{"E11", "E22"}, "1"},
                      {{"E22", "E11"}, "1"}});
}

TensorElement sign_flipped_p2() {
  AlgebraPtr M = matrix_algebra(2);
  return lit({M, M}, {{{"E12", "E21"}, "a^-1 - a"},
                      {{"E11", "E11"}, "a"},
                      {{"E22", "E22"}, "a"},
                      {{"E11", "E22"}, "1"},
                      {{"E22", "E11"}, "1"}});
}

// D(R_l) r_i ⊗ U(r^i) R^l by explicit loops over the terms.
TensorElement inverse_pair_left_oracle(const TensorElement& r, const TensorElement& R, const AlgebraMap& D,
                                       const AlgebraMap& U) {
  const AlgebraPtr& H = r.legs()[0];
  TensorElement out({H, H});
  for (const auto& [ri, cr] : r.terms())
    for (const auto& [Rl, cR] : R.terms()) {
      Element left = D.apply(Element::basis(H, Rl[0])) * Element::basis(H, ri[0]);
      Element right = U.apply(Element::basis(H, ri[1])) * Element::basis(H, Rl[1]);
      for (const auto& [i, a] : left.coeffs())
        for (const auto& [j, b] : right.coeffs()) out.add_term(MultiIndex{i, j}, cr * cR * a * b);
    }
  return out;
}

}  // namespace

TEST(MatrixOqa, CatalogRMatrixMatchesDisplayedFormula) {
  EXPECT_EQ(mn_rmatrix(2, S("a")), literal_p2());
  TensorElement p3 = mn_rmatrix(3, S("a"));
  EXPECT_EQ(p3.size(), 3u + 3u + 6u);
  AlgebraPtr M = matrix_algebra(3);
  EXPECT_EQ(p3.coeff({M->index_of("E13"), M->index_of("E31")}), S("a - a^-1"));
  EXPECT_EQ(p3.coeff({M->index_of("E33"), M->index_of("E33")}), S("a"));
  EXPECT_EQ(p3.coeff({M->index_of("E33"), M->index_of("E11")}), Scalar(1));
  EXPECT_TRUE(p3.coeff({M->index_of("E31"), M->index_of("E13")}).is_zero());
}

TEST(MatrixOqa, PassesEveryAxiomForN2AndN3) {
  for (int n : {2, 3}) {
    CheckReport rep = check_oqa(mn_oqa(n, S("a")));
    EXPECT_TRUE(rep.passed()) << rep.to_text();
    EXPECT_EQ(axiom_names(rep), kAxioms);
  }
}

TEST(MatrixOqa, InversePairMatchesLoopOracle) {
  OqaCandidate c = mn_oqa(3, S("a"));
  TensorElement R = tensor_invert(c.r);
  InversePair ip = inverse_pair(c.r, R, c.D, c.U);
  EXPECT_EQ(ip.left, inverse_pair_left_oracle(c.r, R, c.D, c.U));
  EXPECT_EQ(ip.left, TensorElement::unit(c.r.legs()));
  EXPECT_EQ(ip.right, TensorElement::unit(c.r.legs()));
}

TEST(MatrixOqa, SignFlippedRMatrixFailsYangBaxterAtTwo) {
  AlgebraPtr M = matrix_algebra(2);
  AlgebraMap f = mn_automorphism(2, Scalar(2));
  EvalContext at2({{intern_variable("a"), Rational(2)}});
  OqaCandidate bad = make_oqa("flipped", M, at2.tensor(sign_flipped_p2()), f, f);
  CheckReport rep = check_oqa(bad);
  EXPECT_FALSE(rep.passed());
  const AxiomResult* ybe = rep.find("yang-baxter");
  ASSERT_NE(ybe, nullptr);
  EXPECT_FALSE(ybe->pass);
  ASSERT_TRUE(ybe->witness.has_value());
  EXPECT_EQ(ybe->witness->labels.size(), 3u);
  EXPECT_NE(ybe->witness->lhs, ybe->witness->rhs);
  EXPECT_FALSE(check_ybe(bad));
  EXPECT_FALSE(check_ybe_alt(bad));
}

TEST(MatrixOqa, YangBaxterFormsAgree) {
  for (const OqaCandidate& c : {mn_oqa(2, S("a")), mn_oqa(3, S("a")), ex45_H_oqa(S("nu")), ex45_Hprime_oqa(),
                                trivial_oqa(matrix_algebra(2))}) {
    EXPECT_TRUE(check_ybe(c)) << c.name;
    EXPECT_EQ(check_ybe(c), check_ybe_alt(c)) << c.name;
  }
  OqaCandidate flipped = mn_oqa(2, S("a"));
  flipped.r = sign_flipped_p2();
  flipped.certified = false;
  EXPECT_EQ(check_ybe(flipped), check_ybe_alt(flipped));
}

TEST(CheckOqa, NonMultiplicativeMapFailsAutomorphismAxiom) {
  AlgebraPtr M = matrix_algebra(2);
  AlgebraMap transpose = make_map(M, M, {{{0, Scalar(1)}}, {{2, Scalar(1)}}, {{1, Scalar(1)}}, {{3, Scalar(1)}}}, false);
  OqaCandidate c = make_oqa("transpose", M, mn_rmatrix(2, S("a")), transpose, identity_map(M));
  CheckReport rep = check_oqa(c);
  EXPECT_FALSE(rep.find("D-automorphism")->pass);
  EXPECT_TRUE(rep.find("U-automorphism")->pass);
  EXPECT_EQ(rep.results().size(), kAxioms.size());
}

TEST(CheckOqa, NonInvertibleRIsReported) {
  AlgebraPtr M = matrix_algebra(2);
  OqaCandidate c = make_oqa("singular", M, lit({M, M}, {{{"E11", "E11"}, "1"}}), identity_map(M), identity_map(M));
  CheckReport rep = check_oqa(c);
  EXPECT_FALSE(rep.find("r-invertible")->pass);
  EXPECT_FALSE(rep.passed());
  EXPECT_THROW(certify(c), Error);
}

TEST(CheckOqa, StreamsEveryVerdictInOrder) {
  std::vector<std::string> seen;
  check_oqa(mn_oqa(2, S("a")), [&](const AxiomResult& r) { seen.push_back(r.axiom); });
  EXPECT_EQ(seen, kAxioms);
}

TEST(MakeOqa, RejectsWrongShapes) {
  AlgebraPtr M = matrix_algebra(2), K2 = kz2_algebra();
  EXPECT_THROW(make_oqa("x", M, TensorElement::unit({M, K2}), identity_map(M), identity_map(M)), Error);
  EXPECT_THROW(make_oqa("x", M, TensorElement::unit({M, M}), identity_map(K2), identity_map(M)), Error);
}

TEST(Constructions, TrivialSwapTensorAndRadfordAreOqas) {
  EXPECT_TRUE(check_oqa(trivial_oqa(ground_field())).passed());
  EXPECT_TRUE(check_oqa(trivial_oqa(sweedler_algebra())).passed());
  OqaCandidate h = ex45_H_oqa(S("nu"));
  CheckReport swapped = check_oqa(swap_orientation(h));
  EXPECT_TRUE(swapped.passed()) << swapped.to_text();
  OqaCandidate t = tensor_oqa(mn_oqa(2, S("a")), ex45_Hprime_oqa());
  EXPECT_TRUE(t.certified);
  EXPECT_EQ(t.H->dim(), 8u);
  EXPECT_TRUE(check_oqa(t).passed());
  OqaCandidate rd = radford_double(mn_oqa(2, S("a")));
  EXPECT_TRUE(check_oqa(rd).passed());
  ASSERT_TRUE(rd.r_inv.has_value());
  EXPECT_TRUE(is_two_sided_inverse(rd.r, *rd.r_inv));
}

TEST(Constructions, TensorOqaIsMiddleLegSwapOfOuterProduct) {
  OqaCandidate a = mn_oqa(2, S("a")), b = ex45_Hprime_oqa();
  OqaCandidate t = tensor_oqa(a, b);
  TensorElement expected = flatten(permute_legs(outer_product(a.r, b.r), {0, 2, 1, 3}), {2, 2});
  EXPECT_EQ(t.r, expected);
}

TEST(Evaluate, SpecialisationStaysAnOqa) {
  for (Rational a : {Rational(3, 2), Rational(-2), Rational(7, 5)}) {
    EvalContext ctx({{intern_variable("a"), a}});
    OqaCandidate e = evaluate(mn_oqa(3, S("a")), ctx);
    EXPECT_FALSE(e.certified);
    EXPECT_EQ(e.r, mn_rmatrix(3, Scalar(a)));
    EXPECT_TRUE(check_oqa(e).passed());
  }
}

TEST(Evaluate, CommutesWithInversion) {
  EvalContext ctx({{intern_variable("a"), Rational(5, 3)}});
  TensorElement p = mn_rmatrix(3, S("a"));
  EXPECT_EQ(ctx.tensor(tensor_invert(p)), tensor_invert(ctx.tensor(p)));
}

TEST(VerifiedInverse, RejectsWrongClaim) {
  TensorElement p = mn_rmatrix(2, S("a"));
  auto inv = verified_inverse(p, p);
  ASSERT_TRUE(inv.has_value());
  EXPECT_TRUE(is_two_sided_inverse(p, *inv));
  EXPECT_NE(*inv, p);
}
