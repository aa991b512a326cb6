#include <gtest/gtest.h>

#include <random>

#include "oqa/catalog.hpp"
#include "oqa/error.hpp"
#include "oracles.hpp"

using namespace oqa;
using oracle::lit;
using oracle::S;

namespace {

std::vector<AlgebraPtr> mixed_legs() { return {matrix_algebra(2), sweedler_algebra(), kz2_algebra()}; }

}  // namespace

TEST(TensorMultiply, MatchesBruteForceProduct) {
  std::mt19937 rng(1);
  auto legs = mixed_legs();
  for (int i = 0; i < 10; ++i) {
    auto s = oracle::random_element(rng, legs, 0.2, true);
    auto t = oracle::random_element(rng, legs, 0.2, true);
    EXPECT_EQ(tensor_multiply(s, t), oracle::product(s, t));
  }
}

TEST(TensorMultiply, IsAssociativeAndUnital) {
  std::mt19937 rng(2);
  auto legs = mixed_legs();
  auto one = TensorElement::unit(legs);
  for (int i = 0; i < 10; ++i) {
    auto x = oracle::random_element(rng, legs, 0.15, true);
    auto y = oracle::random_element(rng, legs, 0.15, true);
    auto z = oracle::random_element(rng, legs, 0.15, true);
    EXPECT_EQ(tensor_multiply(tensor_multiply(x, y), z), tensor_multiply(x, tensor_multiply(y, z)));
    EXPECT_EQ(tensor_multiply(one, x), x);
    EXPECT_EQ(tensor_multiply(x, one), x);
  }
}

TEST(Embed, MatchesLoopOracle) {
  std::mt19937 rng(4);
  AlgebraPtr M = matrix_algebra(2), H = sweedler_algebra();
  std::vector<AlgebraPtr> legs{M, H, M, H};
  auto t = oracle::random_element(rng, {M, H}, 0.5);
  for (std::vector<std::size_t> pos : {std::vector<std::size_t>{0, 1}, {0, 3}, {2, 3}})
    EXPECT_EQ(embed(t, legs, pos), oracle::embed(t, legs, pos)) << pos[0] << pos[1];
  EXPECT_THROW(embed(t, legs, {2, 1}), Error);
  EXPECT_THROW(embed(t, legs, {1, 2}), Error);
}

TEST(MultiplyPlaced, EqualsProductWithEmbedding) {
  std::mt19937 rng(5);
  AlgebraPtr M = matrix_algebra(2);
  std::vector<AlgebraPtr> legs{M, M, M};
  auto s = oracle::random_element(rng, legs, 0.3, true);
  auto t = oracle::random_element(rng, {M, M}, 0.5, true);
  EXPECT_EQ(multiply_placed(s, t, {0, 2}), oracle::product(s, oracle::embed(t, legs, {0, 2})));
  EXPECT_EQ(multiply_placed(s, t, {2, 0}), oracle::product(s, oracle::embed(t, legs, {2, 0})));
}

TEST(MultiplyPlaced, ReversedLegUsesOppositeProduct) {
  AlgebraPtr M = matrix_algebra(2);
  auto s = lit({M, M}, {{{"E12", "E12"}, "1"}});
  auto t = lit({M, M}, {{{"E21", "E21"}, "1"}});
  // first leg E12 E21 = E11, second leg reversed: E21 E12 = E22
  EXPECT_EQ(multiply_placed(s, t, {0, 1}, {false, true}), lit({M, M}, {{{"E11", "E22"}, "1"}}));
}

TEST(OrderedProduct, YangBaxterSidesMatchBruteForce) {
  AlgebraPtr M = matrix_algebra(2);
  TensorElement r = mn_rmatrix(2, S("a"));
  std::vector<AlgebraPtr> legs{M, M, M};
  auto lhs = ordered_product(legs, {{r, {0, 1}}, {r, {0, 2}}, {r, {1, 2}}});
  auto rhs = ordered_product(legs, {{r, {1, 2}}, {r, {0, 2}}, {r, {0, 1}}});
  EXPECT_EQ(lhs, oracle::placed_product(legs, {{&r, {0, 1}}, {&r, {0, 2}}, {&r, {1, 2}}}));
  EXPECT_EQ(rhs, oracle::placed_product(legs, {{&r, {1, 2}}, {&r, {0, 2}}, {&r, {0, 1}}}));
  EXPECT_EQ(lhs, rhs);
}

TEST(PermuteLegs, ResultLegKIsInputLegPermK) {
  AlgebraPtr M = matrix_algebra(2), K2 = kz2_algebra(), H = sweedler_algebra();
  auto t = lit({M, K2, H}, {{{"E12", "t", "gx"}, "a"}, {{"E11", "1", "1"}, "2"}});
  auto p = permute_legs(t, {2, 0, 1});
  EXPECT_EQ(p, lit({H, M, K2}, {{{"gx", "E12", "t"}, "a"}, {{"1", "E11", "1"}, "2"}}));
  EXPECT_EQ(permute_legs(p, {1, 2, 0}), t);
}

TEST(Flatten, RoundTripsAndMatchesTensorAlgebraBasis) {
  std::mt19937 rng(6);
  AlgebraPtr M = matrix_algebra(2), K2 = kz2_algebra();
  auto t = oracle::random_element(rng, {M, K2, M, K2}, 0.2, true);
  auto f = flatten(t, {2, 2});
  ASSERT_EQ(f.arity(), 2u);
  EXPECT_EQ(f.legs()[0], tensor_algebra(M, K2));
  EXPECT_EQ(unflatten(f, {2, 2}), t);
  auto g = flatten(t, {3, 1});
  EXPECT_EQ(g.legs()[0], tensor_algebra(tensor_algebra(M, K2), M));
  EXPECT_EQ(unflatten(g, {3, 1}), t);
  auto one = lit({M, K2, M, K2}, {{{"E12", "t", "E21", "1"}, "1"}});
  auto fo = flatten(one, {2, 2});
  EXPECT_EQ(fo.labels(fo.terms().begin()->first), (std::vector<std::string>{"E12⊗t", "E21⊗1"}));
}

TEST(Flatten, ProductCommutesWithFlattening) {
  std::mt19937 rng(7);
  AlgebraPtr M = matrix_algebra(2), H = sweedler_algebra();
  auto s = oracle::random_element(rng, {M, H, M, H}, 0.05, true);
  auto t = oracle::random_element(rng, {M, H, M, H}, 0.05, true);
  EXPECT_EQ(flatten(tensor_multiply(s, t), {2, 2}), tensor_multiply(flatten(s, {2, 2}), flatten(t, {2, 2})));
}

TEST(ApplyMaps, NullLeavesLegUnchanged) {
  AlgebraPtr M = matrix_algebra(2);
  AlgebraMap f = mn_automorphism(2, S("a"));
  auto t = lit({M, M}, {{{"E12", "E12"}, "1"}, {{"E21", "E11"}, "nu"}});
  EXPECT_EQ(apply_maps(t, {&f, nullptr}), lit({M, M}, {{{"E12", "E12"}, "a^-1"}, {{"E21", "E11"}, "a*nu"}}));
}

TEST(TensorInvert, AgreesWithDenseOracle) {
  for (int n : {2, 3}) {
    TensorElement p = mn_rmatrix(n, S("a"));
    TensorElement P = tensor_invert(p);
    EXPECT_TRUE(is_two_sided_inverse(p, P));
    auto oracle_inv = oracle::inverse(p);
    ASSERT_TRUE(oracle_inv.has_value());
    EXPECT_EQ(P, *oracle_inv);
  }
}

TEST(TensorInvert, RandomInvertiblesRoundTrip) {
  std::mt19937 rng(8);
  AlgebraPtr M = matrix_algebra(2), K2 = kz2_algebra();
  for (int i = 0; i < 5; ++i) {
    auto t = oracle::random_element(rng, {M, K2}, 0.4) + TensorElement::unit({M, K2}).scaled(S("a"));
    auto inv = tensor_invert(t);
    EXPECT_EQ(tensor_multiply(t, inv), TensorElement::unit({M, K2}));
    EXPECT_EQ(tensor_invert(inv), t);
  }
}

TEST(TensorInvert, SingularElementThrows) {
  AlgebraPtr M = matrix_algebra(2);
  auto t = lit({M, M}, {{{"E11", "E11"}, "1"}});
  try {
    tensor_invert(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "NotInvertible");
  }
}

TEST(FirstDifference, ReportsEarliestIndex) {
  AlgebraPtr M = matrix_algebra(2);
  auto s = lit({M, M}, {{{"E11", "E11"}, "1"}, {{"E22", "E22"}, "a"}});
  auto t = lit({M, M}, {{{"E11", "E11"}, "1"}, {{"E12", "E21"}, "2"}, {{"E22", "E22"}, "a"}});
  auto d = first_difference(s, t);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(s.labels(d->index), (std::vector<std::string>{"E12", "E21"}));
  EXPECT_TRUE(d->lhs.is_zero());
  EXPECT_EQ(d->rhs, Scalar(2));
  EXPECT_FALSE(first_difference(s, s).has_value());
}

TEST(TensorShapes, MismatchedLegsAreRejected) {
  AlgebraPtr M = matrix_algebra(2), K2 = kz2_algebra();
  auto s = TensorElement::unit({M, M});
  auto t = TensorElement::unit({M, K2});
  EXPECT_THROW(tensor_multiply(s, t), Error);
  EXPECT_THROW(s + t, Error);
  EXPECT_THROW(flatten(s, {3}), Error);
}
