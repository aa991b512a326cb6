#include <gtest/gtest.h>

#include <cstdlib>

#include "oqa/catalog.hpp"
#include "oqa/error.hpp"
#include "oracles.hpp"

using namespace oqa;
using oracle::lit;
using oracle::S;

namespace {

TensorElement from_matrix(const Matrix& m, const AlgebraPtr& T) {
  TensorElement t({T, T});
  for (std::uint32_t i = 0; i < m.size(); ++i)
    for (std::uint32_t j = 0; j < m[i].size(); ++j)
      if (!m[i][j].is_zero()) t.add_term(MultiIndex{i, j}, m[i][j]);
  return t;
}

std::vector<std::size_t> diff_counts(const TensorElement& t, const std::string& fixture) {
  ExpectedMatrix e = load_expected(fixture);
  std::vector<std::size_t> out;
  for (const auto& spec : all_orderings()) out.push_back(compare_to_expected(t, e, spec).diffs.size());
  return out;
}

bool is_certified(const FixtureObject& obj) {
  return std::visit(
      [](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, OqaCandidate> || std::is_same_v<T, Nonuple> || std::is_same_v<T, HopfAlgebra>)
          return o.certified;
        else
          return true;
      },
      obj);
}

}  // namespace

TEST(Registry, ListsEveryRequiredFixture) {
  auto names = catalog_names();
  for (const char* n : {"mn_oqa(n)", "ex34_nonuple_case1", "ex34_nonuple_case2", "ex45_H_oqa(nu)", "ex45_Hprime_oqa",
                        "ex45_nonuple(nu)", "sweedler4_hopf", "kz2_hopf", "ex45_weak_r", "expected_ex41_alpha",
                        "expected_ex43_alpha", "expected_ex45_alpha(nu)", "trivial_oqa(A)"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}

TEST(Registry, EveryObjectLoadsCertified) {
  for (const char* ref : {"mn_oqa(2)", "mn_oqa(3)", "mn_oqa(2,3/2)", "ex34_nonuple_case1", "ex34_nonuple_case2",
                          "ex45_H_oqa", "ex45_H_oqa(2)", "ex45_Hprime_oqa", "ex45_nonuple", "ex45_nonuple(0)",
                          "sweedler4_hopf", "kz2_hopf", "ex45_weak_r", "expected_ex41_alpha", "expected_ex43_alpha",
                          "expected_ex45_alpha", "trivial_oqa(K)", "trivial_oqa(KZ2)", "trivial_oqa(H4)",
                          "trivial_oqa(M3)", "mn_rmatrix(2)", "sweedler4_rmatrix", "kz2_rmatrix",
                          "ex34_case2_stated_R"}) {
    Fixture f = catalog_get(ref);
    EXPECT_TRUE(is_certified(f.object)) << ref;
    EXPECT_FALSE(f.provenance.empty()) << ref;
  }
  EXPECT_EQ(std::get<OqaCandidate>(catalog_get("trivial_oqa(K)").object).r, TensorElement::unit({ground_field(),
                                                                                                 ground_field()}));
}

TEST(Registry, UnknownNamesAreRejected) {
  for (const char* ref : {"nope", "mn_oqa", "mn_oqa(x)", "mn_oqa(1)", "trivial_oqa(Q8)", "mn_oqa(2"}) {
    try {
      catalog_get(ref);
      ADD_FAILURE() << ref;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "UnknownFixture") << ref;
    }
  }
}

TEST(Registry, CatalogDirCanBeOverridden) {
  ASSERT_EQ(setenv("OQA_CATALOG_DIR", "/nonexistent-fixture-dir", 1), 0);
  EXPECT_EQ(catalog_dir(), std::filesystem::path("/nonexistent-fixture-dir"));
  EXPECT_THROW(load_expected("expected_ex43_alpha"), Error);
  unsetenv("OQA_CATALOG_DIR");
  EXPECT_NO_THROW(load_expected("expected_ex43_alpha"));
}

TEST(ExpectedMatrices, FixturesRecordTheFrozenOrdering) {
  for (const char* name : {"expected_ex41_alpha", "expected_ex43_alpha"}) {
    ExpectedMatrix e = load_expected(name);
    EXPECT_EQ(to_string(e.ordering), "row-major,first-major");
    EXPECT_EQ(e.cells.size(), e.rows);
    EXPECT_FALSE(e.transcription_notes.empty());
  }
  EXPECT_EQ(load_expected("expected_ex41_alpha").rows, 36u);
  EXPECT_EQ(load_expected("expected_ex43_alpha").rows, 16u);
}

TEST(ExpectedMatrices, ShorthandIsSubstituted) {
  ExpectedMatrix e = load_expected("expected_ex43_alpha");
  // top-left entry a^2 and the x-dependent entry in row 1
  EXPECT_EQ(e.cells[0][0], S("a^2"));
  EXPECT_EQ(e.cells[0][6], S("-(a - a^-1)^2*a"));
  for (const auto& row : e.cells)
    for (const auto& c : row)
      for (VarId v : c.variables()) EXPECT_EQ(variable_name(v), "a");
}

TEST(ExpectedMatrices, SplitConstructionOrderingIsIdentified) {
  OqaCandidate c = build_thm36(ex34_nonuple(1, S("a")));
  EXPECT_EQ(diff_counts(c.r, "expected_ex41_alpha"), (std::vector<std::size_t>{12, 106, 58, 108}));
  DiffReport d = compare_to_expected(c.r, "expected_ex41_alpha", parse_ordering("row-major,first-major"));
  EXPECT_TRUE(d.all_recorded());
  EXPECT_EQ(load_expected("expected_ex41_alpha").suspected_typos.size(), d.diffs.size());
  EXPECT_TRUE(check_oqa(c).passed());
}

TEST(ExpectedMatrices, DoubleConstructionOrderingIsIdentified) {
  OqaCandidate c = build_thm37(mn_oqa(2, S("a")));
  EXPECT_EQ(diff_counts(c.r, "expected_ex43_alpha"), (std::vector<std::size_t>{3, 34, 43, 38}));
  DiffReport d = compare_to_expected(c.r, "expected_ex43_alpha", parse_ordering("row-major,first-major"));
  EXPECT_TRUE(d.all_recorded());
  ASSERT_EQ(d.diffs.size(), 3u);
  EXPECT_EQ(d.diffs[0].row, 2u);
  EXPECT_EQ(d.diffs[0].col, 7u);
  EXPECT_TRUE(d.diffs[0].expected.is_zero());
  EXPECT_EQ(d.diffs[0].computed, S("-(a - a^-1)*a^2"));
}

TEST(ExpectedMatrices, UnitTensorDiffersFromFixture) {
  AlgebraPtr T = tensor_algebra(matrix_algebra(2), matrix_algebra(2));
  DiffReport d = compare_to_expected(TensorElement::unit({T, T}), "expected_ex43_alpha", OrderingSpec{});
  EXPECT_GT(d.diffs.size(), 10u);
  EXPECT_FALSE(d.all_recorded());
}

TEST(ExpectedMatrices, DimensionMismatchThrows) {
  EXPECT_THROW(compare_to_expected(mn_rmatrix(2, S("a")), "expected_ex43_alpha", OrderingSpec{}), Error);
}

TEST(ExpectedMatrices, PrintedMatricesFailTheAxioms) {
  AlgebraMap f2 = mn_automorphism(2, S("a")), f3 = mn_automorphism(3, S("a"));
  {
    AlgebraPtr T = tensor_algebra(matrix_algebra(2), matrix_algebra(2));
    ExpectedMatrix e = load_expected("expected_ex43_alpha");
    CheckReport rep = check_oqa(make_oqa("printed", T, from_matrix(e.cells, T), tensor_map(f2, f2), tensor_map(f2, f2)));
    EXPECT_TRUE(rep.find("r-invertible")->pass);
    EXPECT_FALSE(rep.find("inverse-pair-left")->pass);
    EXPECT_FALSE(rep.find("yang-baxter")->pass);
  }
  {
    AlgebraPtr T = tensor_algebra(matrix_algebra(2), matrix_algebra(3));
    ExpectedMatrix e = load_expected("expected_ex41_alpha");
    CheckReport rep = check_oqa(make_oqa("printed", T, from_matrix(e.cells, T), tensor_map(f2, f3), tensor_map(f2, f3)));
    EXPECT_FALSE(rep.find("r-invertible")->pass);
    EXPECT_FALSE(rep.find("D-invariance")->pass);
  }
}

TEST(Ordering, ParsesAndPlacesBasisElements) {
  EXPECT_EQ(to_string(parse_ordering("col-major,second-major")), "col-major,second-major");
  EXPECT_EQ(to_string(parse_ordering("")), "row-major,first-major");
  EXPECT_THROW(parse_ordering("diagonal"), Error);
  AlgebraPtr M = matrix_algebra(2);
  OrderingSpec col = parse_ordering("col-major");
  EXPECT_EQ(axis_position(*M, M->index_of("E12"), col), 2u);
  EXPECT_EQ(axis_position(*M, M->index_of("E12"), OrderingSpec{}), 1u);
  AlgebraPtr T = tensor_algebra(M, kz2_algebra());
  OrderingSpec second = parse_ordering("second-major");
  EXPECT_EQ(axis_position(*T, T->index_of("E11⊗t"), second), 4u);
  Matrix m = to_matrix(lit({M, M}, {{{"E12", "E21"}, "a"}}), OrderingSpec{});
  EXPECT_EQ(m[1][2], S("a"));
  EXPECT_EQ(matrix_to_csv({{Scalar(1), S("a^-1")}, {Scalar(0), S("1/2*nu")}}), "1,a^-1\n0,1/2*nu\n");
}
