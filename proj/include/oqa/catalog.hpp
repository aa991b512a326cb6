#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "oqa/hopf.hpp"
#include "oqa/ordering.hpp"

namespace oqa {

/// Expected matrix transcribed from a data file, after substituting the
/// shorthand parameters (x ↦ a − a⁻¹).
struct ExpectedMatrix {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  Matrix cells;
  OrderingSpec ordering;  // frozen ordering recorded in the data file
  /// Cells the data file records as suspected misprints (0-based row, col),
  /// each with a note.
  struct TypoRecord {
    std::size_t row;
    std::size_t col;
    std::string note;
  };
  std::vector<TypoRecord> suspected_typos;
  std::vector<std::string> transcription_notes;
};

using FixtureObject = std::variant<AlgebraPtr, OqaCandidate, Nonuple, HopfAlgebra, TensorElement, ExpectedMatrix>;

struct Fixture {
  std::string name;
  FixtureObject object;
  std::string provenance;
};

/// Directory holding the expected-matrix data files: $OQA_CATALOG_DIR when
/// set, otherwise the directory configured at build time.
std::filesystem::path catalog_dir();

/// Registered names, with argument placeholders (e.g. "mn_oqa(n)").
std::vector<std::string> catalog_names();

/// Looks up `name(args)`. Arguments are scalar expressions; for the
/// ν-dependent fixtures an omitted argument means the symbolic parameter
/// `nu`. Objects are certified before they are returned. Throws
/// Error("UnknownFixture") or Error("Uncertified").
Fixture catalog_get(const std::string& name);

// Typed accessors used by the library and tests.
AlgebraPtr sweedler_algebra();
AlgebraPtr kz2_algebra();
/// f(E_ij) = a^(i-j) E_ij on M_n.
AlgebraMap mn_automorphism(int n, const Scalar& a);
/// p_{a,n}.
TensorElement mn_rmatrix(int n, const Scalar& a);
OqaCandidate mn_oqa(int n, const Scalar& a);
Nonuple ex34_nonuple(int which_case, const Scalar& a);
/// The inverse of the second case's r as displayed alongside it.
TensorElement ex34_case2_stated_inverse(const Scalar& a);
HopfAlgebra sweedler4_hopf();
HopfAlgebra kz2_hopf();
TensorElement sweedler_rmatrix(const Scalar& nu);
TensorElement kz2_rmatrix();
TensorElement ex45_weak_r();
OqaCandidate ex45_H_oqa(const Scalar& nu);
OqaCandidate ex45_Hprime_oqa();
Nonuple ex45_nonuple(const Scalar& nu);
/// Expected α̃ of the Sweedler/KZ₂ construction as a 4-leg element.
TensorElement expected_ex45_alpha(const Scalar& nu);
ExpectedMatrix load_expected(const std::string& fixture_name);

/// Symbolic parameters used by the catalog.
Scalar param_a();
Scalar param_nu();

struct CellDiff {
  std::size_t row;
  std::size_t col;
  Scalar expected;
  Scalar computed;
  bool recorded_typo;
};

struct DiffReport {
  std::string fixture;
  OrderingSpec ordering;
  std::vector<CellDiff> diffs;
  bool exact() const { return diffs.empty(); }
  /// Every differing cell carries a suspected-typo record.
  bool all_recorded() const;
};

/// Entrywise comparison of a 2-leg element against an expected matrix
/// under `ordering`. Throws Error("ShapeMismatch") on a dimension mismatch.
DiffReport compare_to_expected(const TensorElement& computed, const ExpectedMatrix& expected,
                               const OrderingSpec& ordering);
DiffReport compare_to_expected(const TensorElement& computed, const std::string& fixture_name,
                               const OrderingSpec& ordering);

}  // namespace oqa
