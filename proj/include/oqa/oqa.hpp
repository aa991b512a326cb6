#pragma once

#include <optional>
#include <string>

#include "oqa/evaluate.hpp"
#include "oqa/report.hpp"

namespace oqa {

/// (H, r, D, U) together with an optional claimed inverse of r. A claimed
/// inverse is only used after it has been verified by multiplication.
struct OqaCandidate {
  std::string name;
  AlgebraPtr H;
  TensorElement r;
  AlgebraMap D;
  AlgebraMap U;
  std::optional<TensorElement> r_inv;
  /// Constructed OQAs on H⊗H' keep α̃ as a 4-leg element over H, H', H, H'.
  std::optional<TensorElement> legwise;
  bool certified = false;
};

OqaCandidate make_oqa(std::string name, AlgebraPtr H, TensorElement r, AlgebraMap D, AlgebraMap U,
                      std::optional<TensorElement> r_inv = std::nullopt);
/// (A, 1⊗1, id, id).
OqaCandidate trivial_oqa(const AlgebraPtr& A);

/// The claim when it is a verified two-sided inverse of t, otherwise a
/// computed inverse; nullopt when t is not invertible.
std::optional<TensorElement> verified_inverse(const TensorElement& t, const std::optional<TensorElement>& claim);

/// Leg swap of a 2-leg element: x ⊗ y ↦ y ⊗ x.
TensorElement flip(const TensorElement& t);

/// The two products whose equality with the unit expresses that
/// (D⊗id)(R) and (id⊗U)(r) are mutually inverse in H⊗H'^op.
struct InversePair {
  TensorElement left;   // D(R_l) r_i ⊗ U(r^i) R^l
  TensorElement right;  // r_i D(R_l) ⊗ R^l U(r^i)
};
InversePair inverse_pair(const TensorElement& r, const TensorElement& R, const AlgebraMap& D, const AlgebraMap& U);

/// Verdicts, in order: r-invertible, D-automorphism, U-automorphism,
/// D-U-commute, inverse-pair-left, inverse-pair-right, D-invariance,
/// U-invariance, yang-baxter.
CheckReport check_oqa(const OqaCandidate& c, const ReportSink& sink = {});

/// r12 r13 r23 = r23 r13 r12.
bool check_ybe(const OqaCandidate& c);
/// r13 r23 = R12 r23 r13 r12. Throws Error("NotInvertible").
bool check_ybe_alt(const OqaCandidate& c);

/// Runs check_oqa unless already certified; throws Error("Uncertified").
OqaCandidate certify(OqaCandidate c);
void require_certified(const OqaCandidate& c);

/// (H, r, U, D).
OqaCandidate swap_orientation(const OqaCandidate& c);
/// (H⊗H', r'', D⊗D', U⊗U') with r'' the middle-leg swap of r⊗r'.
OqaCandidate tensor_oqa(const OqaCandidate& c1, const OqaCandidate& c2);
/// Radford's OQA on H⊗H: α̃ = Rt14 Rt24 r13 r23 where Rt is the leg swap of R.
OqaCandidate radford_double(const OqaCandidate& c);

/// Evaluates every scalar at the context's values; the result is not
/// certified.
OqaCandidate evaluate(const OqaCandidate& c, EvalContext& ctx);

}  // namespace oqa
