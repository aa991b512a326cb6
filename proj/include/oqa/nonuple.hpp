#pragma once

#include "oqa/oqa.hpp"

namespace oqa {

/// (H, H', p, p', r, D, U, D', U') with p ∈ H⊗H, p' ∈ H'⊗H', r ∈ H⊗H'.
/// The optional inverses are claims, verified before use.
struct Nonuple {
  std::string name;
  AlgebraPtr H;
  AlgebraPtr Hp;
  TensorElement p;
  TensorElement pp;
  TensorElement r;
  AlgebraMap D;
  AlgebraMap U;
  AlgebraMap Dp;
  AlgebraMap Up;
  std::optional<TensorElement> P;
  std::optional<TensorElement> Pp;
  std::optional<TensorElement> R;
  bool certified = false;
};

OqaCandidate first_oqa(const Nonuple& n);   // (H, p, D, U)
OqaCandidate second_oqa(const Nonuple& n);  // (H', p', D', U')

/// (H, H, p, p, p, D, U, D, U).
Nonuple diagonal(const OqaCandidate& c);

/// Component OQA verdicts (prefixed "H:" and "H':"), invertibility of p, p'
/// and r, the mixed inverse pair, (D⊗D')- and (U⊗U')-invariance of r, and
/// the two mixed braid relations in H⊗H⊗H' and H⊗H'⊗H'.
CheckReport check_nonuple(const Nonuple& n, const ReportSink& sink = {});

Nonuple certify(Nonuple n);
void require_certified(const Nonuple& n);

/// (H, H', p, p', r, U, D, U', D').
Nonuple swap_nonuple_orientation(const Nonuple& n);

/// The four identities implied by the mixed braid relations, checked in
/// H⊗H⊗H', H⊗H'⊗H', H'⊗H⊗H and H'⊗H'⊗H.
CheckReport derived_identities(const Nonuple& n, const ReportSink& sink = {});

/// Compatibility of two nonuples sharing H, H', p, p' and the maps, with
/// weak parts r and q. Throws Error("ComponentMismatch").
CheckReport check_pair_compat(const Nonuple& nr, const Nonuple& nq, const ReportSink& sink = {});

/// OQA on H⊗H' with α̃ = r14 p13 p'24 Qt23 over (H, H', H, H'), where Qt is
/// the leg swap of q⁻¹. Its inverse qt23 P13 P'24 R14 is attached as r_inv.
OqaCandidate build_thm35(const Nonuple& nr, const Nonuple& nq);
/// build_thm35 with q = r.
OqaCandidate build_thm36(const Nonuple& n);
/// OQA on H⊗H with α̃ = p14 p13 p24 Pt23.
OqaCandidate build_thm37(const OqaCandidate& c);

Nonuple evaluate(const Nonuple& n, EvalContext& ctx);

}  // namespace oqa
