#pragma once

#include <utility>

#include "oqa/nonuple.hpp"

namespace oqa {

/// Finite-dimensional Hopf algebra data: coproduct and counit per basis
/// element, and the antipode as a linear map (anti-multiplicative, so it is
/// never certified as an automorphism).
struct HopfAlgebra {
  std::string name;
  AlgebraPtr A;
  std::vector<TensorElement> delta;  // delta[i] = Δ(e_i) ∈ A⊗A
  std::vector<Scalar> counit;        // counit[i] = ε(e_i)
  AlgebraMap antipode;
  std::optional<AlgebraMap> antipode_inverse;
  bool certified = false;
};

HopfAlgebra make_hopf(std::string name, AlgebraPtr A, std::vector<TensorElement> delta, std::vector<Scalar> counit,
                      AlgebraMap antipode);

/// Δ applied to leg `leg` of t, which splits into two legs.
TensorElement apply_coproduct(const HopfAlgebra& h, const TensorElement& t, std::size_t leg);
/// ε applied to leg `leg` of t, which disappears.
TensorElement apply_counit(const HopfAlgebra& h, const TensorElement& t, std::size_t leg);

/// coassociativity, counit-left/right, coproduct-unital/multiplicative,
/// counit-unital/multiplicative, antipode-left/right, antipode-bijective.
CheckReport check_hopf(const HopfAlgebra& h, const ReportSink& sink = {});
HopfAlgebra certify(HopfAlgebra h);
void require_certified(const HopfAlgebra& h);

/// S⁻¹, from the certified inverse when available.
AlgebraMap antipode_inverse(const HopfAlgebra& h);
/// S⁻², certified as an automorphism.
AlgebraMap antipode_inverse_square(const HopfAlgebra& h);

/// R-invertible, coproduct-first-leg (Δ⊗id)(p) = p13 p23,
/// coproduct-second-leg (id⊗Δ)(p) = p13 p12, cocommutation
/// Δ^cop(h) p = p Δ(h) on every basis element, counit-first-leg,
/// counit-second-leg.
CheckReport check_quasitriangular(const HopfAlgebra& h, const TensorElement& p, const ReportSink& sink = {});

/// r-invertible, coproduct-first-leg (Δ⊗id)(r) = r13 r23 in H⊗H⊗H',
/// coproduct-second-leg (id⊗Δ')(r) = r13 r12 in H⊗H'⊗H'; when these pass
/// also the consequences (S⊗id)(r) = r⁻¹, (id⊗S'⁻¹)(r) = r⁻¹ and
/// (S⊗S')(r) = r.
CheckReport check_weak_rmatrix(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r,
                               const ReportSink& sink = {});

/// (A, p, id, S⁻²). Throws Error("Uncertified") when the QT check fails.
OqaCandidate qt_to_oqa(const HopfAlgebra& h, const TensorElement& p);

/// Hopf algebra on A⊗A' with coproduct rt23 Δ(h)13 Δ'(h')24 Rt23
/// (regrouped), counit ε⊗ε' and antipode R (S h ⊗ S' h') r.
HopfAlgebra bicrossed_coproduct(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r);

/// [p, p'] = r14 p13 p'24 Rt23 regrouped into (A⊗A')⊗(A⊗A').
TensorElement bracket(const TensorElement& p, const TensorElement& pp, const TensorElement& r);

/// The bicrossed Hopf algebra with [p, p'], certified quasitriangular.
std::pair<HopfAlgebra, TensorElement> qt_bicrossed(const HopfAlgebra& h, const HopfAlgebra& hp,
                                                   const TensorElement& p, const TensorElement& pp,
                                                   const TensorElement& r);

/// The nonuple (A, A', p, p', r, id, S⁻², id, S'⁻²), uncertified.
Nonuple hopf_nonuple(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& p, const TensorElement& pp,
                     const TensorElement& r);

/// Inverse-antipode identities of the bicrossed antipode S̄ on every basis
/// element: S̄⁻¹ by inversion equals R(S⁻¹h ⊗ S'⁻¹h')r
/// (antipode-inverse-conjugate-form) and (S⁻¹⊗S'⁻¹)(r(h⊗h')R)
/// (antipode-inverse-twisted-form); S̄⁻² = S⁻²⊗S'⁻² (antipode-inverse-square).
CheckReport check_bicrossed_antipode(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r,
                                     const ReportSink& sink = {});

/// Certifies the Hopf nonuple, checks the bicrossed antipode identities and
/// returns build_thm36 of the nonuple.
OqaCandidate cor39_oqa(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& p, const TensorElement& pp,
                       const TensorElement& r);

HopfAlgebra evaluate(const HopfAlgebra& h, EvalContext& ctx);

}  // namespace oqa
