#include "oqa/oqa.hpp"

#include "oqa/error.hpp"

namespace oqa {

namespace {

std::vector<AlgebraPtr> legs_of(const AlgebraPtr& H, std::size_t n) { return std::vector<AlgebraPtr>(n, H); }

// Certified copy of f, or the reason it is not an automorphism.
std::optional<AlgebraMap> try_certify(const AlgebraMap& f, std::string& why) {
  if (f.is_automorphism()) return f;
  try {
    return certify_automorphism(f);
  } catch (const Error& e) {
    why = e.kind() + ": " + e.what();
    return std::nullopt;
  }
}

OqaCandidate finish(OqaCandidate c, const std::string& what) {
  CheckReport report = check_oqa(c);
  if (!report.passed()) {
    const AxiomResult* f = report.first_failure();
    throw Error("ConstructionFailed", what + " produced a non-OQA: " + format_result(*f));
  }
  c.certified = true;
  return c;
}

}  // namespace

OqaCandidate make_oqa(std::string name, AlgebraPtr H, TensorElement r, AlgebraMap D, AlgebraMap U,
                      std::optional<TensorElement> r_inv) {
  if (r.arity() != 2 || !same_algebra(r.legs()[0], H) || !same_algebra(r.legs()[1], H))
    throw Error("ShapeMismatch", "r must lie in H⊗H");
  for (const AlgebraMap* f : {&D, &U})
    if (!same_algebra(f->source(), H) || !same_algebra(f->target(), H))
      throw Error("ShapeMismatch", "D and U must be endomorphisms of H");
  return OqaCandidate{std::move(name), std::move(H), std::move(r), std::move(D), std::move(U),
                      std::move(r_inv), std::nullopt, false};
}

OqaCandidate trivial_oqa(const AlgebraPtr& A) {
  auto one = TensorElement::unit({A, A});
  OqaCandidate c = make_oqa("trivial(" + A->name + ")", A, one, identity_map(A), identity_map(A), one);
  c.certified = true;
  return c;
}

std::optional<TensorElement> verified_inverse(const TensorElement& t, const std::optional<TensorElement>& claim) {
  if (claim && is_two_sided_inverse(t, *claim)) return claim;
  try {
    return tensor_invert(t);
  } catch (const Error& e) {
    if (e.kind() == "NotInvertible") return std::nullopt;
    throw;
  }
}

TensorElement flip(const TensorElement& t) { return permute_legs(t, {1, 0}); }

InversePair inverse_pair(const TensorElement& r, const TensorElement& R, const AlgebraMap& D, const AlgebraMap& U) {
  TensorElement x = apply_maps(R, {&D, nullptr});
  TensorElement y = apply_maps(r, {nullptr, &U});
  // The second leg multiplies in H'^op.
  return {multiply_placed(x, y, {0, 1}, {false, true}), multiply_placed(y, x, {0, 1}, {false, true})};
}

CheckReport check_oqa(const OqaCandidate& c, const ReportSink& sink) {
  CheckReport report(c.name, sink);
  const auto& H = c.H;
  auto R = verified_inverse(c.r, c.r_inv);
  if (R)
    report.add_pass("r-invertible");
  else
    report.add_fail("r-invertible", "r has no inverse in H⊗H");

  std::string why_d, why_u;
  auto D = try_certify(c.D, why_d);
  auto U = try_certify(c.U, why_u);
  D ? report.add_pass("D-automorphism") : report.add_fail("D-automorphism", why_d);
  U ? report.add_pass("U-automorphism") : report.add_fail("U-automorphism", why_u);
  maps_commute(c.D, c.U) ? report.add_pass("D-U-commute") : report.add_fail("D-U-commute", "D∘U ≠ U∘D");

  if (R) {
    auto pair = inverse_pair(c.r, *R, c.D, c.U);
    auto one = TensorElement::unit({H, H});
    report.add_equality("inverse-pair-left", pair.left, one);
    report.add_equality("inverse-pair-right", pair.right, one);
  } else {
    report.add_fail("inverse-pair-left", "needs an invertible r");
    report.add_fail("inverse-pair-right", "needs an invertible r");
  }
  report.add_equality("D-invariance", apply_maps(c.r, {&c.D, &c.D}), c.r);
  report.add_equality("U-invariance", apply_maps(c.r, {&c.U, &c.U}), c.r);

  auto legs = legs_of(H, 3);
  report.add_equality("yang-baxter", ordered_product(legs, {{c.r, {0, 1}}, {c.r, {0, 2}}, {c.r, {1, 2}}}),
                      ordered_product(legs, {{c.r, {1, 2}}, {c.r, {0, 2}}, {c.r, {0, 1}}}));
  return report;
}

bool check_ybe(const OqaCandidate& c) {
  auto legs = legs_of(c.H, 3);
  return ordered_product(legs, {{c.r, {0, 1}}, {c.r, {0, 2}}, {c.r, {1, 2}}}) ==
         ordered_product(legs, {{c.r, {1, 2}}, {c.r, {0, 2}}, {c.r, {0, 1}}});
}

bool check_ybe_alt(const OqaCandidate& c) {
  auto R = verified_inverse(c.r, c.r_inv);
  if (!R) throw Error("NotInvertible", "r has no inverse in H⊗H");
  auto legs = legs_of(c.H, 3);
  return ordered_product(legs, {{c.r, {0, 2}}, {c.r, {1, 2}}}) ==
         ordered_product(legs, {{*R, {0, 1}}, {c.r, {1, 2}}, {c.r, {0, 2}}, {c.r, {0, 1}}});
}

OqaCandidate certify(OqaCandidate c) {
  if (c.certified) return c;
  CheckReport report = check_oqa(c);
  if (!report.passed()) throw_uncertified("OQA '" + c.name + "'", report);
  c.certified = true;
  return c;
}

void require_certified(const OqaCandidate& c) {
  if (!c.certified) (void)certify(c);
}

OqaCandidate swap_orientation(const OqaCandidate& c) {
  require_certified(c);
  OqaCandidate out = c;
  std::swap(out.D, out.U);
  out.name = "swap(" + c.name + ")";
  out.certified = false;
  return finish(std::move(out), "swap_orientation");
}

OqaCandidate tensor_oqa(const OqaCandidate& c1, const OqaCandidate& c2) {
  require_certified(c1);
  require_certified(c2);
  auto interleave = [](const TensorElement& x, const TensorElement& y) {
    return flatten(permute_legs(outer_product(x, y), {0, 2, 1, 3}), {2, 2});
  };
  auto R1 = verified_inverse(c1.r, c1.r_inv);
  auto R2 = verified_inverse(c2.r, c2.r_inv);
  OqaCandidate out = make_oqa(c1.name + "⊗" + c2.name, tensor_algebra(c1.H, c2.H), interleave(c1.r, c2.r),
                              tensor_map(c1.D, c2.D), tensor_map(c1.U, c2.U), interleave(*R1, *R2));
  return finish(std::move(out), "tensor_oqa");
}

OqaCandidate radford_double(const OqaCandidate& c) {
  require_certified(c);
  const TensorElement& r = c.r;
  TensorElement R = *verified_inverse(r, c.r_inv);
  TensorElement rt = flip(r);
  TensorElement Rt = flip(R);
  auto legs = legs_of(c.H, 4);
  TensorElement alpha = ordered_product(legs, {{Rt, {0, 3}}, {Rt, {1, 3}}, {r, {0, 2}}, {r, {1, 2}}});
  TensorElement alpha_inv = ordered_product(legs, {{R, {1, 2}}, {R, {0, 2}}, {rt, {1, 3}}, {rt, {0, 3}}});
  OqaCandidate out = make_oqa("radford(" + c.name + ")", tensor_algebra(c.H, c.H), flatten(alpha, {2, 2}),
                              tensor_map(c.D, c.D), tensor_map(c.U, c.U), flatten(alpha_inv, {2, 2}));
  out.legwise = std::move(alpha);
  return finish(std::move(out), "radford_double");
}

OqaCandidate evaluate(const OqaCandidate& c, EvalContext& ctx) {
  OqaCandidate out = make_oqa(c.name, ctx.algebra(c.H), ctx.tensor(c.r), ctx.linear_map(c.D), ctx.linear_map(c.U));
  if (c.r_inv) out.r_inv = ctx.tensor(*c.r_inv);
  if (c.legwise) out.legwise = ctx.tensor(*c.legwise);
  return out;
}

}  // namespace oqa
