#include "oqa/nonuple.hpp"

#include "oqa/error.hpp"

namespace oqa {

namespace {

struct Inverses {
  TensorElement P, Pp, R;
};

Inverses inverses_of(const Nonuple& n) {
  auto P = verified_inverse(n.p, n.P);
  auto Pp = verified_inverse(n.pp, n.Pp);
  auto R = verified_inverse(n.r, n.R);
  if (!P || !Pp || !R) throw Error("NotInvertible", "nonuple '" + n.name + "' has a non-invertible component");
  return {*P, *Pp, *R};
}

OqaCandidate finish(OqaCandidate c, const std::string& what) {
  CheckReport report = check_oqa(c);
  if (!report.passed())
    throw Error("ConstructionFailed", what + " produced a non-OQA: " + format_result(*report.first_failure()));
  c.certified = true;
  return c;
}

// α̃ and its inverse over (H, H', H, H') for weak parts r and q.
OqaCandidate assemble(const std::string& name, const Nonuple& nr, const TensorElement& q, const TensorElement& Q) {
  Inverses inv = inverses_of(nr);
  const std::vector<AlgebraPtr> legs{nr.H, nr.Hp, nr.H, nr.Hp};
  TensorElement Qt = flip(Q);
  TensorElement qt = flip(q);
  TensorElement alpha = ordered_product(legs, {{nr.r, {0, 3}}, {nr.p, {0, 2}}, {nr.pp, {1, 3}}, {Qt, {1, 2}}});
  TensorElement alpha_inv =
      ordered_product(legs, {{qt, {1, 2}}, {inv.P, {0, 2}}, {inv.Pp, {1, 3}}, {inv.R, {0, 3}}});
  OqaCandidate out = make_oqa(name, tensor_algebra(nr.H, nr.Hp), flatten(alpha, {2, 2}), tensor_map(nr.D, nr.Dp),
                              tensor_map(nr.U, nr.Up), flatten(alpha_inv, {2, 2}));
  out.legwise = std::move(alpha);
  return out;
}

bool same_map(const AlgebraMap& f, const AlgebraMap& g) { return f == g; }

}  // namespace

OqaCandidate first_oqa(const Nonuple& n) {
  return make_oqa(n.name + ":H", n.H, n.p, n.D, n.U, n.P);
}

OqaCandidate second_oqa(const Nonuple& n) {
  return make_oqa(n.name + ":H'", n.Hp, n.pp, n.Dp, n.Up, n.Pp);
}

Nonuple diagonal(const OqaCandidate& c) {
  return Nonuple{"diagonal(" + c.name + ")", c.H, c.H, c.r, c.r, c.r, c.D, c.U, c.D, c.U,
                 c.r_inv, c.r_inv, c.r_inv, false};
}

CheckReport check_nonuple(const Nonuple& n, const ReportSink& sink) {
  CheckReport report(n.name, sink);
  report.merge("H:", check_oqa(first_oqa(n)));
  report.merge("H':", check_oqa(second_oqa(n)));

  if (n.r.arity() != 2 || !same_algebra(n.r.legs()[0], n.H) || !same_algebra(n.r.legs()[1], n.Hp)) {
    report.add_fail("r-shape", "r must lie in H⊗H'");
    return report;
  }
  auto R = verified_inverse(n.r, n.R);
  R ? report.add_pass("r-invertible") : report.add_fail("r-invertible", "r has no inverse in H⊗H'");
  if (R) {
    auto pair = inverse_pair(n.r, *R, n.D, n.Up);
    auto one = TensorElement::unit({n.H, n.Hp});
    report.add_equality("r-inverse-pair-left", pair.left, one);
    report.add_equality("r-inverse-pair-right", pair.right, one);
  } else {
    report.add_fail("r-inverse-pair-left", "needs an invertible r");
    report.add_fail("r-inverse-pair-right", "needs an invertible r");
  }
  report.add_equality("r-D-invariance", apply_maps(n.r, {&n.D, &n.Dp}), n.r);
  report.add_equality("r-U-invariance", apply_maps(n.r, {&n.U, &n.Up}), n.r);

  const std::vector<AlgebraPtr> hhh{n.H, n.H, n.Hp};
  report.add_equality("braid-H-H-H'", ordered_product(hhh, {{n.p, {0, 1}}, {n.r, {0, 2}}, {n.r, {1, 2}}}),
                      ordered_product(hhh, {{n.r, {1, 2}}, {n.r, {0, 2}}, {n.p, {0, 1}}}));
  const std::vector<AlgebraPtr> hpp{n.H, n.Hp, n.Hp};
  report.add_equality("braid-H-H'-H'", ordered_product(hpp, {{n.r, {0, 1}}, {n.r, {0, 2}}, {n.pp, {1, 2}}}),
                      ordered_product(hpp, {{n.pp, {1, 2}}, {n.r, {0, 2}}, {n.r, {0, 1}}}));
  return report;
}

Nonuple certify(Nonuple n) {
  if (n.certified) return n;
  CheckReport report = check_nonuple(n);
  if (!report.passed()) throw_uncertified("nonuple '" + n.name + "'", report);
  n.certified = true;
  return n;
}

void require_certified(const Nonuple& n) {
  if (!n.certified) (void)certify(n);
}

Nonuple swap_nonuple_orientation(const Nonuple& n) {
  require_certified(n);
  Nonuple out = n;
  std::swap(out.D, out.U);
  std::swap(out.Dp, out.Up);
  out.name = "swap(" + n.name + ")";
  out.certified = false;
  return certify(std::move(out));
}

CheckReport derived_identities(const Nonuple& n, const ReportSink& sink) {
  require_certified(n);
  Inverses inv = inverses_of(n);
  TensorElement rt = flip(n.r);
  TensorElement Rt = flip(inv.R);
  CheckReport report(n.name, sink);

  const std::vector<AlgebraPtr> hhh{n.H, n.H, n.Hp};
  report.add_equality("derived-H-H-H'", ordered_product(hhh, {{n.r, {0, 2}}, {n.r, {1, 2}}}),
                      ordered_product(hhh, {{inv.P, {0, 1}}, {n.r, {1, 2}}, {n.r, {0, 2}}, {n.p, {0, 1}}}));
  const std::vector<AlgebraPtr> hpp{n.H, n.Hp, n.Hp};
  report.add_equality("derived-H-H'-H'", ordered_product(hpp, {{n.r, {0, 2}}, {n.pp, {1, 2}}}),
                      ordered_product(hpp, {{inv.R, {0, 1}}, {n.pp, {1, 2}}, {n.r, {0, 2}}, {n.r, {0, 1}}}));
  const std::vector<AlgebraPtr> phh{n.Hp, n.H, n.H};
  report.add_equality("derived-H'-H-H", ordered_product(phh, {{Rt, {0, 2}}, {n.p, {1, 2}}}),
                      ordered_product(phh, {{rt, {0, 1}}, {n.p, {1, 2}}, {Rt, {0, 2}}, {Rt, {0, 1}}}));
  const std::vector<AlgebraPtr> pph{n.Hp, n.Hp, n.H};
  report.add_equality("derived-H'-H'-H", ordered_product(pph, {{Rt, {0, 2}}, {Rt, {1, 2}}}),
                      ordered_product(pph, {{inv.Pp, {0, 1}}, {Rt, {1, 2}}, {Rt, {0, 2}}, {n.pp, {0, 1}}}));
  return report;
}

CheckReport check_pair_compat(const Nonuple& nr, const Nonuple& nq, const ReportSink& sink) {
  if (!same_algebra(nr.H, nq.H) || !same_algebra(nr.Hp, nq.Hp) || !(nr.p == nq.p) || !(nr.pp == nq.pp) ||
      !same_map(nr.D, nq.D) || !same_map(nr.U, nq.U) || !same_map(nr.Dp, nq.Dp) || !same_map(nr.Up, nq.Up))
    throw Error("ComponentMismatch", "nonuples must share H, H', p, p' and all four maps");
  require_certified(nr);
  require_certified(nq);
  Inverses inv = inverses_of(nr);
  TensorElement Q = *verified_inverse(nq.r, nq.R);
  TensorElement Qt = flip(Q);
  TensorElement qt = flip(nq.r);
  const TensorElement& r = nr.r;
  CheckReport report(nr.name + "," + nq.name, sink);

  const std::vector<AlgebraPtr> php{nr.Hp, nr.H, nr.Hp};
  report.add_equality("compat-H'-H-H'", ordered_product(php, {{Qt, {0, 1}}, {nr.pp, {0, 2}}, {r, {1, 2}}}),
                      ordered_product(php, {{r, {1, 2}}, {nr.pp, {0, 2}}, {Qt, {0, 1}}}));
  const std::vector<AlgebraPtr> hph{nr.H, nr.Hp, nr.H};
  report.add_equality("compat-H-H'-H", ordered_product(hph, {{r, {0, 1}}, {nr.p, {0, 2}}, {Qt, {1, 2}}}),
                      ordered_product(hph, {{Qt, {1, 2}}, {nr.p, {0, 2}}, {r, {0, 1}}}));
  if (report.passed()) {
    report.add_equality("compat-derived-H'-H-H'", ordered_product(php, {{nr.pp, {0, 2}}, {r, {1, 2}}}),
                        ordered_product(php, {{qt, {0, 1}}, {r, {1, 2}}, {nr.pp, {0, 2}}, {Qt, {0, 1}}}));
    report.add_equality("compat-derived-H-H'-H", ordered_product(hph, {{nr.p, {0, 2}}, {Qt, {1, 2}}}),
                        ordered_product(hph, {{inv.R, {0, 1}}, {Qt, {1, 2}}, {nr.p, {0, 2}}, {r, {0, 1}}}));
  }
  return report;
}

OqaCandidate build_thm35(const Nonuple& nr, const Nonuple& nq) {
  CheckReport compat = check_pair_compat(nr, nq);
  if (!compat.passed()) throw_uncertified("pair (" + nr.name + ", " + nq.name + ")", compat);
  TensorElement Q = *verified_inverse(nq.r, nq.R);
  return finish(assemble("thm35(" + nr.name + "," + nq.name + ")", nr, nq.r, Q), "build_thm35");
}

OqaCandidate build_thm36(const Nonuple& n) {
  require_certified(n);
  TensorElement R = *verified_inverse(n.r, n.R);
  return finish(assemble("thm36(" + n.name + ")", n, n.r, R), "build_thm36");
}

OqaCandidate build_thm37(const OqaCandidate& c) {
  require_certified(c);
  const TensorElement& p = c.r;
  TensorElement P = *verified_inverse(p, c.r_inv);
  const std::vector<AlgebraPtr> legs(4, c.H);
  TensorElement alpha = ordered_product(legs, {{p, {0, 3}}, {p, {0, 2}}, {p, {1, 3}}, {flip(P), {1, 2}}});
  TensorElement alpha_inv = ordered_product(legs, {{flip(p), {1, 2}}, {P, {0, 2}}, {P, {1, 3}}, {P, {0, 3}}});
  OqaCandidate out = make_oqa("thm37(" + c.name + ")", tensor_algebra(c.H, c.H), flatten(alpha, {2, 2}),
                              tensor_map(c.D, c.D), tensor_map(c.U, c.U), flatten(alpha_inv, {2, 2}));
  out.legwise = std::move(alpha);
  return finish(std::move(out), "build_thm37");
}

Nonuple evaluate(const Nonuple& n, EvalContext& ctx) {
  auto opt = [&](const std::optional<TensorElement>& t) -> std::optional<TensorElement> {
    if (!t) return std::nullopt;
    return ctx.tensor(*t);
  };
  return Nonuple{n.name,
                 ctx.algebra(n.H),
                 ctx.algebra(n.Hp),
                 ctx.tensor(n.p),
                 ctx.tensor(n.pp),
                 ctx.tensor(n.r),
                 ctx.linear_map(n.D),
                 ctx.linear_map(n.U),
                 ctx.linear_map(n.Dp),
                 ctx.linear_map(n.Up),
                 opt(n.P),
                 opt(n.Pp),
                 opt(n.R),
                 false};
}

}  // namespace oqa
