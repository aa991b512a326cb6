#include "oqa/hopf.hpp"

#include "oqa/error.hpp"

namespace oqa {

namespace {

using Sides = std::pair<TensorElement, TensorElement>;

// One verdict for an identity that must hold on every basis element; the
// first failing element is named in the detail.
template <typename Fn>
void check_each(CheckReport& report, const std::string& axiom, const Algebra& A, Fn&& sides) {
  for (std::uint32_t i = 0; i < A.dim(); ++i) {
    Sides s = sides(i);
    if (!same_legs(s.first.legs(), s.second.legs())) {
      report.add_fail(axiom, "sides live in different tensor products on basis element " + A.basis[i]);
      return;
    }
    if (auto d = first_difference(s.first, s.second)) {
      report.add({axiom, false, Witness{s.first.labels(d->index), d->lhs, d->rhs},
                  "on basis element " + A.basis[i]});
      return;
    }
  }
  report.add_pass(axiom);
}

TensorElement vector_tensor(const AlgebraPtr& A, const SparseVec& v) {
  return TensorElement::from_element(Element(A, v));
}

TensorElement delta_of(const HopfAlgebra& h, const SparseVec& v) {
  TensorElement out({h.A, h.A});
  for (const auto& [i, c] : v) out = out + h.delta[i].scaled(c);
  return out;
}

Scalar counit_of(const HopfAlgebra& h, const SparseVec& v) {
  Scalar out;
  for (const auto& [i, c] : v) out += c * h.counit[i];
  return out;
}

SparseVec basis_vec(std::uint32_t i) { return {{i, Scalar(1)}}; }

// m(S⊗id)Δ(e_i) or m(id⊗S)Δ(e_i).
SparseVec convolve_antipode(const HopfAlgebra& h, std::uint32_t i, bool left) {
  SparseVec out;
  for (const auto& [idx, c] : h.delta[i].terms()) {
    SparseVec a = left ? h.antipode.image(idx[0]) : basis_vec(idx[0]);
    SparseVec b = left ? basis_vec(idx[1]) : h.antipode.image(idx[1]);
    out = sparse_add(out, sparse_scale(multiply(*h.A, a, b), c));
  }
  return out;
}

void require_pass(const CheckReport& report, const std::string& what) {
  if (!report.passed()) throw_uncertified(what, report);
}

HopfAlgebra finish(HopfAlgebra h, const std::string& what) {
  CheckReport report = check_hopf(h);
  if (!report.passed())
    throw Error("ConstructionFailed", what + " produced a non-Hopf algebra: " + format_result(*report.first_failure()));
  h.certified = true;
  return h;
}

}  // namespace

HopfAlgebra make_hopf(std::string name, AlgebraPtr A, std::vector<TensorElement> delta, std::vector<Scalar> counit,
                      AlgebraMap antipode) {
  if (delta.size() != A->dim() || counit.size() != A->dim())
    throw Error("ShapeMismatch", "coproduct and counit need one entry per basis element");
  for (const auto& d : delta)
    if (!same_legs(d.legs(), {A, A})) throw Error("ShapeMismatch", "coproduct values must lie in A⊗A");
  if (!same_algebra(antipode.source(), A) || !same_algebra(antipode.target(), A))
    throw Error("ShapeMismatch", "antipode must be an endomorphism of A");
  return HopfAlgebra{std::move(name), std::move(A), std::move(delta), std::move(counit), std::move(antipode),
                     std::nullopt, false};
}

TensorElement apply_coproduct(const HopfAlgebra& h, const TensorElement& t, std::size_t leg) {
  if (leg >= t.arity() || !same_algebra(t.legs()[leg], h.A)) throw Error("ShapeMismatch", "coproduct leg mismatch");
  std::vector<AlgebraPtr> legs = t.legs();
  legs.insert(legs.begin() + static_cast<std::ptrdiff_t>(leg) + 1, h.A);
  TensorElement out(legs);
  for (const auto& [idx, c] : t.terms())
    for (const auto& [d, dc] : h.delta[idx[leg]].terms()) {
      MultiIndex j = idx;
      j[leg] = d[0];
      j.insert(j.begin() + static_cast<std::ptrdiff_t>(leg) + 1, d[1]);
      out.add_term(j, c * dc);
    }
  return out;
}

TensorElement apply_counit(const HopfAlgebra& h, const TensorElement& t, std::size_t leg) {
  if (leg >= t.arity() || !same_algebra(t.legs()[leg], h.A)) throw Error("ShapeMismatch", "counit leg mismatch");
  std::vector<AlgebraPtr> legs = t.legs();
  legs.erase(legs.begin() + static_cast<std::ptrdiff_t>(leg));
  TensorElement out(legs);
  for (const auto& [idx, c] : t.terms()) {
    MultiIndex j = idx;
    j.erase(j.begin() + static_cast<std::ptrdiff_t>(leg));
    out.add_term(j, c * h.counit[idx[leg]]);
  }
  return out;
}

CheckReport check_hopf(const HopfAlgebra& h, const ReportSink& sink) {
  CheckReport report(h.name, sink);
  const Algebra& A = *h.A;
  const auto dim = static_cast<std::uint32_t>(A.dim());

  check_each(report, "coassociativity", A, [&](std::uint32_t i) {
    return Sides{apply_coproduct(h, h.delta[i], 0), apply_coproduct(h, h.delta[i], 1)};
  });
  check_each(report, "counit-left", A, [&](std::uint32_t i) {
    return Sides{apply_counit(h, h.delta[i], 0), vector_tensor(h.A, basis_vec(i))};
  });
  check_each(report, "counit-right", A, [&](std::uint32_t i) {
    return Sides{apply_counit(h, h.delta[i], 1), vector_tensor(h.A, basis_vec(i))};
  });
  report.add_equality("coproduct-unital", delta_of(h, A.unit), TensorElement::unit({h.A, h.A}));
  check_each(report, "coproduct-multiplicative", A, [&](std::uint32_t i) {
    for (std::uint32_t j = 0; j < dim; ++j) {
      TensorElement lhs = delta_of(h, A.product(i, j));
      TensorElement rhs = tensor_multiply(h.delta[i], h.delta[j]);
      if (!(lhs == rhs)) return Sides{lhs, rhs};
    }
    return Sides{h.delta[i], h.delta[i]};
  });
  counit_of(h, A.unit) == Scalar(1) ? report.add_pass("counit-unital")
                                    : report.add_fail("counit-unital", "ε(1) = " + counit_of(h, A.unit).to_string());
  {
    std::string bad;
    for (std::uint32_t i = 0; i < dim && bad.empty(); ++i)
      for (std::uint32_t j = 0; j < dim && bad.empty(); ++j)
        if (!(counit_of(h, A.product(i, j)) == h.counit[i] * h.counit[j]))
          bad = "ε(" + A.basis[i] + "·" + A.basis[j] + ") ≠ ε(" + A.basis[i] + ")ε(" + A.basis[j] + ")";
    bad.empty() ? report.add_pass("counit-multiplicative") : report.add_fail("counit-multiplicative", bad);
  }
  for (bool left : {true, false})
    check_each(report, left ? "antipode-left" : "antipode-right", A, [&](std::uint32_t i) {
      return Sides{vector_tensor(h.A, convolve_antipode(h, i, left)),
                   vector_tensor(h.A, sparse_scale(A.unit, h.counit[i]))};
    });
  bool bijective = h.antipode_inverse.has_value() || invert_linear(h.antipode).has_value();
  bijective ? report.add_pass("antipode-bijective") : report.add_fail("antipode-bijective", "S is singular");
  return report;
}

HopfAlgebra certify(HopfAlgebra h) {
  if (h.certified) return h;
  CheckReport report = check_hopf(h);
  require_pass(report, "Hopf algebra '" + h.name + "'");
  if (!h.antipode_inverse) h.antipode_inverse = invert_linear(h.antipode);
  h.certified = true;
  return h;
}

void require_certified(const HopfAlgebra& h) {
  if (!h.certified) (void)certify(h);
}

AlgebraMap antipode_inverse(const HopfAlgebra& h) {
  if (h.antipode_inverse) return *h.antipode_inverse;
  auto inv = invert_linear(h.antipode);
  if (!inv) throw Error("Singular", "antipode of '" + h.name + "' is not invertible");
  return *inv;
}

AlgebraMap antipode_inverse_square(const HopfAlgebra& h) {
  AlgebraMap s = antipode_inverse(h);
  AlgebraMap sq = compose(s, s);
  return make_map(sq.source(), sq.target(), sq.images(), true);
}

CheckReport check_quasitriangular(const HopfAlgebra& h, const TensorElement& p, const ReportSink& sink) {
  CheckReport report(h.name, sink);
  if (!same_legs(p.legs(), {h.A, h.A})) {
    report.add_fail("R-shape", "the R-matrix must lie in A⊗A");
    return report;
  }
  verified_inverse(p, std::nullopt) ? report.add_pass("R-invertible")
                                    : report.add_fail("R-invertible", "no inverse in A⊗A");
  const std::vector<AlgebraPtr> legs(3, h.A);
  report.add_equality("coproduct-first-leg", apply_coproduct(h, p, 0),
                      ordered_product(legs, {{p, {0, 2}}, {p, {1, 2}}}));
  report.add_equality("coproduct-second-leg", apply_coproduct(h, p, 1),
                      ordered_product(legs, {{p, {0, 2}}, {p, {0, 1}}}));
  check_each(report, "cocommutation", *h.A, [&](std::uint32_t i) {
    return Sides{tensor_multiply(flip(h.delta[i]), p), tensor_multiply(p, h.delta[i])};
  });
  auto one = TensorElement::unit({h.A});
  report.add_equality("counit-first-leg", apply_counit(h, p, 0), one);
  report.add_equality("counit-second-leg", apply_counit(h, p, 1), one);
  return report;
}

CheckReport check_weak_rmatrix(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r,
                               const ReportSink& sink) {
  CheckReport report(h.name + "," + hp.name, sink);
  if (!same_legs(r.legs(), {h.A, hp.A})) {
    report.add_fail("r-shape", "r must lie in H⊗H'");
    return report;
  }
  auto R = verified_inverse(r, std::nullopt);
  R ? report.add_pass("r-invertible") : report.add_fail("r-invertible", "no inverse in H⊗H'");
  report.add_equality("coproduct-first-leg", apply_coproduct(h, r, 0),
                      ordered_product({h.A, h.A, hp.A}, {{r, {0, 2}}, {r, {1, 2}}}));
  report.add_equality("coproduct-second-leg", apply_coproduct(hp, r, 1),
                      ordered_product({h.A, hp.A, hp.A}, {{r, {0, 2}}, {r, {0, 1}}}));
  if (report.passed()) {
    AlgebraMap sp_inv = antipode_inverse(hp);
    report.add_equality("inverse-via-antipode", apply_maps(r, {&h.antipode, nullptr}), *R);
    report.add_equality("inverse-via-antipode-inverse", apply_maps(r, {nullptr, &sp_inv}), *R);
    report.add_equality("antipode-invariance", apply_maps(r, {&h.antipode, &hp.antipode}), r);
  }
  return report;
}

OqaCandidate qt_to_oqa(const HopfAlgebra& h, const TensorElement& p) {
  require_certified(h);
  require_pass(check_quasitriangular(h, p), "quasitriangular pair on '" + h.name + "'");
  OqaCandidate c = make_oqa("qt(" + h.name + ")", h.A, p, identity_map(h.A), antipode_inverse_square(h));
  return certify(std::move(c));
}

HopfAlgebra bicrossed_coproduct(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r) {
  require_certified(h);
  require_certified(hp);
  require_pass(check_weak_rmatrix(h, hp, r), "weak R-matrix of (" + h.name + ", " + hp.name + ")");
  TensorElement R = *verified_inverse(r, std::nullopt);
  TensorElement rt = flip(r);
  TensorElement Rt = flip(R);
  AlgebraPtr T = tensor_algebra(h.A, hp.A);
  const std::vector<AlgebraPtr> legs{h.A, hp.A, h.A, hp.A};
  std::vector<TensorElement> delta;
  std::vector<Scalar> counit;
  std::vector<SparseVec> s_images;
  for (std::uint32_t a = 0; a < h.A->dim(); ++a)
    for (std::uint32_t b = 0; b < hp.A->dim(); ++b) {
      TensorElement d = ordered_product(
          legs, {{rt, {1, 2}}, {h.delta[a], {0, 2}}, {hp.delta[b], {1, 3}}, {Rt, {1, 2}}});
      delta.push_back(flatten(d, {2, 2}));
      counit.push_back(h.counit[a] * hp.counit[b]);
      TensorElement sab = outer_product(vector_tensor(h.A, h.antipode.image(a)),
                                        vector_tensor(hp.A, hp.antipode.image(b)));
      TensorElement conj = ordered_product({h.A, hp.A}, {{R, {0, 1}}, {sab, {0, 1}}, {r, {0, 1}}});
      s_images.push_back(flatten(conj, {2}).to_element().coeffs());
    }
  HopfAlgebra out = make_hopf(h.name + "⋈" + hp.name, T, std::move(delta), std::move(counit),
                              AlgebraMap(T, T, std::move(s_images)));
  return finish(std::move(out), "bicrossed_coproduct");
}

TensorElement bracket(const TensorElement& p, const TensorElement& pp, const TensorElement& r) {
  TensorElement R = *verified_inverse(r, std::nullopt);
  const AlgebraPtr& H = p.legs()[0];
  const AlgebraPtr& Hp = pp.legs()[0];
  TensorElement alpha =
      ordered_product({H, Hp, H, Hp}, {{r, {0, 3}}, {p, {0, 2}}, {pp, {1, 3}}, {flip(R), {1, 2}}});
  return flatten(alpha, {2, 2});
}

std::pair<HopfAlgebra, TensorElement> qt_bicrossed(const HopfAlgebra& h, const HopfAlgebra& hp,
                                                   const TensorElement& p, const TensorElement& pp,
                                                   const TensorElement& r) {
  require_certified(h);
  require_certified(hp);
  require_pass(check_quasitriangular(h, p), "quasitriangular pair on '" + h.name + "'");
  require_pass(check_quasitriangular(hp, pp), "quasitriangular pair on '" + hp.name + "'");
  HopfAlgebra b = bicrossed_coproduct(h, hp, r);
  TensorElement br = bracket(p, pp, r);
  CheckReport qt = check_quasitriangular(b, br);
  if (!qt.passed())
    throw Error("ConstructionFailed", "[p, p'] is not quasitriangular: " + format_result(*qt.first_failure()));
  return {std::move(b), std::move(br)};
}

Nonuple hopf_nonuple(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& p, const TensorElement& pp,
                     const TensorElement& r) {
  return Nonuple{"hopf(" + h.name + "," + hp.name + ")",
                 h.A,
                 hp.A,
                 p,
                 pp,
                 r,
                 identity_map(h.A),
                 antipode_inverse_square(h),
                 identity_map(hp.A),
                 antipode_inverse_square(hp),
                 std::nullopt,
                 std::nullopt,
                 std::nullopt,
                 false};
}

CheckReport check_bicrossed_antipode(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& r,
                                     const ReportSink& sink) {
  HopfAlgebra b = bicrossed_coproduct(h, hp, r);
  CheckReport report(b.name, sink);
  auto sbar_inv = invert_linear(b.antipode);
  if (!sbar_inv) {
    report.add_fail("antipode-inverse-conjugate-form", "bicrossed antipode is singular");
    return report;
  }
  TensorElement R = *verified_inverse(r, std::nullopt);
  AlgebraMap s_inv = antipode_inverse(h);
  AlgebraMap sp_inv = antipode_inverse(hp);
  const std::uint32_t db = static_cast<std::uint32_t>(hp.A->dim());
  auto image = [&](const AlgebraMap& f, std::uint32_t k) { return vector_tensor(b.A, f.image(k)); };

  check_each(report, "antipode-inverse-conjugate-form", *b.A, [&](std::uint32_t k) {
    TensorElement s = outer_product(vector_tensor(h.A, s_inv.image(k / db)), vector_tensor(hp.A, sp_inv.image(k % db)));
    TensorElement conj = ordered_product({h.A, hp.A}, {{R, {0, 1}}, {s, {0, 1}}, {r, {0, 1}}});
    return Sides{image(*sbar_inv, k), flatten(conj, {2})};
  });
  check_each(report, "antipode-inverse-twisted-form", *b.A, [&](std::uint32_t k) {
    TensorElement e = unflatten(vector_tensor(b.A, basis_vec(k)), {2});
    TensorElement twisted = ordered_product({h.A, hp.A}, {{r, {0, 1}}, {e, {0, 1}}, {R, {0, 1}}});
    return Sides{image(*sbar_inv, k), flatten(apply_maps(twisted, {&s_inv, &sp_inv}), {2})};
  });
  AlgebraMap sbar_inv2 = compose(*sbar_inv, *sbar_inv);
  AlgebraMap factorwise = tensor_map(antipode_inverse_square(h), antipode_inverse_square(hp));
  check_each(report, "antipode-inverse-square", *b.A,
             [&](std::uint32_t k) { return Sides{image(sbar_inv2, k), image(factorwise, k)}; });
  return report;
}

OqaCandidate cor39_oqa(const HopfAlgebra& h, const HopfAlgebra& hp, const TensorElement& p, const TensorElement& pp,
                       const TensorElement& r) {
  require_certified(h);
  require_certified(hp);
  require_pass(check_quasitriangular(h, p), "quasitriangular pair on '" + h.name + "'");
  require_pass(check_quasitriangular(hp, pp), "quasitriangular pair on '" + hp.name + "'");
  Nonuple n = certify(hopf_nonuple(h, hp, p, pp, r));
  require_pass(check_bicrossed_antipode(h, hp, r), "bicrossed antipode of (" + h.name + ", " + hp.name + ")");
  OqaCandidate out = build_thm36(n);
  out.name = "cor39(" + h.name + "," + hp.name + ")";
  return out;
}

HopfAlgebra evaluate(const HopfAlgebra& h, EvalContext& ctx) {
  std::vector<TensorElement> delta;
  for (const auto& d : h.delta) delta.push_back(ctx.tensor(d));
  std::vector<Scalar> counit;
  for (const auto& c : h.counit) counit.push_back(ctx.scalar(c));
  return make_hopf(h.name, ctx.algebra(h.A), std::move(delta), std::move(counit), ctx.linear_map(h.antipode));
}

}  // namespace oqa
