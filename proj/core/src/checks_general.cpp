// Checks valid for any (mu1, mu2, mu3, mu4): the m-chart model.

#include <cmath>

#include "biham/dynamics.hpp"
#include "checks.hpp"

namespace biham::detail {

Point random_complex_point(Sampler& s, Chart chart) {
  std::array<cplx, 6> c{};
  for (auto& v : c) v = s.complex();
  return make_point(chart, c);
}

Point random_real_m(Sampler& s) {
  std::array<cplx, 6> c{};
  for (auto& v : c) v = s.real();
  return make_point(Chart::M, c, ScalarKind::Real);
}

namespace {

CheckOutcome schouten_pair(const CheckContext& ctx, const BivectorField& p,
                           const BivectorField& q) {
  Sampler s(ctx.seed);
  return over_points(ctx.n, [&](int, CheckOutcome& out) {
    out.take(schouten_residual(p, q, random_complex_point(s, Chart::M)));
  });
}

void add(std::vector<CheckDef>& out, std::string name, double tol,
         std::function<CheckOutcome(const CheckContext&)> run,
         Normalization norm = Normalization::Relative) {
  CheckDef d;
  d.name = std::move(name);
  d.tolerance = tol;
  d.normalization = norm;
  d.run = std::move(run);
  out.push_back(std::move(d));
}

}  // namespace

void register_general_checks(std::vector<CheckDef>& out) {
  add(out, "m.antisymmetry", 1e-14, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const BivectorField p1 = p1_m(), p2 = p2_m(ctx.model);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point pt = random_complex_point(s, Chart::M);
      o.take(std::max(antisymmetry_defect(p1(pt)), antisymmetry_defect(p2(pt))));
    });
  }, Normalization::Absolute);

  add(out, "m.jacobi_p1", 1e-11,
      [](const CheckContext& ctx) { return schouten_pair(ctx, p1_m(), p1_m()); });
  add(out, "m.jacobi_p2", 1e-11, [](const CheckContext& ctx) {
    return schouten_pair(ctx, p2_m(ctx.model), p2_m(ctx.model));
  });
  add(out, "m.compat_p1_p2", 1e-11,
      [](const CheckContext& ctx) { return schouten_pair(ctx, p1_m(), p2_m(ctx.model)); });

  add(out, "m.pencil", 1e-11, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const BivectorField pencil = sum(p1_m(), p2_m(ctx.model), s.complex() * 3.0);
      o.take(schouten_residual(pencil, pencil, random_complex_point(s, Chart::M)));
    });
  });

  add(out, "m.schouten_symmetry", 1e-13, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const BivectorField p1 = p1_m(), p2 = p2_m(ctx.model);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point pt = random_complex_point(s, Chart::M);
      o.take(std::abs(schouten_residual(p1, p2, pt).value -
                      schouten_residual(p2, p1, pt).value));
    });
  }, Normalization::Absolute);

  add(out, "m.bracket_algebra", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const MObservables ob = observables_m(ctx.model);
    const BivectorField p2 = p2_m(ctx.model);
    // Non-commuting test functions: f = m12, g = HE, h = m13.
    const ScalarField f = coordinate(Chart::M, 6, 0), h = coordinate(Chart::M, 6, 1);
    const ScalarField& g = ob.he;
    const ScalarField gh = product(g, h);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point pt = random_complex_point(s, Chart::M);
      const Residual fg = bracket_residual(p2, f, g, pt);
      const cplx a = bracket(p2, f, g, pt), b = bracket(p2, g, f, pt);
      o.take(Residual{std::abs(a + b), fg.scale});
      // Leibniz rule {f, g h} = g {f, h} + h {f, g}; the scale covers the
      // summands inside each bracket.
      const Residual lhs = bracket_residual(p2, f, gh, pt);
      const Residual fh = bracket_residual(p2, f, h, pt);
      const cplx gv = g(pt), hv = h(pt);
      Accumulator acc;
      acc.add(bracket(p2, f, gh, pt));
      acc.sub(gv * bracket(p2, f, h, pt));
      acc.sub(hv * a);
      o.take(Residual{std::abs(acc.sum()),
                      std::max({acc.scale(), lhs.scale, std::abs(gv) * fh.scale,
                                std::abs(hv) * fg.scale})});
    });
  });

  add(out, "m.lenard_chain", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const LenardResiduals r = lenard_residuals_m(ctx.model, random_complex_point(s, Chart::M));
      for (const auto& c : r.chain) o.max_residual = std::max(o.max_residual, c.normalized());
      ++o.evaluated;
    });
  });

  add(out, "m.lenard_casimirs", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const LenardResiduals r = lenard_residuals_m(ctx.model, random_complex_point(s, Chart::M));
      o.take(std::max(r.casimir[0].normalized(), r.casimir[1].normalized()));
    });
  });

  add(out, "m.char_poly", 1e-10, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const cplx lambda = 2.0 * s.complex(), rho = 2.0 * s.complex();
      o.take(char_poly_residual(ctx.model, lambda, rho, random_complex_point(s, Chart::M)));
    });
  });

  add(out, "m.chart_round_trip", 1e-14, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point m = random_real_m(s);
      const Point back = chart_map(
          chart_map(chart_map(chart_map(m, Chart::Split), Chart::UV), Chart::Split), Chart::M);
      o.take(Residual{max_abs(Vec(back.x - m.x)), max_abs(m.x)});
    });
  });

  add(out, "m.he_split", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const MObservables ob = observables_m(ctx.model);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point m = random_real_m(s);
      const cplx he = ob.he(m);
      o.take(Residual{std::abs(he - he_split(ctx.model, chart_map(m, Chart::Split))),
                      std::abs(he)});
    });
  });

  add(out, "m.lax_euler_he", 1e-9, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    int plus = 0, minus = 0;
    CheckOutcome r = over_points(ctx.n, [&](int, CheckOutcome& o) {
      const LaxCheck c = lax_flow_check(ctx.model, LaxFlavor::EulerHE, 2.0 * s.complex(),
                                        random_complex_point(s, Chart::M));
      plus += c.sign(1e-9) == 1;
      minus += c.sign(1e-9) == -1;
      o.take(std::min(c.plus.normalized(), c.minus.normalized()));
    });
    r.diag("sign_plus_count", plus);
    r.diag("sign_minus_count", minus);
    return r;
  });

  add(out, "m.lax_rigid_body", 1e-9, [](const CheckContext& ctx) {
    if (!ctx.model.has_real_moments()) {
      CheckOutcome o;
      o.force_skip = true;
      o.note = "requires J_i^2 > 0 (real J_i + J_j)";
      return o;
    }
    Sampler s(ctx.seed);
    int plus = 0, minus = 0;
    CheckOutcome r = over_points(ctx.n, [&](int, CheckOutcome& o) {
      const LaxCheck c = lax_flow_check(ctx.model, LaxFlavor::RigidBody, 2.0 * s.complex(),
                                        random_real_m(s));
      plus += c.sign(1e-9) == 1;
      minus += c.sign(1e-9) == -1;
      o.take(std::min(c.plus.normalized(), c.minus.normalized()));
    });
    const SpanFit fit = rigid_body_hamiltonian_span(ctx.model);
    r.max_residual = std::max(r.max_residual, fit.defect);
    r.diag("sign_plus_count", plus);
    r.diag("sign_minus_count", minus);
    r.diag("span_defect", fit.defect);
    return r;
  });

  add(out, "m.euler_rhs", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const MObservables ob = observables_m(ctx.model);
    const BivectorField p1 = p1_m();
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point m = random_real_m(s);
      const Vec rhs = euler_rhs(ctx.model, m);
      const Vec ham = ham_field(p1, ob.he, m);
      o.take(Residual{max_abs(Vec(rhs - ham)), max_abs(ham)});
      const Vec rhs1 = euler_rhs(ctx.model, m, FlowKind::H1);
      o.take(Residual{max_abs(Vec(rhs1 + 2.0 * rhs)), max_abs(rhs1)});
      // Casimirs are conserved by the flow
      for (const ScalarField* c : {&ob.h0, &ob.c}) {
        Accumulator acc;
        const Vec g = c->grad(m.x);
        for (int k = 0; k < 6; ++k) acc.add(g(k) * rhs(k));
        o.take(acc.residual());
      }
    });
  });

  add(out, "m.fd_derivatives", 1e-6, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    const MObservables ob = observables_m(ctx.model);
    const BivectorField p1 = p1_m(), p2 = p2_m(ctx.model);
    return over_points(ctx.n, [&](int, CheckOutcome& o) {
      const Point pt = random_complex_point(s, Chart::M);
      for (const ScalarField* f : {&ob.h0, &ob.c, &ob.he, &ob.ke}) {
        o.max_residual = std::max(o.max_residual, fd_gradient_error(*f, pt));
        o.max_residual = std::max(o.max_residual, fd_hessian_error(*f, pt));
      }
      o.take(std::max(fd_jacobian_error(p1, pt), fd_jacobian_error(p2, pt)));
    });
  });
}

}  // namespace biham::detail
