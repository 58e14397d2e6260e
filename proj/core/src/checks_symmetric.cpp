// Checks of the rotationally symmetric model (mu4 = mu3): uv-chart tensors,
// the deformed structure Q, the leaf, DN coordinates and separation relations.

#include <cmath>
#include <limits>

#include "checks.hpp"

namespace biham::detail {

namespace {

std::vector<Point> uv_points(const CheckContext& ctx, CheckOutcome* diag = nullptr) {
  const SampleSet set = sample_points(SampleKind::UVComplex, ctx.n, ctx.seed, &*ctx.sym);
  if (diag != nullptr) diag->diag("resamples", static_cast<double>(set.resamples));
  return set.points;
}

std::vector<LeafChart> leaves(const CheckContext& ctx, CheckOutcome* diag = nullptr) {
  const SampleSet set = sample_points(SampleKind::Leaf, ctx.n, ctx.seed, &*ctx.sym);
  if (diag != nullptr) diag->diag("resamples", static_cast<double>(set.resamples));
  return set.leaves;
}

template <class Body>
CheckOutcome over_uv(const CheckContext& ctx, Body&& body) {
  const auto pts = uv_points(ctx);
  CheckOutcome r = over_points(ctx.n, [&](int i, CheckOutcome& o) {
    body(pts[static_cast<std::size_t>(i)], o);
  });
  return r;
}

template <class Body>
CheckOutcome over_leaves(const CheckContext& ctx, Body&& body) {
  const auto ls = leaves(ctx);
  return over_points(ctx.n, [&](int i, CheckOutcome& o) {
    body(ls[static_cast<std::size_t>(i)], o);
  });
}

Residual vec_residual(const Vec& a, const Vec& b) {
  return {max_abs(Vec(a - b)), std::max(max_abs(a), max_abs(b))};
}

Residual mat_residual(const Mat& a, const Mat& b) {
  return {max_abs(Mat(a - b)), std::max(max_abs(a), max_abs(b))};
}

Residual scalar_residual(cplx a, cplx b) {
  return {std::abs(a - b), std::max(std::abs(a), std::abs(b))};
}

void add(std::vector<CheckDef>& out, std::string name, double tol,
         std::function<CheckOutcome(const CheckContext&)> run, bool diagnostic = false,
         Normalization norm = Normalization::Relative) {
  CheckDef d;
  d.name = std::move(name);
  d.tolerance = tol;
  d.normalization = norm;
  d.scope = Scope::Symmetric;
  d.diagnostic = diagnostic;
  d.run = std::move(run);
  out.push_back(std::move(d));
}

CheckOutcome schouten_uv(const CheckContext& ctx, const BivectorField& p,
                         const BivectorField& q) {
  return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
    o.take(schouten_residual(p, q, pt));
  });
}

}  // namespace

void register_symmetric_checks(std::vector<CheckDef>& out) {
  // -- uv-chart tensors --------------------------------------------------------------------
  add(out, "uv.antisymmetry", 1e-14, [](const CheckContext& ctx) {
    const BivectorField p1 = p1_uv(), p2 = p2_uv(*ctx.sym), q = q_uv(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      o.take(std::max({antisymmetry_defect(p1(pt)), antisymmetry_defect(p2(pt)),
                       antisymmetry_defect(q(pt))}));
    });
  }, false, Normalization::Absolute);

  add(out, "uv.jacobi_p1", 1e-11,
      [](const CheckContext& ctx) { return schouten_uv(ctx, p1_uv(), p1_uv()); });
  add(out, "uv.jacobi_p2", 1e-11, [](const CheckContext& ctx) {
    return schouten_uv(ctx, p2_uv(*ctx.sym), p2_uv(*ctx.sym));
  });
  add(out, "uv.jacobi_q", 1e-11, [](const CheckContext& ctx) {
    return schouten_uv(ctx, q_uv(*ctx.sym), q_uv(*ctx.sym));
  });
  add(out, "uv.compat_p1_p2", 1e-11,
      [](const CheckContext& ctx) { return schouten_uv(ctx, p1_uv(), p2_uv(*ctx.sym)); });
  add(out, "uv.compat_p1_q", 1e-11,
      [](const CheckContext& ctx) { return schouten_uv(ctx, p1_uv(), q_uv(*ctx.sym)); });

  add(out, "uv.tensor_transport", 1e-12, [](const CheckContext& ctx) {
    const cplx f = uv_tensor_factor();
    const BivectorField p1 = p1_uv(), p2 = p2_uv(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Point m = chart_map(pt, Chart::M, true);
      o.take(mat_residual(p1(pt), f * transport_bivector(p1_m(m), Chart::M, Chart::UV)));
      o.max_residual = std::max(
          o.max_residual,
          mat_residual(p2(pt), f * transport_bivector(p2_m(ctx.model, m), Chart::M, Chart::UV))
              .normalized());
    });
  });

  add(out, "uv.observable_transport", 1e-12, [](const CheckContext& ctx) {
    const MObservables mo = observables_m(ctx.model);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Point m = chart_map(pt, Chart::M, true);
      const UVObservableValues h = uv_observables(*ctx.sym, pt);
      Residual r = scalar_residual(h.h0, mo.h0(m));
      r.absorb(scalar_residual(h.c2, 2.0 * mo.c(m)));
      r.absorb(scalar_residual(h.h1, -2.0 * mo.he(m)));
      r.absorb(scalar_residual(h.h2, mo.ke(m)));
      o.take(r);
    });
  });

  add(out, "uv.euler_field", 1e-12, [](const CheckContext& ctx) {
    const UVObservables ob = uv_observables(*ctx.sym);
    const VectorField x1 = x1_field(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Vec x = x1(pt);
      o.take(vec_residual(x, ham_field(p1_uv(), ob.h1, pt)));
      // zeta1 = z2 - z1 is conserved by X1
      o.take(Residual{std::abs(x(5) - x(2)), std::abs(x(2))});
    });
  });

  add(out, "uv.involution", 1e-11, [](const CheckContext& ctx) {
    const UVObservables ob = uv_observables(*ctx.sym);
    const BivectorField p1 = p1_uv(), q = q_uv(*ctx.sym);
    const ScalarField zeta1 = linear_combination(
        {{1.0, coordinate(Chart::UV, 6, 5)}, {-1.0, coordinate(Chart::UV, 6, 2)}});
    const std::array<const ScalarField*, 3> h{&ob.h0, &ob.h1, &ob.h2};
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      Residual r;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
          r.absorb(bracket_residual(p1, *h[i], *h[j], pt));
          r.absorb(bracket_residual(q, *h[i], *h[j], pt));
        }
      r.absorb(bracket_residual(p1, zeta1, ob.h1, pt));
      r.absorb(bracket_residual(p1, zeta1, ob.h2, pt));
      o.take(r);
    });
  });

  add(out, "uv.q_casimirs", 1e-12, [](const CheckContext& ctx) {
    const UVObservables ob = uv_observables(*ctx.sym);
    const BivectorField q = q_uv(*ctx.sym);
    double h1_min = std::numeric_limits<double>::infinity();
    CheckOutcome r = over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Mat qm = q(pt);
      o.take(chain_residual(qm, ob.h0.grad(pt.x), Mat(), Vec()));
      o.max_residual = std::max(o.max_residual,
                                chain_residual(qm, ob.c2.grad(pt.x), Mat(), Vec()).normalized());
      h1_min = std::min(h1_min, chain_residual(qm, ob.h1.grad(pt.x), Mat(), Vec()).normalized());
    });
    r.diag("h1_casimir_residual_min", h1_min);
    return r;
  });

  add(out, "uv.q_rank", 1e-10, [](const CheckContext& ctx) {
    const BivectorField q = q_uv(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Eigen::VectorXd sv = singular_values(q(pt));
      // rank 4: sv(3) well above the noise floor, sv(4), sv(5) at it
      const double floor = 1.0 + sv(0);
      o.take(sv(3) / floor > 1e-6 ? sv(4) / floor : 1.0);
    });
  });

  // -- transversal field --------------------------------------------------------------------
  add(out, "uv.transversality", 1e-12, [](const CheckContext& ctx) {
    const UVObservables ob = uv_observables(*ctx.sym);
    const VectorField z = z_field();
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Mat lp1 = lie_bivector(z, p1_uv(), pt);
      o.take(Residual{max_abs(lp1), max_abs(p1_uv()(pt))});
      o.take(scalar_residual(lie_scalar(z, ob.h0, pt), 1.0));
      o.take(Residual{std::abs(lie_scalar(z, ob.c2, pt)), max_abs(ob.c2.grad(pt.x))});
    });
  });

  add(out, "uv.lz_p2_rank", 1e-12, [](const CheckContext& ctx) {
    const VectorField z = z_field();
    const BivectorField p2 = p2_uv(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const Mat l = lie_bivector(z, p2, pt);
      const Eigen::VectorXd sv = singular_values(l);
      const double rank_defect = sv(2) / (1.0 + sv(0));
      o.take(std::max(rank_defect, column_space_defect(l, z(pt), 1e-10)));
    });
  });

  add(out, "uv.stackel", 1e-9, [](const CheckContext& ctx) {
    Sampler s(ctx.seed ^ 0x5157u);
    double first_min = std::numeric_limits<double>::infinity();
    CheckOutcome r = over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const cplx lambda = 2.0 * s.complex(), rho = 2.0 * s.complex();
      o.take(stackel_condition(*ctx.sym, lambda, rho, pt));
      const ScalarField cp = char_poly_uv(*ctx.sym, lambda, rho);
      first_min = std::min(first_min, std::abs(lie_scalar(z_field(), cp, pt)));
    });
    r.diag("first_lie_derivative_min_abs", first_min);
    return r;
  });

  add(out, "uv.fd_derivatives", 1e-6, [](const CheckContext& ctx) {
    const UVObservables ob = uv_observables(*ctx.sym);
    const VectorField x1 = x1_field(*ctx.sym), z = z_field();
    const BivectorField p1 = p1_uv(), p2 = p2_uv(*ctx.sym), q = q_uv(*ctx.sym);
    return over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      double e = 0.0;
      for (const ScalarField* f : {&ob.h0, &ob.c2, &ob.h1, &ob.h2})
        e = std::max({e, fd_gradient_error(*f, pt), fd_hessian_error(*f, pt)});
      e = std::max({e, fd_jacobian_error(x1, pt), fd_jacobian_error(z, pt),
                    fd_jacobian_error(p1, pt), fd_jacobian_error(p2, pt),
                    fd_jacobian_error(q, pt)});
      o.take(e);
    });
  });

  // -- leaf ------------------------------------------------------------------------------
  add(out, "leaf.embedding", 1e-13, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const Point x = embed(l);
      const UVObservableValues h = uv_observables(*ctx.sym, x);
      Residual r = scalar_residual(h.h0, l.h0);
      r.absorb(scalar_residual(h.c2, l.c2));
      const LeafChart back = project(x);
      for (int k = 0; k < 4; ++k)
        r.absorb(scalar_residual(back.coords[static_cast<std::size_t>(k)],
                                 l.coords[static_cast<std::size_t>(k)]));
      o.take(r);
    });
  });

  add(out, "leaf.restricted_tensors", 1e-11, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const RestrictedTensors closed = restricted_tensors(*ctx.sym, l);
      const RestrictedTensors oracle = restricted_tensors_from_uv(*ctx.sym, l);
      Residual r = mat_residual(closed.p, oracle.p);
      r.absorb(mat_residual(closed.q, oracle.q));
      o.take(r);
    });
  });

  add(out, "leaf.nijenhuis_closed_form", 1e-12, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      o.take(nijenhuis(*ctx.sym, l).closed_form_match);
    });
  });

  add(out, "leaf.nijenhuis_spectrum", 1e-9, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const NijenhuisResult n = nijenhuis(*ctx.sym, l);
      o.take(std::max(n.spectrum_defect,
                      std::abs(n.lambda1 - ctx.sym->lambda1())));
    });
  });

  add(out, "leaf.aux_relations", 1e-12, [](const CheckContext& ctx) {
    double printed_min = std::numeric_limits<double>::infinity();
    CheckOutcome r = over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const AuxFunctions a = aux(*ctx.sym, l);
      const SymmetricParams& p = *ctx.sym;
      const cplx lambda2 = a.p1sum - p.lambda1();
      const cplx w = (lambda2 - p.mu1 + p.mu2) / p.mu3;
      Accumulator g;
      g.add(a.G * a.G);
      g.sub(w * w);
      g.add(4.0);
      Residual res = g.residual();
      res.absorb(scalar_residual(a.F, lambda2 - p.lambda1()));
      o.take(res);
      Accumulator printed;
      printed.add(a.G * a.G);
      printed.sub(w * w);
      printed.sub(4.0);
      printed_min = std::min(printed_min, printed.residual().normalized());
    });
    r.diag("printed_g_relation_residual_min", printed_min);
    return r;
  });

  add(out, "leaf.y_field", 1e-12, [](const CheckContext& ctx) {
    const LeafFunctions f = leaf_functions(*ctx.sym);
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const Vec y = y_field_closed_form(*ctx.sym, l);
      o.take(vec_residual(y_field_from_p(*ctx.sym, l), y));
      const Vec x = l.point().x;
      auto lie = [&](const ScalarField& g) { return cplx((g.grad(x).transpose() * y)(0, 0)); };
      const AuxFunctions a = aux(*ctx.sym, l);
      // L_Y(u1 u2) = 0 since Y has no u-components
      o.take(Residual{std::abs(y(0) * l.u2() + y(2) * l.u1()), std::abs(y(1))});
      o.take(Residual{std::abs(lie(f.G)), max_abs(f.G.grad(x)) * max_abs(y)});
      o.take(scalar_residual(lie(f.L), ctx.sym->mu3 * a.G * l.u1() * l.u2() * a.F));
    });
  });

  add(out, "leaf.fd_derivatives", 1e-6, [](const CheckContext& ctx) {
    const LeafFunctions f = leaf_functions(*ctx.sym);
    const UVObservables ob = uv_observables(*ctx.sym);
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const Point pt = l.point();
      double e = 0.0;
      for (const ScalarField* g : {&f.zeta1, &f.theta1, &f.xi1, &f.lambda2, &f.xi2, &f.p1sum,
                                   &f.G, &f.F, &f.L})
        e = std::max(e, fd_gradient_error(*g, pt));
      for (const ScalarField* h : {&ob.h1, &ob.h2})
        e = std::max(e, fd_gradient_error(pull_back(*h, l.h0, l.c2), pt));
      o.take(e);
    });
  });

  // -- deformation --------------------------------------------------------------------------
  add(out, "deformation.factorization", 1e-11, [](const CheckContext& ctx) {
    Sampler s(ctx.seed ^ 0xfac7u);
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      o.take(lie_y_factorization(*ctx.sym, l, 3.0 * s.complex()));
    });
  });

  add(out, "deformation.termination", 1e-10, [](const CheckContext& ctx) {
    Sampler s(ctx.seed ^ 0x7e3au);
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      o.take(lie_y_third(*ctx.sym, l, 3.0 * s.complex()));
    });
  });

  add(out, "deformation.xi2", 1e-10, [](const CheckContext& ctx) {
    int printed_matches = 0;
    CheckOutcome r = over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const DeformationResult d = deformation_xi2(*ctx.sym, l);
      printed_matches += d.printed_sign_matches;
      o.take(d.order == 1 ? d.agreement.normalized() : 1.0);
    });
    r.diag("printed_closed_form_matches", printed_matches);
    return r;
  });

  // -- Darboux-Nijenhuis coordinates ---------------------------------------------------------
  add(out, "dn.canonical_p", 1e-10, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      o.take(max_abs(Mat(dn_brackets(*ctx.sym, l, false) - dn_canonical(*ctx.sym, l, false))));
    });
  }, false, Normalization::Absolute);

  add(out, "dn.canonical_q", 1e-10, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const Mat c = dn_canonical(*ctx.sym, l, true);
      o.take(mat_residual(dn_brackets(*ctx.sym, l, true), c));
    });
  });

  add(out, "dn.eigenforms", 1e-9, [](const CheckContext& ctx) {
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      Residual r;
      for (const Residual& e : eigenform_residuals(*ctx.sym, l)) r.absorb(e);
      o.take(r);
    });
  });

  add(out, "dn.zeta_theta", 1e-12, [](const CheckContext& ctx) {
    const LeafFunctions f = leaf_functions(*ctx.sym);
    const BivectorField p = leaf_p_field();
    return over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      o.take(bracket_residual(p, f.zeta1, f.theta1, l.point(), -2.0 * f.theta1(l.point())));
    });
  });

  // -- separation relations -------------------------------------------------------------------
  add(out, "separation.phi1", 1e-12, [](const CheckContext& ctx) {
    Sampler s(ctx.seed);
    // Hand-derived points first, then arbitrary complex points.
    std::vector<Point> pts{make_point(Chart::UV, {1.0, 1.0, 0.0, 1.0, 1.0, 0.0}),
                           make_point(Chart::UV, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0}),
                           make_point(Chart::UV, {0.0, 0.0, 1.0, 0.0, 0.0, 0.0})};
    while (static_cast<int>(pts.size()) < ctx.n) pts.push_back(random_complex_point(s, Chart::UV));
    CheckOutcome r = over_points(static_cast<int>(pts.size()), [&](int i, CheckOutcome& o) {
      o.take(separation_phi1(*ctx.sym, pts[static_cast<std::size_t>(i)]).phi1_residual);
    });
    return r;
  });

  add(out, "separation.phi2", 1e-9, [](const CheckContext& ctx) {
    double printed_min = std::numeric_limits<double>::infinity();
    CheckOutcome r = over_uv(ctx, [&](const Point& pt, CheckOutcome& o) {
      const SeparationResult sep = separation_residuals(*ctx.sym, pt);
      o.take(sep.phi2_residual);
      printed_min = std::min(printed_min, sep.phi2_printed_residual.normalized());
    });
    r.diag("printed_psi_residual_min", printed_min);
    return r;
  });

  add(out, "leaf.generalized_lenard", 1e-9, [](const CheckContext& ctx) {
    double c_vs_p1 = 0.0;
    CheckOutcome r = over_leaves(ctx, [&](const LeafChart& l, CheckOutcome& o) {
      const LenardFit fit = generalized_lenard_fit(*ctx.sym, l);
      c_vs_p1 = std::max(c_vs_p1, scalar_residual(fit.c, fit.p1sum).normalized());
      o.take(fit.residual);
    });
    r.diag("fitted_c_minus_p1sum_max", c_vs_p1);
    return r;
  }, true);
}

}  // namespace biham::detail
