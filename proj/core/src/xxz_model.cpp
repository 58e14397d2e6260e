#include "biham/xxz_model.hpp"

#include <cmath>
#include <string>

#include "biham/error.hpp"

namespace biham {

namespace {

// Coordinate indices in the uv-chart.
constexpr int U1 = 0, V1 = 1, Z1 = 2, U2 = 3, V2 = 4, Z2 = 5;

// f = 1/2 x^T S x for a constant symmetric S.
ScalarField quadratic_form(const Mat& s) {
  ScalarField f;
  f.chart = Chart::UV;
  f.dim = 6;
  f.value = [s](const Vec& x) { return cplx(0.5 * (x.transpose() * s * x)(0, 0)); };
  f.grad = [s](const Vec& x) -> Vec { return s * x; };
  f.hess = [s](const Vec&) { return s; };
  return f;
}

void sym(Mat& s, int i, int j, cplx v) {
  s(i, j) += v;
  if (i != j) s(j, i) += v;
}

// Hessians of the building blocks.
Mat hess_h0() {
  Mat s = Mat::Zero(6, 6);
  sym(s, U1, V1, 1.0);
  sym(s, U2, V2, 1.0);
  sym(s, Z1, Z1, 2.0);
  sym(s, Z2, Z2, 2.0);
  return s;
}

Mat hess_c2() {
  Mat s = Mat::Zero(6, 6);
  sym(s, U2, V2, 1.0);
  sym(s, Z2, Z2, 2.0);
  sym(s, U1, V1, -1.0);
  sym(s, Z1, Z1, -2.0);
  return s;
}

// u2 v1 + v2 u1
Mat hess_cross() {
  Mat s = Mat::Zero(6, 6);
  sym(s, U2, V1, 1.0);
  sym(s, V2, U1, 1.0);
  return s;
}

// z1 z2
Mat hess_zz() {
  Mat s = Mat::Zero(6, 6);
  sym(s, Z1, Z2, 1.0);
  return s;
}

// z1^2 + z2^2 - u1 v1 - u2 v2
Mat hess_w() {
  Mat s = Mat::Zero(6, 6);
  sym(s, Z1, Z1, 2.0);
  sym(s, Z2, Z2, 2.0);
  sym(s, U1, V1, -1.0);
  sym(s, U2, V2, -1.0);
  return s;
}

// (z1 - z2)^2
Mat hess_dz() {
  Mat s = Mat::Zero(6, 6);
  sym(s, Z1, Z1, 2.0);
  sym(s, Z2, Z2, 2.0);
  sym(s, Z1, Z2, -2.0);
  return s;
}

Mat p1_uv_matrix(const Vec& x) {
  Mat p = Mat::Zero(6, 6);
  auto block = [&](int o, cplx u, cplx v, cplx z, double sign) {
    p(o + 0, o + 1) = sign * 2.0 * z;
    p(o + 0, o + 2) = -sign * u;
    p(o + 1, o + 2) = sign * v;
  };
  block(0, x(U1), x(V1), x(Z1), 1.0);
  block(3, x(U2), x(V2), x(Z2), -1.0);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < r; ++c) p(r, c) = -p(c, r);
  return p;
}

Mat delta_matrix(const Vec& x, double mu2, double mu3) {
  const cplx u1 = x(U1), v1 = x(V1), z1 = x(Z1), u2 = x(U2), v2 = x(V2), z2 = x(Z2);
  Mat d = Mat::Zero(6, 6);
  // mu2 part
  d(0, 1) += mu2 * 2.0 * z2;
  d(0, 5) += mu2 * u1;
  d(1, 5) += mu2 * -v1;
  d(2, 3) += mu2 * u2;
  d(2, 4) += mu2 * -v2;
  d(3, 4) += mu2 * -2.0 * z1;
  // mu3 part
  d(0, 2) += mu3 * -u2;
  d(0, 4) += mu3 * 2.0 * (z2 - z1);
  d(0, 5) += mu3 * -u2;
  d(1, 2) += mu3 * v2;
  d(1, 3) += mu3 * 2.0 * (z1 - z2);
  d(1, 5) += mu3 * v2;
  d(2, 3) += mu3 * -u1;
  d(2, 4) += mu3 * v1;
  d(3, 5) += mu3 * u1;
  d(4, 5) += mu3 * -v1;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < r; ++c) d(r, c) = -d(c, r);
  return d;
}

}  // namespace

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::None:
      return "none";
    case Mutation::QWedgeSign:
      return "q_wedge_sign";
    case Mutation::H2LastTermSign:
      return "h2_last_term_sign";
    case Mutation::NStarEntrySign:
      return "nstar_entry_sign";
  }
  return "none";
}

Mutation mutation_from_string(std::string_view s) {
  for (Mutation m : {Mutation::None, Mutation::QWedgeSign, Mutation::H2LastTermSign,
                     Mutation::NStarEntrySign})
    if (to_string(m) == s) return m;
  fail(ErrorKind::InvalidArgument, "unknown mutation '" + std::string(s) + "'");
}

void SymmetricParams::validate() const {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu3))
    fail(ErrorKind::InvalidArgument, "parameters must be finite");
  if (std::abs(mu1 + mu2) < kEpsDegenerate)
    fail(ErrorKind::Degenerate, "degenerate constant eigenvalue");
  if (std::abs(mu3) < kEpsDegenerate) fail(ErrorKind::Degenerate, "degenerate mu3");
}

void require_nondegenerate_u(cplx u1, cplx u2) {
  if (std::abs(u1) < kEpsDegenerate || std::abs(u2) < kEpsDegenerate)
    fail(ErrorKind::Degenerate, "degenerate point");
}

UVObservables uv_observables(const SymmetricParams& p) {
  const double mu1 = p.mu1, mu2 = p.mu2, mu3 = p.mu3;
  const double last = p.mutation == Mutation::H2LastTermSign ? 2.0 * mu3 * mu3
                                                             : -2.0 * mu3 * mu3;
  UVObservables o;
  o.h0 = quadratic_form(hess_h0());
  o.c2 = quadratic_form(hess_c2());
  o.h1 = quadratic_form(-2.0 * mu3 * hess_cross() - 4.0 * mu2 * hess_zz() -
                        2.0 * mu1 * hess_h0());
  o.h2 = quadratic_form(mu1 * mu1 * hess_h0() + 4.0 * mu1 * mu2 * hess_zz() +
                        2.0 * mu3 * (mu1 + mu2) * hess_cross() + mu2 * mu2 * hess_w() +
                        last * hess_dz());
  return o;
}

UVObservableValues uv_observables(const SymmetricParams& params, const Point& pt) {
  if (pt.chart != Chart::UV) fail(ErrorKind::ChartMismatch, "chart mismatch");
  const UVObservables o = uv_observables(params);
  return {o.h0(pt), o.c2(pt), o.h1(pt), o.h2(pt)};
}

BivectorField p1_uv() { return linear_bivector(Chart::UV, 6, p1_uv_matrix); }

BivectorField p2_uv(const SymmetricParams& params) {
  const double mu1 = params.mu1, mu2 = params.mu2, mu3 = params.mu3;
  return linear_bivector(Chart::UV, 6, [mu1, mu2, mu3](const Vec& x) -> Mat {
    return mu1 * p1_uv_matrix(x) + delta_matrix(x, mu2, mu3);
  });
}

cplx uv_tensor_factor() { return cplx(0.0, 1.0 / std::sqrt(2.0)); }

VectorField x1_field(const SymmetricParams& params) {
  const double mu2 = params.mu2, mu3 = params.mu3;
  VectorField f;
  f.chart = Chart::UV;
  f.dim = 6;
  f.value = [mu2, mu3](const Vec& x) {
    const cplx u1 = x(U1), v1 = x(V1), z1 = x(Z1), u2 = x(U2), v2 = x(V2), z2 = x(Z2);
    Vec out(6);
    out(U1) = 4.0 * (mu2 * u1 * z2 - mu3 * u2 * z1);
    out(V1) = -4.0 * (mu2 * v1 * z2 - mu3 * v2 * z1);
    out(U2) = -4.0 * (mu2 * u2 * z1 - mu3 * u1 * z2);
    out(V2) = 4.0 * (mu2 * v2 * z1 - mu3 * v1 * z2);
    out(Z1) = 2.0 * mu3 * (u2 * v1 - u1 * v2);
    out(Z2) = out(Z1);
    return out;
  };
  f.jac = [mu2, mu3](const Vec& x) {
    const cplx u1 = x(U1), v1 = x(V1), z1 = x(Z1), u2 = x(U2), v2 = x(V2), z2 = x(Z2);
    Mat j = Mat::Zero(6, 6);
    j(U1, U1) = 4.0 * mu2 * z2;
    j(U1, Z2) = 4.0 * mu2 * u1;
    j(U1, U2) = -4.0 * mu3 * z1;
    j(U1, Z1) = -4.0 * mu3 * u2;

    j(V1, V1) = -4.0 * mu2 * z2;
    j(V1, Z2) = -4.0 * mu2 * v1;
    j(V1, V2) = 4.0 * mu3 * z1;
    j(V1, Z1) = 4.0 * mu3 * v2;

    j(U2, U2) = -4.0 * mu2 * z1;
    j(U2, Z1) = -4.0 * mu2 * u2;
    j(U2, U1) = 4.0 * mu3 * z2;
    j(U2, Z2) = 4.0 * mu3 * u1;

    j(V2, V2) = 4.0 * mu2 * z1;
    j(V2, Z1) = 4.0 * mu2 * v2;
    j(V2, V1) = -4.0 * mu3 * z2;
    j(V2, Z2) = -4.0 * mu3 * v1;

    for (int row : {Z1, Z2}) {
      j(row, U2) = 2.0 * mu3 * v1;
      j(row, V1) = 2.0 * mu3 * u2;
      j(row, U1) = -2.0 * mu3 * v2;
      j(row, V2) = -2.0 * mu3 * u1;
    }
    return j;
  };
  return f;
}

VectorField z_field() {
  VectorField f;
  f.chart = Chart::UV;
  f.dim = 6;
  f.value = [](const Vec& x) {
    require_nondegenerate_u(x(U1), x(U2));
    Vec out = Vec::Zero(6);
    out(V1) = 1.0 / (2.0 * x(U1));
    out(V2) = 1.0 / (2.0 * x(U2));
    return out;
  };
  f.jac = [](const Vec& x) {
    require_nondegenerate_u(x(U1), x(U2));
    Mat j = Mat::Zero(6, 6);
    j(V1, U1) = -1.0 / (2.0 * x(U1) * x(U1));
    j(V2, U2) = -1.0 / (2.0 * x(U2) * x(U2));
    return j;
  };
  return f;
}

BivectorField q_uv(const SymmetricParams& params) {
  const double sign = params.mutation == Mutation::QWedgeSign ? 1.0 : -1.0;
  return sum(p2_uv(params), wedge_field(x1_field(params), z_field()), sign);
}

ScalarField gz_polynomial(const SymmetricParams& params, cplx rho) {
  const UVObservables o = uv_observables(params);
  return linear_combination({{rho * rho, o.h0}, {rho, o.h1}, {1.0, o.h2}});
}

ScalarField char_poly_uv(const SymmetricParams& params, cplx lambda, cplx rho) {
  const UVObservables o = uv_observables(params);
  cplx p4 = 1.0;
  for (double js : params.model().jsq()) p4 *= (js - rho);
  const cplx l2 = lambda * lambda;
  return linear_combination({{l2 * l2 * p4, constant_scalar(Chart::UV, 6, 1.0)},
                             {l2, gz_polynomial(params, rho)},
                             {0.25, product(o.c2, o.c2)}});
}

Residual stackel_condition(const SymmetricParams& params, cplx lambda, cplx rho,
                           const Point& pt) {
  return lie_scalar2_residual(z_field(), char_poly_uv(params, lambda, rho), pt);
}

}  // namespace biham
