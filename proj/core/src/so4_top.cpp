#include "biham/so4_top.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biham/error.hpp"

namespace biham {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
const cplx kI{0.0, 1.0};

void require_chart(const Point& pt, Chart chart) {
  if (pt.chart != chart) fail(ErrorKind::ChartMismatch, "chart mismatch");
  if (pt.dim() != chart_dim(chart)) fail(ErrorKind::DimensionMismatch, "dimension mismatch");
}

// The printed 6x6 matrices, with the four (possibly distinct) row scalings.
// With j = (1, 1, 1, 1) this is the so(4) Lie-Poisson tensor.
Mat lie_poisson_matrix(const Vec& m, const std::array<double, 4>& j) {
  const cplx m12 = m(0), m13 = m(1), m14 = m(2), m23 = m(3), m24 = m(4), m34 = m(5);
  const double j1 = j[0], j2 = j[1], j3 = j[2], j4 = j[3];
  Mat p = Mat::Zero(6, 6);
  p(0, 1) = -j1 * m23;
  p(0, 2) = -j1 * m24;
  p(0, 3) = j2 * m13;
  p(0, 4) = j2 * m14;
  p(1, 2) = -j1 * m34;
  p(1, 3) = -j3 * m12;
  p(1, 5) = j3 * m14;
  p(2, 4) = -j4 * m12;
  p(2, 5) = -j4 * m13;
  p(3, 4) = -j2 * m34;
  p(3, 5) = j3 * m24;
  p(4, 5) = -j4 * m23;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < r; ++c) p(r, c) = -p(c, r);
  return p;
}

// Index of the complementary pair {l, k} for pair (i, j).
std::array<int, 2> complement(int pair) {
  const auto [i, j] = kPairs[static_cast<std::size_t>(pair)];
  std::array<int, 2> out{};
  int n = 0;
  for (int k = 0; k < 4; ++k)
    if (k != i && k != j) out[static_cast<std::size_t>(n++)] = k;
  return out;
}

ScalarField diagonal_quadratic(const std::array<double, 6>& w) {
  // f = sum w_k m_k^2
  ScalarField f;
  f.chart = Chart::M;
  f.dim = 6;
  f.value = [w](const Vec& m) {
    cplx s = 0.0;
    for (int k = 0; k < 6; ++k) s += w[static_cast<std::size_t>(k)] * m(k) * m(k);
    return s;
  };
  f.grad = [w](const Vec& m) {
    Vec g(6);
    for (int k = 0; k < 6; ++k) g(k) = 2.0 * w[static_cast<std::size_t>(k)] * m(k);
    return g;
  };
  f.hess = [w](const Vec&) {
    Mat h = Mat::Zero(6, 6);
    for (int k = 0; k < 6; ++k) h(k, k) = 2.0 * w[static_cast<std::size_t>(k)];
    return h;
  };
  return f;
}

Mat compose_ms() {
  const double s = 1.0 / kSqrt2;
  Mat a = Mat::Zero(6, 6);
  // x1, y1, z1, x2, y2, z2 from m12, m13, m14, m23, m24, m34
  a(0, 0) = s;  a(0, 5) = -s;
  a(1, 1) = s;  a(1, 4) = s;
  a(2, 2) = s;  a(2, 3) = -s;
  a(3, 0) = s;  a(3, 5) = s;
  a(4, 1) = s;  a(4, 4) = -s;
  a(5, 2) = s;  a(5, 3) = s;
  return a;
}

Mat compose_su() {
  Mat a = Mat::Zero(6, 6);
  for (int b = 0; b < 2; ++b) {
    const int o = 3 * b;
    a(o + 0, o + 0) = 1.0;
    a(o + 0, o + 1) = kI;
    a(o + 1, o + 0) = 1.0;
    a(o + 1, o + 1) = -kI;
    a(o + 2, o + 2) = 1.0;
  }
  return a;
}

Mat compose_us() {
  Mat a = Mat::Zero(6, 6);
  for (int b = 0; b < 2; ++b) {
    const int o = 3 * b;
    a(o + 0, o + 0) = 0.5;
    a(o + 0, o + 1) = 0.5;
    a(o + 1, o + 0) = -0.5 * kI;
    a(o + 1, o + 1) = 0.5 * kI;
    a(o + 2, o + 2) = 1.0;
  }
  return a;
}

Mat4 commutator(const Mat4& a, const Mat4& b) { return a * b - b * a; }

Residual matrix_residual(const Mat4& lhs, const Mat4& rhs, double scale) {
  return {(lhs - rhs).cwiseAbs().maxCoeff(), scale};
}

}  // namespace

// -- ModelParams --------------------------------------------------------------------

ModelParams ModelParams::from_mu(double mu1, double mu2, double mu3, double mu4) {
  ModelParams p;
  p.mu_ = {mu1, mu2, mu3, mu4};
  p.jsq_ = {mu1 - mu2 - mu3 - mu4, mu1 + mu2 + mu3 - mu4, mu1 + mu2 - mu3 + mu4,
            mu1 - mu2 + mu3 + mu4};
  return p;
}

ModelParams ModelParams::symmetric(double mu1, double mu2, double mu3) {
  return from_mu(mu1, mu2, mu3, mu3);
}

ModelParams ModelParams::from_jsq(const std::array<double, 4>& jsq) {
  // Inverse of the affine map in from_mu.
  const double s = jsq[0] + jsq[1] + jsq[2] + jsq[3];
  const double mu1 = s / 4.0;
  const double mu2 = (-jsq[0] + jsq[1] + jsq[2] - jsq[3]) / 4.0;
  const double mu3 = (-jsq[0] + jsq[1] - jsq[2] + jsq[3]) / 4.0;
  const double mu4 = (-jsq[0] - jsq[1] + jsq[2] + jsq[3]) / 4.0;
  ModelParams p;
  p.mu_ = {mu1, mu2, mu3, mu4};
  p.jsq_ = jsq;
  return p;
}

bool ModelParams::has_real_moments() const {
  return std::all_of(jsq_.begin(), jsq_.end(), [](double v) { return v > 0.0; });
}

std::array<double, 4> ModelParams::j() const {
  if (!has_real_moments())
    fail(ErrorKind::Degenerate, "moments J_i are not real and positive");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = std::sqrt(jsq_[i]);
  return out;
}

double ModelParams::a(int pair) const {
  const auto [l, k] = complement(pair);
  return jsq_[static_cast<std::size_t>(l)] + jsq_[static_cast<std::size_t>(k)];
}

double ModelParams::b(int pair) const {
  const auto [l, k] = complement(pair);
  return jsq_[static_cast<std::size_t>(l)] * jsq_[static_cast<std::size_t>(k)];
}

// -- tensors ---------------------------------------------------------------------------

BivectorField p1_m() {
  return linear_bivector(Chart::M, 6, [](const Vec& m) {
    return lie_poisson_matrix(m, {1.0, 1.0, 1.0, 1.0});
  });
}

BivectorField p2_m(const ModelParams& params) {
  const auto j = params.jsq();
  return linear_bivector(Chart::M, 6, [j](const Vec& m) { return lie_poisson_matrix(m, j); });
}

Mat p1_m(const Point& pt) {
  require_chart(pt, Chart::M);
  return lie_poisson_matrix(pt.x, {1.0, 1.0, 1.0, 1.0});
}

Mat p2_m(const ModelParams& params, const Point& pt) {
  require_chart(pt, Chart::M);
  return lie_poisson_matrix(pt.x, params.jsq());
}

// -- observables ------------------------------------------------------------------------

MObservables observables_m(const ModelParams& params) {
  MObservables o;
  o.h0 = diagonal_quadratic({1, 1, 1, 1, 1, 1});
  std::array<double, 6> wa{}, wb{}, wh1{};
  for (int k = 0; k < 6; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    wa[uk] = 0.5 * params.a(k);
    wb[uk] = params.b(k);
    wh1[uk] = -params.a(k);
  }
  o.he = diagonal_quadratic(wa);
  o.ke = diagonal_quadratic(wb);
  o.h1 = diagonal_quadratic(wh1);
  o.h2 = o.ke;

  o.c.chart = Chart::M;
  o.c.dim = 6;
  o.c.value = [](const Vec& m) { return m(0) * m(5) + m(2) * m(3) - m(1) * m(4); };
  o.c.grad = [](const Vec& m) {
    Vec g(6);
    g << m(5), -m(4), m(3), m(2), -m(1), m(0);
    return g;
  };
  o.c.hess = [](const Vec&) {
    Mat h = Mat::Zero(6, 6);
    h(0, 5) = h(5, 0) = 1.0;
    h(2, 3) = h(3, 2) = 1.0;
    h(1, 4) = h(4, 1) = -1.0;
    return h;
  };
  return o;
}

MObservableValues observables_m(const ModelParams& params, const Point& pt) {
  require_chart(pt, Chart::M);
  const MObservables o = observables_m(params);
  return {o.h0.value(pt.x), o.c.value(pt.x), o.he.value(pt.x), o.ke.value(pt.x)};
}

cplx he_split(const ModelParams& params, const Point& s) {
  require_chart(s, Chart::Split);
  const auto& mu = params.mu();
  const Vec& x = s.x;
  return 2.0 * mu[3] * x(0) * x(3) + 2.0 * mu[2] * x(1) * x(4) + 2.0 * mu[1] * x(2) * x(5) +
         mu[0] * x.cwiseProduct(x).sum();
}

// -- Lax matrix ---------------------------------------------------------------------------

Mat4 m_matrix(const Point& pt) {
  require_chart(pt, Chart::M);
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[static_cast<std::size_t>(k)];
    m(i, j) = pt.x(k);
    m(j, i) = -pt.x(k);
  }
  return m;
}

Mat4 lax(const ModelParams& params, cplx lambda, const Point& pt) {
  Mat4 l = m_matrix(pt);
  for (int i = 0; i < 4; ++i) l(i, i) += lambda * params.jsq()[static_cast<std::size_t>(i)];
  return l;
}

Accumulator det4_expansion(const Mat4& A) {
  Accumulator acc;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    cplx term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (int r = 0; r < 4; ++r) term *= A(r, perm[static_cast<std::size_t>(r)]);
    acc.add(term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

cplx char_poly_closed_form(const ModelParams& params, cplx lambda, cplx rho, const Point& pt) {
  const MObservableValues o = observables_m(params, pt);
  cplx p4 = 1.0;
  for (double js : params.jsq()) p4 *= (js - rho);
  const cplx l2 = lambda * lambda;
  return l2 * l2 * p4 + l2 * (rho * rho * o.h0 - 2.0 * rho * o.he + o.ke) + o.c * o.c;
}

Residual char_poly_residual(const ModelParams& params, cplx lambda, cplx rho, const Point& pt) {
  Mat4 l = lax(params, lambda, pt);
  for (int i = 0; i < 4; ++i) l(i, i) -= rho * lambda;
  Accumulator acc = det4_expansion(l);

  const MObservableValues o = observables_m(params, pt);
  cplx p4 = 1.0;
  for (double js : params.jsq()) p4 *= (js - rho);
  const cplx l2 = lambda * lambda;
  acc.sub(l2 * l2 * p4);
  acc.sub(l2 * rho * rho * o.h0);
  acc.sub(-2.0 * l2 * rho * o.he);
  acc.sub(l2 * o.ke);
  acc.sub(o.c * o.c);
  return acc.residual();
}

// -- Lenard chain -----------------------------------------------------------------------------

Residual chain_residual(const Mat& Pa, const Vec& dF, const Mat& Pb, const Vec& dG) {
  Residual worst;
  for (int i = 0; i < Pa.rows(); ++i) {
    Accumulator acc;
    for (int j = 0; j < Pa.cols(); ++j) {
      acc.add(Pa(i, j) * dF(j));
      if (Pb.size() != 0) acc.sub(Pb(i, j) * dG(j));
    }
    worst.absorb(acc.residual());
  }
  return worst;
}

Residual LenardResiduals::worst() const {
  Residual w;
  for (const auto& r : chain) w.absorb(r);
  for (const auto& r : casimir) w.absorb(r);
  return w;
}

LenardResiduals lenard_residuals_m(const ModelParams& params, const Point& pt) {
  require_chart(pt, Chart::M);
  const MObservables o = observables_m(params);
  const Mat p1 = p1_m(pt);
  const Mat p2 = p2_m(params, pt);
  const Vec d0 = o.h0.grad(pt.x);
  const Vec d1 = o.h1.grad(pt.x);
  const Vec d2 = o.h2.grad(pt.x);
  const Vec dc = o.c.grad(pt.x);
  const Mat none;
  LenardResiduals r;
  r.chain[0] = chain_residual(p1, d0, none, Vec());
  r.chain[1] = chain_residual(p2, d0, p1, d1);
  r.chain[2] = chain_residual(p2, d1, p1, d2);
  r.chain[3] = chain_residual(p2, d2, none, Vec());
  r.casimir[0] = chain_residual(p1, dc, none, Vec());
  r.casimir[1] = chain_residual(p2, dc, none, Vec());
  return r;
}

// -- Lax equation ---------------------------------------------------------------------------

int LaxCheck::sign(double tol) const {
  if (plus.normalized() <= tol) return +1;
  if (minus.normalized() <= tol) return -1;
  return 0;
}

Vec rigid_body_flow(const ModelParams& params, const Point& pt) {
  require_chart(pt, Chart::M);
  const auto j = params.j();
  Vec grad(6);
  for (int k = 0; k < 6; ++k) {
    const auto [a, b] = kPairs[static_cast<std::size_t>(k)];
    grad(k) = pt.x(k) / (j[static_cast<std::size_t>(a)] + j[static_cast<std::size_t>(b)]);
  }
  return p1_m(pt) * grad;
}

LaxCheck lax_flow_check(const ModelParams& params, LaxFlavor flavor, cplx lambda,
                        const Point& pt) {
  require_chart(pt, Chart::M);
  const Mat4 l = lax(params, lambda, pt);
  Mat4 b = Mat4::Zero();
  Vec mdot;
  if (flavor == LaxFlavor::RigidBody) {
    const auto j = params.j();
    for (int k = 0; k < 6; ++k) {
      const auto [r, c] = kPairs[static_cast<std::size_t>(k)];
      const cplx omega =
          pt.x(k) / (j[static_cast<std::size_t>(r)] + j[static_cast<std::size_t>(c)]);
      b(r, c) = omega;
      b(c, r) = -omega;
    }
    for (int i = 0; i < 4; ++i) b(i, i) = lambda * j[static_cast<std::size_t>(i)];
    mdot = rigid_body_flow(params, pt);
  } else {
    const auto& js = params.jsq();
    const double s = std::accumulate(js.begin(), js.end(), 0.0);
    for (int k = 0; k < 6; ++k) {
      const auto [r, c] = kPairs[static_cast<std::size_t>(k)];
      b(r, c) = params.a(k) * pt.x(k);
      b(c, r) = -b(r, c);
    }
    for (int i = 0; i < 4; ++i) {
      const double jsq = js[static_cast<std::size_t>(i)];
      b(i, i) = lambda * (s * jsq - jsq * jsq);
    }
    mdot = p1_m(pt) * observables_m(params).he.grad(pt.x);
  }
  Point rate = pt;
  rate.x = mdot;
  const Mat4 ldot = m_matrix(rate);
  const Mat4 comm = commutator(l, b);
  const double scale = std::max({ldot.cwiseAbs().maxCoeff(), (l * b).cwiseAbs().maxCoeff(),
                                 (b * l).cwiseAbs().maxCoeff()});
  return {matrix_residual(ldot, comm, scale), matrix_residual(ldot, Mat4(-comm), scale)};
}

SpanFit rigid_body_hamiltonian_span(const ModelParams& params) {
  const auto j = params.j();
  Eigen::Matrix<double, 6, 3> a;
  Eigen::Matrix<double, 6, 1> c;
  for (int k = 0; k < 6; ++k) {
    const auto [r, s] = kPairs[static_cast<std::size_t>(k)];
    a(k, 0) = 1.0;
    a(k, 1) = params.a(k);
    a(k, 2) = params.b(k);
    c(k) = 1.0 / (j[static_cast<std::size_t>(r)] + j[static_cast<std::size_t>(s)]);
  }
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(c);
  SpanFit fit;
  fit.coeffs = {x(0), x(1), x(2)};
  fit.defect = (a * x - c).cwiseAbs().maxCoeff() / (1.0 + c.cwiseAbs().maxCoeff());
  return fit;
}

// -- charts ------------------------------------------------------------------------------------

Mat chart_matrix(Chart from, Chart to) {
  if (from == Chart::Leaf || to == Chart::Leaf)
    fail(ErrorKind::ChartMismatch, "chart mismatch: leaf chart is not linear");
  static const Mat ms = compose_ms();
  static const Mat sm = ms.transpose();
  static const Mat su = compose_su();
  static const Mat us = compose_us();
  auto to_split = [&](Chart c) -> Mat {
    switch (c) {
      case Chart::M:
        return ms;
      case Chart::UV:
        return us;
      default:
        return Mat::Identity(6, 6);
    }
  };
  auto from_split = [&](Chart c) -> Mat {
    switch (c) {
      case Chart::M:
        return sm;
      case Chart::UV:
        return su;
      default:
        return Mat::Identity(6, 6);
    }
  };
  if (from == to) return Mat::Identity(6, 6);
  return from_split(to) * to_split(from);
}

Point chart_map(const Point& pt, Chart target, bool allow_complex) {
  require_chart(pt, pt.chart);
  if (pt.chart == Chart::Leaf || target == Chart::Leaf)
    fail(ErrorKind::ChartMismatch, "chart mismatch: leaf chart is not linear");
  Point out;
  out.chart = target;
  out.x = chart_matrix(pt.chart, target) * pt.x;
  if (target == Chart::UV) {
    out.kind = pt.kind;
    return out;
  }
  const double imag = out.x.imag().cwiseAbs().maxCoeff();
  const bool real = imag <= 1e-12 * (1.0 + out.x.cwiseAbs().maxCoeff());
  if (!real && !allow_complex) fail(ErrorKind::NonReal, "non-real point");
  out.kind = real ? ScalarKind::Real : ScalarKind::Complex;
  if (real) out.x = out.x.real().cast<cplx>();
  return out;
}

Mat transport_bivector(const Mat& P, Chart from, Chart to) {
  const Mat a = chart_matrix(from, to);
  return a * P * a.transpose();
}

}  // namespace biham
