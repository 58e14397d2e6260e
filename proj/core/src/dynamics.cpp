#include "biham/dynamics.hpp"

#include <cmath>

#include "biham/error.hpp"

namespace biham {

namespace {

struct Weights {
  std::array<double, 6> a{};  // HE = 1/2 sum a_k m_k^2
  std::array<double, 6> b{};  // KE = sum b_k m_k^2
  std::array<double, 6> zeta{};  // zeta1 as a linear form in m
};

Weights weights(const ModelParams& params) {
  Weights w;
  for (int k = 0; k < 6; ++k) {
    w.a[static_cast<std::size_t>(k)] = params.a(k);
    w.b[static_cast<std::size_t>(k)] = params.b(k);
  }
  const Mat ms = chart_matrix(Chart::M, Chart::Split);
  for (int k = 0; k < 6; ++k) w.zeta[static_cast<std::size_t>(k)] = (ms(5, k) - ms(2, k)).real();
  return w;
}

// Real so(4) Lie-Poisson tensor applied to the covector g.
RealState p1_apply(const RealState& m, const RealState& g) {
  const double m12 = m[0], m13 = m[1], m14 = m[2], m23 = m[3], m24 = m[4], m34 = m[5];
  double p[6][6] = {};
  p[0][1] = -m23;
  p[0][2] = -m24;
  p[0][3] = m13;
  p[0][4] = m14;
  p[1][2] = -m34;
  p[1][3] = -m12;
  p[1][5] = m14;
  p[2][4] = -m12;
  p[2][5] = -m13;
  p[3][4] = -m34;
  p[3][5] = m24;
  p[4][5] = -m23;
  RealState out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double pij = i < j ? p[i][j] : -p[j][i];
      out[static_cast<std::size_t>(i)] += pij * g[static_cast<std::size_t>(j)];
    }
  return out;
}

RealState rhs(const Weights& w, const RealState& m, FlowKind which) {
  RealState g{};
  const double factor = which == FlowKind::H1 ? -2.0 : 1.0;
  for (std::size_t k = 0; k < 6; ++k) g[k] = factor * w.a[k] * m[k];
  return p1_apply(m, g);
}

RealState axpy(const RealState& x, double h, const RealState& y) {
  RealState out;
  for (std::size_t k = 0; k < 6; ++k) out[k] = x[k] + h * y[k];
  return out;
}

RealState rk4_step(const Weights& w, const RealState& m, double h, FlowKind flow) {
  const RealState k1 = rhs(w, m, flow);
  const RealState k2 = rhs(w, axpy(m, 0.5 * h, k1), flow);
  const RealState k3 = rhs(w, axpy(m, 0.5 * h, k2), flow);
  const RealState k4 = rhs(w, axpy(m, h, k3), flow);
  RealState out;
  for (std::size_t k = 0; k < 6; ++k)
    out[k] = m[k] + h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  return out;
}

Invariants invariants_w(const Weights& w, const RealState& m) {
  Invariants inv{};
  for (std::size_t k = 0; k < 6; ++k) {
    inv[0] += m[k] * m[k];
    inv[2] += 0.5 * w.a[k] * m[k] * m[k];
    inv[3] += w.b[k] * m[k] * m[k];
    inv[4] += w.zeta[k] * m[k];
  }
  inv[1] = m[0] * m[5] + m[2] * m[3] - m[1] * m[4];
  return inv;
}

bool finite(const RealState& m) {
  for (double v : m)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

RealState euler_rhs(const ModelParams& params, const RealState& m, FlowKind which) {
  return rhs(weights(params), m, which);
}

Vec euler_rhs(const ModelParams& params, const Point& pt, FlowKind which) {
  if (pt.chart != Chart::M) fail(ErrorKind::ChartMismatch, "chart mismatch");
  RealState m{};
  for (int k = 0; k < 6; ++k) {
    if (std::abs(pt.x(k).imag()) > 0.0) fail(ErrorKind::NonReal, "non-real point");
    m[static_cast<std::size_t>(k)] = pt.x(k).real();
  }
  const RealState r = euler_rhs(params, m, which);
  Vec out(6);
  for (int k = 0; k < 6; ++k) out(k) = r[static_cast<std::size_t>(k)];
  return out;
}

Invariants invariants(const ModelParams& params, const RealState& m) {
  return invariants_w(weights(params), m);
}

Trajectory integrate(const ModelParams& params, const RealState& m0,
                     const IntegrateOptions& options) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt))
    fail(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(options.t_end > 0.0) || !std::isfinite(options.t_end))
    fail(ErrorKind::InvalidArgument, "t_end must be positive");
  if (options.record_every < 1) fail(ErrorKind::InvalidArgument, "record_every must be >= 1");
  if (!finite(m0)) fail(ErrorKind::InvalidArgument, "initial state must be finite");

  const Weights w = weights(params);
  const long steps = std::max(1L, static_cast<long>(std::ceil(options.t_end / options.dt - 1e-9)));

  Trajectory tr;
  const Invariants i0 = invariants_w(w, m0);
  auto record = [&](double t, const RealState& m, const Invariants& inv) {
    tr.times.push_back(t);
    tr.states.push_back(m);
    tr.invariant_series.push_back(inv);
  };
  record(0.0, m0, i0);

  RealState m = m0;
  for (long n = 1; n <= steps; ++n) {
    const double t_prev = static_cast<double>(n - 1) * options.dt;
    const double t = n == steps ? options.t_end : static_cast<double>(n) * options.dt;
    m = rk4_step(w, m, t - t_prev, options.flow);
    if (!finite(m)) {
      tr.aborted = true;
      break;
    }
    const Invariants inv = invariants_w(w, m);
    for (int k = 0; k < kNumInvariants; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const double dev = std::abs(inv[kk] - i0[kk]);
      const double d = i0[kk] != 0.0 ? dev / std::abs(i0[kk]) : dev;
      tr.drift[kk] = std::max(tr.drift[kk], d);
    }
    if (n % options.record_every == 0 || n == steps) record(t, m, inv);
  }
  return tr;
}

RealState integrate_steps(const ModelParams& params, const RealState& m0, double dt, long steps,
                          FlowKind flow) {
  const Weights w = weights(params);
  RealState m = m0;
  for (long n = 0; n < steps; ++n) m = rk4_step(w, m, dt, flow);
  return m;
}

}  // namespace biham
