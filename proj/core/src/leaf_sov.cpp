#include "biham/leaf_sov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "biham/error.hpp"
#include "biham/jet.hpp"

namespace biham {

namespace {

// Positions of the leaf coordinates inside the uv-chart.
constexpr std::array<int, 4> kUvIndex{0, 2, 3, 5};

Vec embed_vec(const Vec& y, cplx h0, cplx c2) {
  const cplx u1 = y(0), z1 = y(1), u2 = y(2), z2 = y(3);
  require_nondegenerate_u(u1, u2);
  Vec x(6);
  x << u1, (h0 - c2 - 2.0 * z1 * z1) / (2.0 * u1), z1, u2,
      (h0 + c2 - 2.0 * z2 * z2) / (2.0 * u2), z2;
  return x;
}

void require_separable(const AuxFunctions& a) {
  if (std::abs(a.G) < kEpsDegenerate || std::abs(a.F) < kEpsDegenerate)
    fail(ErrorKind::Degenerate, "separation chart degenerate");
}

void require_distinct(const SymmetricParams& params, cplx lambda2) {
  if (std::abs(lambda2 - params.lambda1()) < kEpsCollision)
    fail(ErrorKind::Degenerate, "eigenvalue collision");
}

Mat p_leaf_matrix(const Vec& y) {
  Mat p = Mat::Zero(4, 4);
  p(0, 1) = -y(0);
  p(2, 3) = y(2);
  p(1, 0) = -p(0, 1);
  p(3, 2) = -p(2, 3);
  return p;
}

Mat q_leaf_matrix(const Vec& y, double mu1, double mu2, double mu3) {
  const cplx u1 = y(0), u2 = y(2);
  Mat q = Mat::Zero(4, 4);
  q(0, 1) = -(mu3 * u2 + mu1 * u1);
  q(0, 3) = mu2 * u1 - mu3 * u2;
  q(1, 2) = mu2 * u2 - mu3 * u1;
  q(2, 3) = mu1 * u2 + mu3 * u1;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < r; ++c) q(r, c) = -q(c, r);
  return q;
}

// The GZ Hamiltonians on the leaf, generic in the scalar type so that the same
// expressions drive both plain evaluation and Taylor jets.
template <class T>
std::array<T, 3> leaf_hamiltonians(const SymmetricParams& p, const std::array<T, 4>& y,
                                   cplx h0, cplx c2) {
  const T& u1 = y[0];
  const T& z1 = y[1];
  const T& u2 = y[2];
  const T& z2 = y[3];
  const T v1 = (T(h0 - c2) - 2.0 * z1 * z1) / (2.0 * u1);
  const T v2 = (T(h0 + c2) - 2.0 * z2 * z2) / (2.0 * u2);
  const T H0 = u1 * v1 + u2 * v2 + z1 * z1 + z2 * z2;
  const T cross = u2 * v1 + v2 * u1;
  const T zz = z1 * z2;
  const T w = z1 * z1 + z2 * z2 - u1 * v1 - u2 * v2;
  const T dz = (z1 - z2) * (z1 - z2);
  const double last =
      p.mutation == Mutation::H2LastTermSign ? 2.0 * p.mu3 * p.mu3 : -2.0 * p.mu3 * p.mu3;
  const T H1 = -2.0 * p.mu3 * cross - 4.0 * p.mu2 * zz - 2.0 * p.mu1 * H0;
  const T H2 = p.mu1 * p.mu1 * H0 + 4.0 * p.mu1 * p.mu2 * zz +
               2.0 * p.mu3 * (p.mu1 + p.mu2) * cross + p.mu2 * p.mu2 * w + last * dz;
  return {H0, H1, H2};
}

// Y = -P d(p1sum) with the restricted P, generic in the scalar type.
template <class T>
std::array<T, 4> y_generic(const SymmetricParams& p, const std::array<T, 4>& y) {
  const T& u1 = y[0];
  const T& u2 = y[2];
  const T one(1.0);
  std::array<T, 4> dp{p.mu3 * (one / u2 - u2 / (u1 * u1)), T(0.0),
                      p.mu3 * (one / u1 - u1 / (u2 * u2)), T(0.0)};
  // P(0,1) = -u1, P(2,3) = u2.
  std::array<T, 4> out;
  out[0] = -(-u1 * dp[1]);
  out[1] = -(u1 * dp[0]);
  out[2] = -(u2 * dp[3]);
  out[3] = -(-u2 * dp[2]);
  return out;
}

constexpr std::size_t kJetOrder = 4;

std::array<std::array<cplx, kJetOrder + 1>, 3> iterates(const SymmetricParams& params,
                                                       const LeafChart& leaf) {
  using J = Jet<kJetOrder>;
  require_nondegenerate_u(leaf.u1(), leaf.u2());
  const auto x = flow_jet<kJetOrder, 4>(
      leaf.coords, [&](const std::array<J, 4>& s) { return y_generic(params, s); });
  const auto h = leaf_hamiltonians(params, x, leaf.h0, leaf.c2);
  std::array<std::array<cplx, kJetOrder + 1>, 3> out{};
  for (int i = 0; i < 3; ++i) {
    double factorial = 1.0;
    for (std::size_t k = 0; k <= kJetOrder; ++k) {
      if (k > 0) factorial *= static_cast<double>(k);
      out[i][k] = factorial * h[i].c[k];
    }
  }
  return out;
}

// rho-polynomial of the k-th iterate, with its summand scale.
Accumulator h_rho(const std::array<std::array<cplx, kJetOrder + 1>, 3>& it, std::size_t k,
                  cplx rho) {
  Accumulator a;
  a.add(rho * rho * it[0][k]);
  a.add(rho * it[1][k]);
  a.add(it[2][k]);
  return a;
}

ScalarField leaf_field(std::function<cplx(const Vec&)> value,
                       std::function<Vec(const Vec&)> grad) {
  ScalarField f;
  f.chart = Chart::Leaf;
  f.dim = 4;
  f.value = std::move(value);
  f.grad = std::move(grad);
  return f;
}

Vec vec4(cplx a, cplx b, cplx c, cplx d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

Point LeafChart::point() const {
  Point p;
  p.chart = Chart::Leaf;
  p.x = vec4(coords[0], coords[1], coords[2], coords[3]);
  return p;
}

Point embed(const LeafChart& leaf) {
  Point p;
  p.chart = Chart::UV;
  p.x = embed_vec(leaf.point().x, leaf.h0, leaf.c2);
  return p;
}

LeafChart project(const Point& uv) {
  if (uv.chart != Chart::UV) fail(ErrorKind::ChartMismatch, "chart mismatch");
  const Vec& x = uv.x;
  LeafChart leaf;
  leaf.coords = {x(0), x(2), x(3), x(5)};
  leaf.h0 = x(0) * x(1) + x(3) * x(4) + x(2) * x(2) + x(5) * x(5);
  leaf.c2 = x(3) * x(4) + x(5) * x(5) - x(0) * x(1) - x(2) * x(2);
  return leaf;
}

ScalarField pull_back(const ScalarField& f_uv, cplx h0, cplx c2) {
  if (f_uv.chart != Chart::UV) fail(ErrorKind::ChartMismatch, "chart mismatch");
  return leaf_field([f_uv, h0, c2](const Vec& y) { return f_uv.value(embed_vec(y, h0, c2)); },
                    [f_uv, h0, c2](const Vec& y) -> Vec {
                      const Vec x = embed_vec(y, h0, c2);
                      const Vec g = f_uv.grad(x);
                      const cplx u1 = x(0), v1 = x(1), z1 = x(2);
                      const cplx u2 = x(3), v2 = x(4), z2 = x(5);
                      return vec4(g(0) - g(1) * v1 / u1, g(2) - g(1) * 2.0 * z1 / u1,
                                  g(3) - g(4) * v2 / u2, g(5) - g(4) * 2.0 * z2 / u2);
                    });
}

// -- restricted tensors ------------------------------------------------------------------

RestrictedTensors restricted_tensors(const SymmetricParams& params, const LeafChart& leaf) {
  require_nondegenerate_u(leaf.u1(), leaf.u2());
  const Vec y = leaf.point().x;
  return {p_leaf_matrix(y), q_leaf_matrix(y, params.mu1, params.mu2, params.mu3)};
}

RestrictedTensors restricted_tensors_from_uv(const SymmetricParams& params,
                                             const LeafChart& leaf) {
  const Point x = embed(leaf);
  const Mat p = p1_uv()(x);
  const Mat q = q_uv(params)(x);
  RestrictedTensors out{Mat::Zero(4, 4), Mat::Zero(4, 4)};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      out.p(a, b) = p(kUvIndex[a], kUvIndex[b]);
      out.q(a, b) = q(kUvIndex[a], kUvIndex[b]);
    }
  return out;
}

BivectorField leaf_p_field() { return linear_bivector(Chart::Leaf, 4, p_leaf_matrix); }

BivectorField leaf_q_field(const SymmetricParams& params) {
  const double mu1 = params.mu1, mu2 = params.mu2, mu3 = params.mu3;
  return linear_bivector(Chart::Leaf, 4, [mu1, mu2, mu3](const Vec& y) -> Mat {
    return q_leaf_matrix(y, mu1, mu2, mu3);
  });
}

Mat nijenhuis_closed_form(const SymmetricParams& params, const LeafChart& leaf) {
  require_nondegenerate_u(leaf.u1(), leaf.u2());
  const double mu1 = params.mu1, mu2 = params.mu2, mu3 = params.mu3;
  const cplx r = leaf.u2() / leaf.u1();  // u2/u1
  const cplx s = leaf.u1() / leaf.u2();  // u1/u2
  Mat n = Mat::Zero(4, 4);
  n(0, 0) = mu3 * r + mu1;
  n(0, 2) = mu2 * r - mu3;
  n(1, 1) = mu3 * r + mu1;
  n(1, 3) = mu3 * r - mu2;
  n(2, 0) = mu2 * s - mu3;
  n(2, 2) = mu3 * s + mu1;
  n(3, 1) = mu3 * s - mu2;
  n(3, 3) = mu3 * s + mu1;
  if (params.mutation == Mutation::NStarEntrySign) n(0, 2) = -n(0, 2);
  return n;
}

NijenhuisResult nijenhuis(const SymmetricParams& params, const LeafChart& leaf) {
  const AuxFunctions a = aux(params, leaf);
  NijenhuisResult out;
  out.lambda1 = params.lambda1();
  out.lambda2 = a.p1sum - params.lambda1();
  require_distinct(params, out.lambda2);

  const RestrictedTensors t = restricted_tensors(params, leaf);
  out.closed_form = nijenhuis_closed_form(params, leaf);
  out.from_tensors = t.p.partialPivLu().solve(t.q);
  out.closed_form_match = {max_abs(Mat(out.closed_form - out.from_tensors)),
                           std::max(max_abs(out.closed_form), max_abs(out.from_tensors))};

  Eigen::ComplexEigenSolver<Mat> solver(out.closed_form, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Internal, "eigenvalue solver failed");
  std::array<cplx, 4> ev{};
  for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
  // The two eigenvalues nearest lambda1 are attributed to it, the rest to lambda2.
  std::sort(ev.begin(), ev.end(), [&](cplx x, cplx y) {
    return std::abs(x - out.lambda1) < std::abs(y - out.lambda1);
  });
  out.eigenvalues = ev;
  double defect = 0.0;
  for (int i = 0; i < 4; ++i) {
    const cplx target = i < 2 ? out.lambda1 : out.lambda2;
    defect = std::max(defect, std::abs(ev[i] - target) / (1.0 + std::abs(target)));
  }
  out.spectrum_defect = defect;
  return out;
}

// -- auxiliary functions -----------------------------------------------------------------

AuxFunctions aux(const SymmetricParams& params, const LeafChart& leaf) {
  const cplx u1 = leaf.u1(), z1 = leaf.z1(), u2 = leaf.u2(), z2 = leaf.z2();
  require_nondegenerate_u(u1, u2);
  const double mu1 = params.mu1, mu2 = params.mu2, mu3 = params.mu3;
  AuxFunctions a;
  a.G = u2 / u1 - u1 / u2;
  a.F = -2.0 * mu2 + mu3 * (u1 * u1 + u2 * u2) / (u1 * u2);
  a.L = mu3 * (z2 * u1 * u1 + z1 * u2 * u2) - mu2 * u1 * u2 * (z1 + z2);
  a.theta1 = 0.5 * mu3 * u1 * u1 - mu2 * u1 * u2 + 0.5 * mu3 * u2 * u2;
  a.p1sum = 2.0 * mu1 + mu3 * (u1 / u2 + u2 / u1);
  return a;
}

LeafFunctions leaf_functions(const SymmetricParams& params) {
  const double mu1 = params.mu1, mu2 = params.mu2, mu3 = params.mu3;
  LeafFunctions f;

  auto grad_lambda2 = [mu3](const Vec& y) {
    const cplx u1 = y(0), u2 = y(2);
    return vec4(mu3 * (1.0 / u2 - u2 / (u1 * u1)), 0.0, mu3 * (1.0 / u1 - u1 / (u2 * u2)),
                0.0);
  };
  auto theta1 = [mu2, mu3](const Vec& y) {
    return 0.5 * mu3 * y(0) * y(0) - mu2 * y(0) * y(2) + 0.5 * mu3 * y(2) * y(2);
  };
  auto grad_theta1 = [mu2, mu3](const Vec& y) {
    return vec4(mu3 * y(0) - mu2 * y(2), 0.0, mu3 * y(2) - mu2 * y(0), 0.0);
  };
  auto L = [mu2, mu3](const Vec& y) {
    const cplx u1 = y(0), z1 = y(1), u2 = y(2), z2 = y(3);
    return mu3 * (z2 * u1 * u1 + z1 * u2 * u2) - mu2 * u1 * u2 * (z1 + z2);
  };
  auto grad_L = [mu2, mu3](const Vec& y) {
    const cplx u1 = y(0), z1 = y(1), u2 = y(2), z2 = y(3);
    return vec4(2.0 * mu3 * z2 * u1 - mu2 * u2 * (z1 + z2), mu3 * u2 * u2 - mu2 * u1 * u2,
                2.0 * mu3 * z1 * u2 - mu2 * u1 * (z1 + z2), mu3 * u1 * u1 - mu2 * u1 * u2);
  };
  auto F = [mu2, mu3](const Vec& y) {
    return -2.0 * mu2 + mu3 * (y(0) * y(0) + y(2) * y(2)) / (y(0) * y(2));
  };

  f.zeta1 = leaf_field([](const Vec& y) { return y(3) - y(1); },
                       [](const Vec&) { return vec4(0.0, -1.0, 0.0, 1.0); });
  f.theta1 = leaf_field(theta1, grad_theta1);
  f.xi1 = leaf_field([theta1](const Vec& y) { return -0.5 * std::log(theta1(y)); },
                     [theta1, grad_theta1](const Vec& y) -> Vec {
                       return -0.5 * grad_theta1(y) / theta1(y);
                     });
  f.lambda2 = leaf_field(
      [mu1, mu2, mu3](const Vec& y) {
        return mu1 - mu2 + mu3 * (y(0) / y(2) + y(2) / y(0));
      },
      grad_lambda2);
  f.p1sum = leaf_field(
      [mu1, mu3](const Vec& y) { return 2.0 * mu1 + mu3 * (y(0) / y(2) + y(2) / y(0)); },
      grad_lambda2);
  f.F = leaf_field(F, grad_lambda2);
  f.G = leaf_field([](const Vec& y) { return y(2) / y(0) - y(0) / y(2); },
                   [](const Vec& y) {
                     const cplx u1 = y(0), u2 = y(2);
                     return vec4(-u2 / (u1 * u1) - 1.0 / u2, 0.0, 1.0 / u1 + u1 / (u2 * u2),
                                 0.0);
                   });
  f.L = leaf_field(L, grad_L);
  // xi2 = L / D with D = mu3 u1 u2 G F = mu3 (u2^2 - u1^2) F.
  f.xi2 = leaf_field(
      [mu3, L, F](const Vec& y) {
        return L(y) / (mu3 * (y(2) * y(2) - y(0) * y(0)) * F(y));
      },
      [mu3, L, grad_L, F, grad_lambda2](const Vec& y) -> Vec {
        const cplx w = y(2) * y(2) - y(0) * y(0);
        const cplx d = mu3 * w * F(y);
        const Vec grad_d =
            mu3 * (vec4(-2.0 * y(0), 0.0, 2.0 * y(2), 0.0) * F(y) + w * grad_lambda2(y));
        return grad_L(y) / d - L(y) * grad_d / (d * d);
      });
  return f;
}

Vec y_field_from_p(const SymmetricParams& params, const LeafChart& leaf) {
  require_nondegenerate_u(leaf.u1(), leaf.u2());
  const Vec y = leaf.point().x;
  return -p_leaf_matrix(y) * leaf_functions(params).p1sum.grad(y);
}

Vec y_field_closed_form(const SymmetricParams& params, const LeafChart& leaf) {
  const cplx g = aux(params, leaf).G;
  return vec4(0.0, params.mu3 * g, 0.0, params.mu3 * g);
}

// -- deformation ---------------------------------------------------------------------------

std::array<std::array<cplx, 5>, 3> lie_y_iterates(const SymmetricParams& params,
                                                  const LeafChart& leaf) {
  return iterates(params, leaf);
}

DeformationResult deformation_xi2(const SymmetricParams& params, const LeafChart& leaf) {
  const AuxFunctions a = aux(params, leaf);
  require_separable(a);
  const cplx lambda2 = a.p1sum - params.lambda1();
  const auto it = iterates(params, leaf);

  // First k >= 1 at which L_Y^k H vanishes identically in rho.
  double scale = 0.0;
  for (const auto& row : it) scale = std::max(scale, std::abs(row[0]));
  std::size_t vanishing = 0;
  Residual vanish_res;
  for (std::size_t k = 1; k <= kJetOrder; ++k) {
    double value = 0.0;
    for (const auto& row : it) value = std::max(value, std::abs(row[k]));
    const Residual r{value, scale};
    if (r.normalized() <= 1e-10) {
      vanishing = k;
      vanish_res = r;
      break;
    }
    scale = std::max(scale, value);
  }
  if (vanishing < 2) fail(ErrorKind::Internal, "deformation did not terminate");

  DeformationResult out;
  out.order = static_cast<int>(vanishing) - 2;
  out.termination = vanish_res;
  // Generically L_Y^3 H = 0, so n = 1 and xi2 = L_Y H / L_Y^2 H at rho = lambda2.
  const std::size_t n = static_cast<std::size_t>(out.order);
  const cplx top = h_rho(it, n, lambda2).sum();
  const cplx bottom = h_rho(it, n + 1, lambda2).sum();
  if (std::abs(bottom) < kEpsDegenerate * (1.0 + std::abs(top)))
    fail(ErrorKind::Degenerate, "separation chart degenerate");
  out.xi2_algorithmic = top / bottom;

  const cplx d = params.mu3 * leaf.u1() * leaf.u2() * a.G * a.F;
  out.xi2_closed_form = a.L / d;
  out.xi2_printed = -a.L / d;
  out.agreement = {std::abs(out.xi2_algorithmic - out.xi2_closed_form),
                   std::abs(out.xi2_closed_form)};
  out.printed_sign_matches =
      std::abs(out.xi2_algorithmic - out.xi2_printed) <=
      1e-10 * (1.0 + std::abs(out.xi2_printed));
  return out;
}

Residual lie_y_factorization(const SymmetricParams& params, const LeafChart& leaf, cplx rho) {
  const AuxFunctions a = aux(params, leaf);
  const UVObservables o = uv_observables(params);
  const Point pt = leaf.point();
  const Vec y = y_field_closed_form(params, leaf);
  auto lie = [&](const ScalarField& f) {
    return (pull_back(f, leaf.h0, leaf.c2).grad(pt.x).transpose() * y)(0, 0);
  };
  Accumulator acc;
  acc.add(rho * rho * lie(o.h0));
  acc.add(rho * lie(o.h1));
  acc.add(lie(o.h2));
  acc.sub(4.0 * params.mu3 * (rho - params.lambda1()) * a.G * a.L / (leaf.u1() * leaf.u2()));
  return acc.residual();
}

Residual lie_y_third(const SymmetricParams& params, const LeafChart& leaf, cplx rho) {
  const auto it = iterates(params, leaf);
  double scale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) scale = std::max(scale, h_rho(it, k, rho).scale());
  const Accumulator third = h_rho(it, 3, rho);
  return {std::abs(third.sum()), std::max(scale, third.scale())};
}

// -- DN chart -------------------------------------------------------------------------------

DNChart dn_chart(const SymmetricParams& params, const LeafChart& leaf) {
  const AuxFunctions a = aux(params, leaf);
  if (std::abs(a.theta1) < kEpsDegenerate) fail(ErrorKind::Degenerate, "theta degenerate");
  require_separable(a);
  const cplx lambda2 = a.p1sum - params.lambda1();
  require_distinct(params, lambda2);
  DNChart dn;
  dn.zeta1 = leaf.z2() - leaf.z1();
  dn.xi1 = -0.5 * std::log(a.theta1);
  dn.lambda2 = lambda2;
  dn.xi2 = a.L / (params.mu3 * leaf.u1() * leaf.u2() * a.G * a.F);
  return dn;
}

namespace {

std::array<ScalarField, 4> dn_fields(const SymmetricParams& params) {
  const LeafFunctions f = leaf_functions(params);
  return {f.zeta1, f.xi1, f.lambda2, f.xi2};
}

}  // namespace

Mat dn_brackets(const SymmetricParams& params, const LeafChart& leaf, bool use_q) {
  (void)dn_chart(params, leaf);  // guards
  const BivectorField tensor = use_q ? leaf_q_field(params) : leaf_p_field();
  const auto f = dn_fields(params);
  const Point pt = leaf.point();
  Mat m(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = bracket(tensor, f[a], f[b], pt);
  return m;
}

Mat dn_canonical(const SymmetricParams& params, const LeafChart& leaf, bool use_q) {
  const cplx l1 = use_q ? cplx(params.lambda1()) : cplx(1.0);
  const cplx l2 = use_q ? aux(params, leaf).p1sum - params.lambda1() : cplx(1.0);
  Mat c = Mat::Zero(4, 4);
  c(0, 1) = l1;
  c(1, 0) = -l1;
  c(2, 3) = l2;
  c(3, 2) = -l2;
  return c;
}

std::array<Residual, 4> eigenform_residuals(const SymmetricParams& params,
                                            const LeafChart& leaf) {
  (void)dn_chart(params, leaf);  // guards
  const Mat n = nijenhuis_closed_form(params, leaf);
  const auto f = dn_fields(params);
  const Point pt = leaf.point();
  const cplx lambda[4] = {params.lambda1(), params.lambda1(),
                          aux(params, leaf).p1sum - params.lambda1(),
                          aux(params, leaf).p1sum - params.lambda1()};
  std::array<Residual, 4> out{};
  for (int a = 0; a < 4; ++a) {
    const Vec g = f[a].grad(pt.x);
    for (int i = 0; i < 4; ++i) {
      Accumulator acc;
      for (int j = 0; j < 4; ++j) acc.add(n(i, j) * g(j));
      acc.sub(lambda[a] * g(i));
      out[a].absorb(acc.residual());
    }
  }
  return out;
}

// -- separation relations ----------------------------------------------------------------------

SeparationResult separation_phi1(const SymmetricParams& params, const Point& uv) {
  if (std::abs(params.mu1 + params.mu2) < kEpsDegenerate)
    fail(ErrorKind::Degenerate, "degenerate constant eigenvalue");
  const UVObservableValues h = uv_observables(params, uv);
  const double l1 = params.lambda1();
  const double alpha = 2.0 * (params.mu3 * params.mu3 - params.mu2 * params.mu2) / l1;
  const cplx zeta1 = uv.x(5) - uv.x(2);
  Accumulator acc;
  acc.add(alpha * zeta1 * zeta1);
  acc.add(h.h1);
  acc.add(h.h2 / l1);
  acc.add(l1 * h.h0);
  SeparationResult out;
  out.phi1 = acc.sum();
  out.phi1_residual = acc.residual();
  return out;
}

SeparationResult separation_residuals(const SymmetricParams& params, const Point& uv) {
  params.validate();
  SeparationResult out = separation_phi1(params, uv);
  const LeafChart leaf = project(uv);
  const AuxFunctions a = aux(params, leaf);
  require_separable(a);
  const UVObservableValues h = uv_observables(params, uv);
  const double mu3 = params.mu3;
  const cplx lambda2 = a.p1sum - params.lambda1();
  const cplx xi2 = a.L / (mu3 * leaf.u1() * leaf.u2() * a.G * a.F);
  const cplx p = -2.0 * mu3 * mu3 * a.F * a.F * a.G * a.G;

  auto phi2 = [&](double psi_sign) {
    Accumulator acc;
    acc.add(p * xi2 * xi2);
    acc.add(lambda2 * h.h1);
    acc.add(h.h2);
    // -Psi with Psi = psi_sign (lambda2^2 H0 - mu3 F G C2).
    acc.sub(psi_sign * lambda2 * lambda2 * h.h0);
    acc.add(psi_sign * mu3 * a.F * a.G * h.c2);
    return acc;
  };
  const Accumulator corrected = phi2(-1.0);
  out.phi2 = corrected.sum();
  out.phi2_residual = corrected.residual();
  out.phi2_printed_residual = phi2(1.0).residual();
  return out;
}

// -- generalized Lenard --------------------------------------------------------------------------

LenardFit generalized_lenard_fit(const SymmetricParams& params, const LeafChart& leaf) {
  const RestrictedTensors t = restricted_tensors(params, leaf);
  const UVObservables o = uv_observables(params);
  const Vec y = leaf.point().x;
  const Vec dh1 = pull_back(o.h1, leaf.h0, leaf.c2).grad(y);
  const Vec dh2 = pull_back(o.h2, leaf.h0, leaf.c2).grad(y);
  const Vec qh1 = t.q * dh1;
  const Vec ph2 = t.p * dh2;
  const Vec a = qh1 - ph2;
  const Vec b = t.p * dh1;
  LenardFit fit;
  const cplx bb = b.squaredNorm();
  fit.c = bb == cplx(0.0) ? cplx(0.0) : cplx(b.dot(a)) / bb;
  fit.p1sum = aux(params, leaf).p1sum;
  const Vec rest = a - fit.c * b;
  fit.residual = {max_abs(rest),
                  std::max({max_abs(qh1), max_abs(ph2), max_abs(Vec(fit.c * b))})};
  return fit;
}

}  // namespace biham
