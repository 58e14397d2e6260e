#include "biham/tensor_calc.hpp"

#include <cmath>

#include "biham/error.hpp"

namespace biham {

namespace {

void require_same(Chart field_chart, int field_dim, const Point& pt) {
  if (field_chart != pt.chart) fail(ErrorKind::ChartMismatch, "chart mismatch");
  if (field_dim != pt.dim()) fail(ErrorKind::DimensionMismatch, "dimension mismatch");
}

void require_same(Chart a, int da, Chart b, int db) {
  if (a != b) fail(ErrorKind::ChartMismatch, "chart mismatch");
  if (da != db) fail(ErrorKind::DimensionMismatch, "dimension mismatch");
}

Vec basis(int dim, int k) {
  Vec e = Vec::Zero(dim);
  e(k) = 1.0;
  return e;
}

}  // namespace

cplx ScalarField::operator()(const Point& p) const {
  require_same(chart, dim, p);
  return value(p.x);
}

Vec VectorField::operator()(const Point& p) const {
  require_same(chart, dim, p);
  return value(p.x);
}

Mat BivectorField::operator()(const Point& p) const {
  require_same(chart, dim, p);
  return value(p.x);
}

ScalarField constant_scalar(Chart chart, int dim, cplx c) {
  return {chart, dim, [c](const Vec&) { return c; },
          [dim](const Vec&) { return Vec(Vec::Zero(dim)); },
          [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); }};
}

ScalarField coordinate(Chart chart, int dim, int k) {
  return {chart, dim, [k](const Vec& x) { return x(k); },
          [dim, k](const Vec&) { return basis(dim, k); },
          [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); }};
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  require_same(f.chart, f.dim, g.chart, g.dim);
  ScalarField h{f.chart, f.dim, nullptr, nullptr, nullptr};
  h.value = [f, g](const Vec& x) { return f.value(x) * g.value(x); };
  h.grad = [f, g](const Vec& x) -> Vec {
    return g.value(x) * f.grad(x) + f.value(x) * g.grad(x);
  };
  if (f.hess && g.hess) {
    h.hess = [f, g](const Vec& x) -> Mat {
      const Vec gf = f.grad(x);
      const Vec gg = g.grad(x);
      return g.value(x) * f.hess(x) + f.value(x) * g.hess(x) + gf * gg.transpose() +
             gg * gf.transpose();
    };
  }
  return h;
}

ScalarField linear_combination(const std::vector<std::pair<cplx, ScalarField>>& terms) {
  if (terms.empty()) fail(ErrorKind::InvalidArgument, "empty linear combination");
  const Chart chart = terms.front().second.chart;
  const int dim = terms.front().second.dim;
  bool all_hess = true;
  for (const auto& [c, f] : terms) {
    require_same(chart, dim, f.chart, f.dim);
    all_hess = all_hess && static_cast<bool>(f.hess);
  }
  ScalarField h{chart, dim, nullptr, nullptr, nullptr};
  h.value = [terms](const Vec& x) {
    cplx s = 0.0;
    for (const auto& [c, f] : terms) s += c * f.value(x);
    return s;
  };
  h.grad = [terms, dim](const Vec& x) {
    Vec s = Vec::Zero(dim);
    for (const auto& [c, f] : terms) s += c * f.grad(x);
    return s;
  };
  if (all_hess) {
    h.hess = [terms, dim](const Vec& x) {
      Mat s = Mat::Zero(dim, dim);
      for (const auto& [c, f] : terms) s += c * f.hess(x);
      return s;
    };
  }
  return h;
}

VectorField constant_vector(Chart chart, const Vec& v) {
  const int dim = static_cast<int>(v.size());
  return {chart, dim, [v](const Vec&) { return v; },
          [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); }};
}

VectorField scaled(const VectorField& X, cplx factor) {
  return {X.chart, X.dim, [X, factor](const Vec& x) -> Vec { return factor * X.value(x); },
          [X, factor](const Vec& x) -> Mat { return factor * X.jac(x); }};
}

BivectorField linear_bivector(Chart chart, int dim, std::function<Mat(const Vec&)> value) {
  std::vector<Mat> partials;
  partials.reserve(static_cast<std::size_t>(dim));
  for (int l = 0; l < dim; ++l) partials.push_back(value(basis(dim, l)));
  return {chart, dim, std::move(value),
          [partials](const Vec&) { return partials; }};
}

BivectorField constant_bivector(Chart chart, const Mat& m) {
  const int dim = static_cast<int>(m.rows());
  return {chart, dim, [m](const Vec&) { return m; },
          [dim](const Vec&) {
            return std::vector<Mat>(static_cast<std::size_t>(dim), Mat::Zero(dim, dim));
          }};
}

BivectorField sum(const BivectorField& P, const BivectorField& Q, cplx q_factor) {
  require_same(P.chart, P.dim, Q.chart, Q.dim);
  return {P.chart, P.dim,
          [P, Q, q_factor](const Vec& x) -> Mat { return P.value(x) + q_factor * Q.value(x); },
          [P, Q, q_factor](const Vec& x) {
            auto dp = P.jac(x);
            const auto dq = Q.jac(x);
            for (std::size_t l = 0; l < dp.size(); ++l) dp[l] += q_factor * dq[l];
            return dp;
          }};
}

BivectorField scaled(const BivectorField& P, cplx factor) {
  return {P.chart, P.dim, [P, factor](const Vec& x) -> Mat { return factor * P.value(x); },
          [P, factor](const Vec& x) {
            auto dp = P.jac(x);
            for (auto& d : dp) d *= factor;
            return dp;
          }};
}

BivectorField wedge_field(const VectorField& X, const VectorField& Z) {
  require_same(X.chart, X.dim, Z.chart, Z.dim);
  return {X.chart, X.dim, [X, Z](const Vec& x) { return wedge(X.value(x), Z.value(x)); },
          [X, Z](const Vec& x) {
            const Vec xv = X.value(x);
            const Vec zv = Z.value(x);
            const Mat dx = X.jac(x);
            const Mat dz = Z.jac(x);
            const int n = static_cast<int>(xv.size());
            std::vector<Mat> out;
            out.reserve(static_cast<std::size_t>(n));
            for (int l = 0; l < n; ++l) {
              // d_l (X^i Z^j - X^j Z^i)
              out.push_back(wedge(dx.col(l), zv) + wedge(xv, dz.col(l)));
            }
            return out;
          }};
}

cplx bracket(const BivectorField& P, const ScalarField& f, const ScalarField& g,
             const Point& pt) {
  require_same(P.chart, P.dim, pt);
  require_same(f.chart, f.dim, pt);
  require_same(g.chart, g.dim, pt);
  const Vec df = f.grad(pt.x);
  const Vec dg = g.grad(pt.x);
  return (df.transpose() * P.value(pt.x) * dg)(0, 0);
}

Residual bracket_residual(const BivectorField& P, const ScalarField& f, const ScalarField& g,
                          const Point& pt, cplx expected) {
  require_same(P.chart, P.dim, pt);
  require_same(f.chart, f.dim, pt);
  require_same(g.chart, g.dim, pt);
  const Vec df = f.grad(pt.x);
  const Vec dg = g.grad(pt.x);
  const Mat p = P.value(pt.x);
  Accumulator acc;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) acc.add(df(i) * p(i, j) * dg(j));
  acc.sub(expected);
  return acc.residual();
}

Vec ham_field(const BivectorField& P, const ScalarField& f, const Point& pt) {
  require_same(P.chart, P.dim, pt);
  require_same(f.chart, f.dim, pt);
  return P.value(pt.x) * f.grad(pt.x);
}

Residual schouten_residual(const BivectorField& P, const BivectorField& Q, const Point& pt) {
  require_same(P.chart, P.dim, Q.chart, Q.dim);
  require_same(P.chart, P.dim, pt);
  const int n = P.dim;
  const Mat p = P.value(pt.x);
  const Mat q = Q.value(pt.x);
  const std::vector<Mat> dp = P.jac(pt.x);
  const std::vector<Mat> dq = Q.jac(pt.x);

  Residual worst;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Accumulator acc;
        const int idx[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& c : idx) {
          const int a = c[0], b = c[1], d = c[2];
          for (int l = 0; l < n; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            acc.add(p(l, b) * dq[ul](a, d));
            acc.add(q(l, b) * dp[ul](a, d));
          }
        }
        worst.absorb(acc.residual());
      }
    }
  }
  return worst;
}

cplx lie_scalar(const VectorField& Z, const ScalarField& f, const Point& pt) {
  require_same(Z.chart, Z.dim, pt);
  require_same(f.chart, f.dim, pt);
  return (f.grad(pt.x).transpose() * Z.value(pt.x))(0, 0);
}

Residual lie_scalar2_residual(const VectorField& Z, const ScalarField& f, const Point& pt) {
  require_same(Z.chart, Z.dim, pt);
  require_same(f.chart, f.dim, pt);
  if (!f.hess) fail(ErrorKind::InvalidArgument, "second Lie derivative needs a Hessian");
  // L_Z L_Z f = Z^T H Z + grad(f)^T (DZ) Z
  const Vec z = Z.value(pt.x);
  const Vec g = f.grad(pt.x);
  const Mat h = f.hess(pt.x);
  const Mat dz = Z.jac(pt.x);
  Accumulator acc;
  for (int i = 0; i < z.size(); ++i) {
    for (int j = 0; j < z.size(); ++j) {
      acc.add(z(i) * h(i, j) * z(j));
      acc.add(g(i) * dz(i, j) * z(j));
    }
  }
  return acc.residual();
}

cplx lie_scalar2(const VectorField& Z, const ScalarField& f, const Point& pt) {
  require_same(Z.chart, Z.dim, pt);
  require_same(f.chart, f.dim, pt);
  if (!f.hess) fail(ErrorKind::InvalidArgument, "second Lie derivative needs a Hessian");
  const Vec z = Z.value(pt.x);
  const Vec g = f.grad(pt.x);
  return (z.transpose() * f.hess(pt.x) * z)(0, 0) + (g.transpose() * Z.jac(pt.x) * z)(0, 0);
}

Mat lie_bivector(const VectorField& Z, const BivectorField& P, const Point& pt) {
  require_same(Z.chart, Z.dim, P.chart, P.dim);
  require_same(Z.chart, Z.dim, pt);
  const int n = P.dim;
  const Vec z = Z.value(pt.x);
  const Mat dz = Z.jac(pt.x);
  const Mat p = P.value(pt.x);
  const std::vector<Mat> dp = P.jac(pt.x);
  Mat out = Mat::Zero(n, n);
  for (int l = 0; l < n; ++l) out += z(l) * dp[static_cast<std::size_t>(l)];
  // - P^{lj} d_l Z^i - P^{il} d_l Z^j
  out -= dz * p;
  out -= p * dz.transpose();
  return out;
}

Mat wedge(const Vec& X, const Vec& Z) { return X * Z.transpose() - Z * X.transpose(); }

Mat wedge(const VectorField& X, const VectorField& Z, const Point& pt) {
  require_same(X.chart, X.dim, pt);
  require_same(Z.chart, Z.dim, pt);
  return wedge(X.value(pt.x), Z.value(pt.x));
}

double antisymmetry_defect(const Mat& A) { return max_abs(Mat(A + A.transpose())); }

double max_abs(const Mat& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Eigen::VectorXd singular_values(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues();
}

int numeric_rank(const Mat& A, double rel_tol) {
  const Eigen::VectorXd s = singular_values(A);
  if (s.size() == 0) return 0;
  const double cut = rel_tol * (1.0 + s(0));
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

double column_space_defect(const Mat& A, const Vec& v, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU);
  const Eigen::VectorXd s = svd.singularValues();
  const double cut = rel_tol * (1.0 + (s.size() ? s(0) : 0.0));
  Vec residual = v;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) <= cut) continue;
    const Vec u = svd.matrixU().col(i);
    residual -= u * (u.adjoint() * v)(0, 0);
  }
  return max_abs(residual) / (1.0 + max_abs(v));
}

double fd_step(cplx coordinate) { return 1e-5 * (1.0 + std::abs(coordinate)); }

double fd_gradient_error(const ScalarField& f, const Point& pt) {
  require_same(f.chart, f.dim, pt);
  const Vec exact = f.grad(pt.x);
  double err = 0.0;
  for (int k = 0; k < pt.dim(); ++k) {
    const double h = fd_step(pt.x(k));
    Vec xp = pt.x, xm = pt.x;
    xp(k) += h;
    xm(k) -= h;
    const cplx fd = (f.value(xp) - f.value(xm)) / (2.0 * h);
    err = std::max(err, std::abs(fd - exact(k)));
  }
  return err / (1.0 + max_abs(exact));
}

double fd_hessian_error(const ScalarField& f, const Point& pt) {
  require_same(f.chart, f.dim, pt);
  if (!f.hess) fail(ErrorKind::InvalidArgument, "field has no Hessian");
  const Mat exact = f.hess(pt.x);
  double err = 0.0;
  for (int k = 0; k < pt.dim(); ++k) {
    const double h = fd_step(pt.x(k));
    Vec xp = pt.x, xm = pt.x;
    xp(k) += h;
    xm(k) -= h;
    const Vec fd = (f.grad(xp) - f.grad(xm)) / (2.0 * h);
    err = std::max(err, max_abs(Vec(fd - exact.col(k))));
  }
  return err / (1.0 + max_abs(exact));
}

double fd_jacobian_error(const VectorField& X, const Point& pt) {
  require_same(X.chart, X.dim, pt);
  const Mat exact = X.jac(pt.x);
  double err = 0.0;
  for (int k = 0; k < pt.dim(); ++k) {
    const double h = fd_step(pt.x(k));
    Vec xp = pt.x, xm = pt.x;
    xp(k) += h;
    xm(k) -= h;
    const Vec fd = (X.value(xp) - X.value(xm)) / (2.0 * h);
    err = std::max(err, max_abs(Vec(fd - exact.col(k))));
  }
  return err / (1.0 + max_abs(exact));
}

double fd_jacobian_error(const BivectorField& P, const Point& pt) {
  require_same(P.chart, P.dim, pt);
  const std::vector<Mat> exact = P.jac(pt.x);
  double err = 0.0;
  double scale = 0.0;
  for (int k = 0; k < pt.dim(); ++k) {
    const double h = fd_step(pt.x(k));
    Vec xp = pt.x, xm = pt.x;
    xp(k) += h;
    xm(k) -= h;
    const Mat fd = (P.value(xp) - P.value(xm)) / (2.0 * h);
    const auto uk = static_cast<std::size_t>(k);
    err = std::max(err, max_abs(Mat(fd - exact[uk])));
    scale = std::max(scale, max_abs(exact[uk]));
  }
  return err / (1.0 + scale);
}

}  // namespace biham
