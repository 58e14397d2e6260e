#pragma once

#include <functional>
#include <string>
#include <vector>

#include "biham/types.hpp"

namespace biham {

/// A scalar function on a chart together with its exact gradient.
///
/// `hess` is optional; it is only required by second Lie derivatives
/// (lie_scalar2). All fields in this library are polynomial or rational, so
/// every derivative map is written out by hand. Finite differences exist only
/// as a cross-check (see fd_* below).
struct ScalarField {
  Chart chart = Chart::M;
  int dim = 6;
  std::function<cplx(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;

  cplx operator()(const Point& p) const;
};

/// A vector field with its exact Jacobian, jac(x)(i, l) = d X^i / d x^l.
struct VectorField {
  Chart chart = Chart::M;
  int dim = 6;
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jac;

  Vec operator()(const Point& p) const;
};

/// A bivector field P^{ij}(x) with exact first partials,
/// jac(x)[l](i, j) = d P^{ij} / d x^l.
struct BivectorField {
  Chart chart = Chart::M;
  int dim = 6;
  std::function<Mat(const Vec&)> value;
  std::function<std::vector<Mat>(const Vec&)> jac;

  Mat operator()(const Point& p) const;
};

// -- constructors and field algebra -----------------------------------------

ScalarField constant_scalar(Chart chart, int dim, cplx c);
/// The coordinate function x -> x_k.
ScalarField coordinate(Chart chart, int dim, int k);
ScalarField product(const ScalarField& f, const ScalarField& g);
ScalarField linear_combination(const std::vector<std::pair<cplx, ScalarField>>& terms);

VectorField constant_vector(Chart chart, const Vec& v);
VectorField scaled(const VectorField& X, cplx factor);

/// A bivector field whose entries are linear in the coordinates.
/// Its partials are exactly value(e_l) (the field evaluated on basis vectors).
BivectorField linear_bivector(Chart chart, int dim, std::function<Mat(const Vec&)> value);
BivectorField constant_bivector(Chart chart, const Mat& m);
BivectorField sum(const BivectorField& P, const BivectorField& Q, cplx q_factor = 1.0);
BivectorField scaled(const BivectorField& P, cplx factor);
/// X ^ Z as a bivector field, (X^Z)^{ij} = X^i Z^j - X^j Z^i.
BivectorField wedge_field(const VectorField& X, const VectorField& Z);

// -- operations ---------------------------------------------------------------

/// {f, g}_P = grad(f)^T P grad(g).
cplx bracket(const BivectorField& P, const ScalarField& f, const ScalarField& g,
             const Point& pt);
/// Same bracket with the summand scale tracked (for normalized residuals).
Residual bracket_residual(const BivectorField& P, const ScalarField& f,
                          const ScalarField& g, const Point& pt, cplx expected = 0.0);

/// P(pt) grad(f).
Vec ham_field(const BivectorField& P, const ScalarField& f, const Point& pt);

/// Max over (i, j, k) of the Schouten-bracket components
///   sum_l  P^{lj} d_l Q^{ik} + Q^{lj} d_l P^{ik}  + cyclic(i, j, k),
/// with scale = largest single summand. Vanishes iff [P, Q] = 0 at pt.
/// Call with P == Q for the Jacobi identity of a single tensor.
Residual schouten_residual(const BivectorField& P, const BivectorField& Q, const Point& pt);

/// L_Z f = grad(f) . Z.
cplx lie_scalar(const VectorField& Z, const ScalarField& f, const Point& pt);
/// L_Z L_Z f, using the Hessian of f and the Jacobian of Z.
cplx lie_scalar2(const VectorField& Z, const ScalarField& f, const Point& pt);
/// Residual form of lie_scalar2 (value, largest summand).
Residual lie_scalar2_residual(const VectorField& Z, const ScalarField& f, const Point& pt);

/// (L_Z P)^{ij} = Z^l d_l P^{ij} - P^{lj} d_l Z^i - P^{il} d_l Z^j.
Mat lie_bivector(const VectorField& Z, const BivectorField& P, const Point& pt);

Mat wedge(const Vec& X, const Vec& Z);
Mat wedge(const VectorField& X, const VectorField& Z, const Point& pt);

// -- linear-algebra helpers -------------------------------------------------

/// max |A + A^T|.
double antisymmetry_defect(const Mat& A);
/// Largest absolute entry.
double max_abs(const Mat& A);
double max_abs(const Vec& v);
Eigen::VectorXd singular_values(const Mat& A);
/// Number of singular values above rel_tol * (1 + largest singular value).
int numeric_rank(const Mat& A, double rel_tol);
/// Distance of v from the column space of A, relative to (1 + |v|).
double column_space_defect(const Mat& A, const Vec& v, double rel_tol);

// -- finite-difference cross-checks ------------------------------------------
//
// Central differences, step h = 1e-5 * (1 + |x_k|) per coordinate. Each
// function returns max |exact - fd| / (1 + max |exact|).

double fd_step(cplx coordinate);
double fd_gradient_error(const ScalarField& f, const Point& pt);
double fd_hessian_error(const ScalarField& f, const Point& pt);
double fd_jacobian_error(const VectorField& X, const Point& pt);
double fd_jacobian_error(const BivectorField& P, const Point& pt);

}  // namespace biham
