#pragma once

#include <array>
#include <optional>

#include "biham/tensor_calc.hpp"
#include "biham/types.hpp"

namespace biham {

/// The four generalized inertia constants of the Euler-Manakov top and the
/// squared Manakov moments J_i^2 they determine.
///
///   J1^2 = mu1 - mu2 - mu3 - mu4      J2^2 = mu1 + mu2 + mu3 - mu4
///   J3^2 = mu1 + mu2 - mu3 + mu4      J4^2 = mu1 - mu2 + mu3 + mu4
class ModelParams {
 public:
  static ModelParams from_mu(double mu1, double mu2, double mu3, double mu4);
  /// Symmetric (XXZ) case, mu4 = mu3.
  static ModelParams symmetric(double mu1, double mu2, double mu3);
  static ModelParams from_jsq(const std::array<double, 4>& jsq);

  const std::array<double, 4>& mu() const { return mu_; }
  const std::array<double, 4>& jsq() const { return jsq_; }
  bool is_symmetric() const { return mu_[2] == mu_[3]; }
  /// All J_i^2 > 0, so principal roots J_i are real and J_i + J_j > 0.
  bool has_real_moments() const;
  std::array<double, 4> j() const;

  /// a_ij = J_l^2 + J_k^2, b_ij = J_l^2 J_k^2 with {i,j,l,k} = {1,2,3,4}.
  /// Indices are zero-based pair indices into (12, 13, 14, 23, 24, 34).
  double a(int pair) const;
  double b(int pair) const;

 private:
  std::array<double, 4> mu_{};
  std::array<double, 4> jsq_{};
};

/// Zero-based (i, j) for the six m-coordinates (m12, m13, m14, m23, m24, m34).
constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// -- Poisson tensors on so(4) --------------------------------------------------

/// Lie-Poisson tensor of so(4) in the m-chart.
BivectorField p1_m();
/// Lie-Poisson tensor of the J^2-deformed commutator M1 J^2 M2 - M2 J^2 M1.
BivectorField p2_m(const ModelParams& params);

/// Numeric value of P1 / P2 at a point (chart M).
Mat p1_m(const Point& pt);
Mat p2_m(const ModelParams& params, const Point& pt);

// -- observables ---------------------------------------------------------------

struct MObservables {
  ScalarField h0;  ///< sum m_ij^2
  ScalarField c;   ///< Pfaffian m12 m34 + m14 m23 - m13 m24
  ScalarField he;  ///< 1/2 sum a_ij m_ij^2
  ScalarField ke;  ///< sum b_ij m_ij^2
  ScalarField h1;  ///< -2 HE
  ScalarField h2;  ///< KE
};

MObservables observables_m(const ModelParams& params);

struct MObservableValues {
  cplx h0, c, he, ke;
};
MObservableValues observables_m(const ModelParams& params, const Point& pt);

/// HE written in the split chart:
///   2 mu4 x1 x2 + 2 mu3 y1 y2 + 2 mu2 z1 z2 + mu1 (|x|^2 + |y|^2 + |z|^2).
cplx he_split(const ModelParams& params, const Point& split_pt);

// -- Lax matrix and spectral identity --------------------------------------------

using Mat4 = Eigen::Matrix<cplx, 4, 4>;

/// The antisymmetric 4x4 matrix M(m).
Mat4 m_matrix(const Point& pt);
/// L(lambda) = lambda diag(J^2) + M.
Mat4 lax(const ModelParams& params, cplx lambda, const Point& pt);

/// 4x4 determinant by full cofactor (Laplace) expansion. Returns the sum
/// with the largest of the 24 signed products as scale.
Accumulator det4_expansion(const Mat4& A);

/// det(L(lambda) - rho lambda 1) - [lambda^4 P4(rho) + lambda^2 (rho^2 H0 - 2 rho HE + KE) + C^2],
/// P4(rho) = prod (J_i^2 - rho).
Residual char_poly_residual(const ModelParams& params, cplx lambda, cplx rho, const Point& pt);

/// Right-hand side of the characteristic polynomial identity (closed form).
cplx char_poly_closed_form(const ModelParams& params, cplx lambda, cplx rho, const Point& pt);

// -- Lenard-Magri chain ---------------------------------------------------------

/// Residual vectors of
///   P1 dH0 = 0, P2 dH0 = P1 dH1, P2 dH1 = P1 dH2, P2 dH2 = 0,  P1 dC = 0, P2 dC = 0.
struct LenardResiduals {
  std::array<Residual, 4> chain;
  std::array<Residual, 2> casimir;

  Residual worst() const;
};

LenardResiduals lenard_residuals_m(const ModelParams& params, const Point& pt);

/// Generic chain residual P_a dF - P_b dG (any pair of fields), tracking summands.
Residual chain_residual(const Mat& Pa, const Vec& dF, const Mat& Pb, const Vec& dG);

// -- Lax equation along Hamiltonian flows -------------------------------------------

/// Which flow / Lax partner pair is checked.
///
///  - RigidBody: B = Omega + lambda J with M = J Omega + Omega J (J the positive
///    roots), along the flow of H_Omega = 1/2 sum m_ij^2 / (J_i + J_j).
///  - EulerHE:   B = A.M + lambda D, (A.M)_ij = a_ij m_ij,
///    D = diag(S J_i^2 - J_i^4), S = sum J^2, along the HE flow.
enum class LaxFlavor { RigidBody, EulerHE };

struct LaxCheck {
  Residual plus;   ///< || dL/dt - [L, B] ||
  Residual minus;  ///< || dL/dt + [L, B] ||
  /// +1 if dL/dt = [L, B] holds, -1 if dL/dt = [B, L] holds, 0 if neither.
  int sign(double tol) const;
};

/// Requires has_real_moments() for RigidBody (throws Degenerate otherwise).
LaxCheck lax_flow_check(const ModelParams& params, LaxFlavor flavor, cplx lambda,
                        const Point& pt);

/// Coefficients (alpha, beta, gamma) with 1/(J_i+J_j) = alpha + beta a_ij + gamma b_ij
/// fitted on three pairs, and the worst mismatch on the remaining ones,
/// i.e. H_Omega = 1/2 (alpha H0 + 2 beta HE + gamma KE).
struct SpanFit {
  std::array<double, 3> coeffs{};
  double defect = 0.0;
};
SpanFit rigid_body_hamiltonian_span(const ModelParams& params);

/// Hamiltonian field of H_Omega under P1.
Vec rigid_body_flow(const ModelParams& params, const Point& pt);

// -- charts ------------------------------------------------------------------------

/// Linear chart maps. M <-> Split is real orthogonal (1/sqrt2 convention),
/// Split <-> UV is complex. `allow_complex = false` rejects a map into a real
/// chart (M, Split) whose result has a non-negligible imaginary part.
Point chart_map(const Point& pt, Chart target, bool allow_complex = false);

/// Matrix A of the linear map from chart `from` to chart `to` (x_to = A x_from).
Mat chart_matrix(Chart from, Chart to);

/// Push-forward A P A^T of a bivector through a linear chart change.
Mat transport_bivector(const Mat& P, Chart from, Chart to);

}  // namespace biham
