#pragma once

#include <string_view>

#include "biham/so4_top.hpp"
#include "biham/tensor_calc.hpp"

namespace biham {

/// Guard on |u_i|, |G|, |F|, |theta1| below which a point has no separation chart.
inline constexpr double kEpsDegenerate = 1e-8;
/// Guard on |lambda2 - lambda1| (distinct Nijenhuis eigenvalues).
inline constexpr double kEpsCollision = 1e-6;

/// Single-sign fault injections used to prove that the verification suite is
/// sensitive to the identities it checks. Never set outside of tests.
enum class Mutation {
  None,
  QWedgeSign,      ///< Q = P2 + X1 ^ Z instead of P2 - X1 ^ Z
  H2LastTermSign,  ///< +2 mu3^2 (z1 - z2)^2 in H2 instead of -2 mu3^2 (z1 - z2)^2
  NStarEntrySign,  ///< flips the sign of N*(0, 2) in the closed-form Nijenhuis matrix
};

std::string_view to_string(Mutation m);
Mutation mutation_from_string(std::string_view s);

/// Parameters of the rotationally symmetric model (mu4 = mu3).
struct SymmetricParams {
  double mu1 = 1.0;
  double mu2 = 2.0;
  double mu3 = 3.0;
  Mutation mutation = Mutation::None;

  ModelParams model() const { return ModelParams::symmetric(mu1, mu2, mu3); }
  /// The constant Nijenhuis eigenvalue mu1 + mu2.
  double lambda1() const { return mu1 + mu2; }

  /// Throws Degenerate("degenerate constant eigenvalue") if mu1 + mu2 ~ 0 and
  /// Degenerate("degenerate mu3") if mu3 ~ 0.
  void validate() const;
};

// -- observables ----------------------------------------------------------------------

struct UVObservables {
  ScalarField h0;  ///< u1 v1 + u2 v2 + z1^2 + z2^2
  ScalarField c2;  ///< u2 v2 + z2^2 - u1 v1 - z1^2 (= 2 C)
  ScalarField h1;  ///< -2 mu3 (u2 v1 + v2 u1) - 4 mu2 z1 z2 - 2 mu1 H0
  ScalarField h2;  ///< closed form with the -2 mu3^2 (z1 - z2)^2 term
};

UVObservables uv_observables(const SymmetricParams& params);

struct UVObservableValues {
  cplx h0, c2, h1, h2;
};
UVObservableValues uv_observables(const SymmetricParams& params, const Point& pt);

// -- tensors and fields ------------------------------------------------------------------

/// P1 = diag(A1, -A2), A_i = [[0, 2 z_i, -u_i], [-2 z_i, 0, v_i], [u_i, -v_i, 0]].
BivectorField p1_uv();
/// P2 = mu1 P1 + Delta (Delta linear in the coordinates, weighted by mu2 and mu3).
BivectorField p2_uv(const SymmetricParams& params);

/// The uv tensors are the m-chart tensors pushed forward through the linear
/// chart map and multiplied by this constant: P_uv = (i / sqrt 2) A P_m A^T.
cplx uv_tensor_factor();

/// Euler field X1 = P1 dH1 (closed form).
VectorField x1_field(const SymmetricParams& params);

/// Transversal field Z = 1/(2 u1) d/dv1 + 1/(2 u2) d/dv2.
/// Evaluation throws Degenerate("degenerate point") when |u_i| < kEpsDegenerate.
VectorField z_field();

/// Deformed tensor Q = P2 - X1 ^ Z.
BivectorField q_uv(const SymmetricParams& params);

/// GZ polynomial H(rho) = rho^2 H0 + rho H1 + H2 as a field.
ScalarField gz_polynomial(const SymmetricParams& params, cplx rho);

/// det(L(lambda) - rho lambda 1) in the uv-chart:
/// lambda^4 P4(rho) + lambda^2 H(rho) + C2^2 / 4.
ScalarField char_poly_uv(const SymmetricParams& params, cplx lambda, cplx rho);

/// L_Z L_Z of the characteristic polynomial (vanishes: Staeckel condition).
Residual stackel_condition(const SymmetricParams& params, cplx lambda, cplx rho,
                           const Point& pt);

/// Throws Degenerate("degenerate point") unless |u1|, |u2| >= kEpsDegenerate.
void require_nondegenerate_u(cplx u1, cplx u2);

}  // namespace biham
