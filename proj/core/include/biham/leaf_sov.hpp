#pragma once

#include <array>

#include "biham/tensor_calc.hpp"
#include "biham/xxz_model.hpp"

namespace biham {

/// A point on the generic symplectic leaf {H0 = h0, C2 = c2}, in the chart
/// (u1, z1, u2, z2). The v-coordinates are eliminated through the Casimirs.
struct LeafChart {
  std::array<cplx, 4> coords{};
  cplx h0 = 0.0;
  cplx c2 = 0.0;

  cplx u1() const { return coords[0]; }
  cplx z1() const { return coords[1]; }
  cplx u2() const { return coords[2]; }
  cplx z2() const { return coords[3]; }

  /// The coordinates as a Point in Chart::Leaf.
  Point point() const;
};

/// Leaf coordinate indices.
inline constexpr int kLeafU1 = 0, kLeafZ1 = 1, kLeafU2 = 2, kLeafZ2 = 3;

/// v1 = (h0 - c2 - 2 z1^2) / (2 u1), v2 = (h0 + c2 - 2 z2^2) / (2 u2).
Point embed(const LeafChart& leaf);
/// Inverse of embed: keeps (u1, z1, u2, z2) and evaluates the Casimir levels.
LeafChart project(const Point& uv);

/// Pull a uv-chart function back to the leaf (chain rule through embed).
/// The result lives on Chart::Leaf and depends on the fixed levels.
ScalarField pull_back(const ScalarField& f_uv, cplx h0, cplx c2);

// -- restricted tensors and the Nijenhuis operator ------------------------------------

struct RestrictedTensors {
  Mat p;  ///< 4x4, P1 restricted to the leaf
  Mat q;  ///< 4x4, Q restricted to the leaf
};

/// Closed forms, ordering (u1, z1, u2, z2).
RestrictedTensors restricted_tensors(const SymmetricParams& params, const LeafChart& leaf);
/// The same matrices read off as brackets of q_uv / p1_uv between the leaf
/// coordinate functions at embed(leaf). Valid because H0 and C2 are Casimirs.
RestrictedTensors restricted_tensors_from_uv(const SymmetricParams& params,
                                             const LeafChart& leaf);

/// Restricted tensors as bivector fields on Chart::Leaf (entries linear in u).
BivectorField leaf_p_field();
BivectorField leaf_q_field(const SymmetricParams& params);

struct NijenhuisResult {
  Mat closed_form;             ///< printed N* (mutation applies here)
  Mat from_tensors;            ///< P^-1 Q computed numerically
  cplx lambda1 = 0.0;          ///< mu1 + mu2
  cplx lambda2 = 0.0;          ///< mu1 - mu2 + mu3 (u1/u2 + u2/u1)
  std::array<cplx, 4> eigenvalues{};  ///< of closed_form, numerically
  Residual closed_form_match;  ///< |closed_form - from_tensors|
  double spectrum_defect = 0;  ///< worst distance of eigenvalues from {l1, l1, l2, l2}
};

/// Throws Degenerate("eigenvalue collision") if |lambda2 - lambda1| < kEpsCollision.
NijenhuisResult nijenhuis(const SymmetricParams& params, const LeafChart& leaf);

/// Closed-form N* only (no collision guard).
Mat nijenhuis_closed_form(const SymmetricParams& params, const LeafChart& leaf);

// -- auxiliary functions ---------------------------------------------------------------

struct AuxFunctions {
  cplx G = 0.0;       ///< u2/u1 - u1/u2
  cplx F = 0.0;       ///< -2 mu2 + mu3 (u1^2 + u2^2) / (u1 u2)
  cplx L = 0.0;       ///< mu3 (z2 u1^2 + z1 u2^2) - mu2 u1 u2 (z1 + z2)
  cplx theta1 = 0.0;  ///< mu3 u1^2 / 2 - mu2 u1 u2 + mu3 u2^2 / 2
  cplx p1sum = 0.0;   ///< 2 mu1 + mu3 (u1/u2 + u2/u1), the trace of N* over two
};

AuxFunctions aux(const SymmetricParams& params, const LeafChart& leaf);

/// Leaf scalar fields (Chart::Leaf) with exact gradients.
struct LeafFunctions {
  ScalarField zeta1, theta1, xi1, lambda2, xi2, p1sum, G, F, L;
};
LeafFunctions leaf_functions(const SymmetricParams& params);

/// Y = -P d(p1sum) on the leaf, evaluated from the restricted P.
Vec y_field_from_p(const SymmetricParams& params, const LeafChart& leaf);
/// The printed Y = mu3 G (d/dz1 + d/dz2).
Vec y_field_closed_form(const SymmetricParams& params, const LeafChart& leaf);

// -- deformation of the Hamiltonian polynomial ------------------------------------------

struct DeformationResult {
  cplx xi2_algorithmic = 0.0;    ///< L_Y^n H / L_Y^(n+1) H at rho = lambda2
  cplx xi2_closed_form = 0.0;    ///< +L / (mu3 u1 u2 G F)
  cplx xi2_printed = 0.0;        ///< -L / (mu3 u1 u2 G F) as printed
  int order = 0;                 ///< n, the derivative order used in the quotient
  Residual agreement;            ///< |algorithmic - closed form|
  Residual termination;          ///< worst |L_Y^(n+2) H| over the three coefficients
  bool printed_sign_matches = false;
};

/// Runs the deformation algorithm with Taylor-mode iterated Lie derivatives.
/// Throws Degenerate on small G or F and Internal("deformation did not terminate")
/// if no iterate of L_Y vanishes up to order 4.
DeformationResult deformation_xi2(const SymmetricParams& params, const LeafChart& leaf);

/// L_Y H(rho) computed from exact gradients, against the printed factorization
/// 4 mu3 (rho - mu1 - mu2) G L / (u1 u2).
Residual lie_y_factorization(const SymmetricParams& params, const LeafChart& leaf, cplx rho);
/// L_Y^3 H(rho) through the jet route.
Residual lie_y_third(const SymmetricParams& params, const LeafChart& leaf, cplx rho);

/// Values of L_Y^k f for k = 0..4 at the leaf point, f = H0, H1, H2 (rows).
std::array<std::array<cplx, 5>, 3> lie_y_iterates(const SymmetricParams& params,
                                                  const LeafChart& leaf);

// -- Darboux-Nijenhuis chart -------------------------------------------------------------

struct DNChart {
  cplx zeta1 = 0.0;
  cplx xi1 = 0.0;  ///< principal branch of -1/2 log theta1
  cplx lambda2 = 0.0;
  cplx xi2 = 0.0;
};

/// Throws Degenerate("theta degenerate"), ("separation chart degenerate") or
/// ("eigenvalue collision") on the corresponding guards.
DNChart dn_chart(const SymmetricParams& params, const LeafChart& leaf);

/// Bracket matrix of (zeta1, xi1, lambda2, xi2) under the restricted P or Q.
Mat dn_brackets(const SymmetricParams& params, const LeafChart& leaf, bool use_q);
/// The expected canonical forms: J4 for P, diag-blocks scaled by lambda_i for Q.
Mat dn_canonical(const SymmetricParams& params, const LeafChart& leaf, bool use_q);

/// |N* grad f - lambda grad f| for f = zeta1, xi1 (lambda1) and lambda2, xi2 (lambda2).
std::array<Residual, 4> eigenform_residuals(const SymmetricParams& params,
                                            const LeafChart& leaf);

// -- separation relations -----------------------------------------------------------------

struct SeparationResult {
  cplx phi1 = 0.0;
  cplx phi2 = 0.0;
  Residual phi1_residual;
  Residual phi2_residual;
  /// Phi2 with the printed sign of Psi, kept as evidence of the resolution.
  Residual phi2_printed_residual;
};

/// Phi1 = alpha zeta1^2 + H1 + beta H2 + gamma1 H0 (gamma2 = 0), and
/// Phi2 = p xi2^2 + lambda2 H1 + H2 - Psi with p = -2 mu3^2 F^2 G^2,
/// Psi = -lambda2^2 H0 + mu3 F G C2.
SeparationResult separation_residuals(const SymmetricParams& params, const Point& uv);
/// Phi1 only (no chart guards).
SeparationResult separation_phi1(const SymmetricParams& params, const Point& uv);

// -- generalized Lenard diagnostic ---------------------------------------------------------

struct LenardFit {
  cplx c = 0.0;       ///< least-squares c in Q dH1 - P dH2 = c P dH1
  cplx p1sum = 0.0;   ///< for comparison
  Residual residual;  ///< remaining mismatch after the fit
};
LenardFit generalized_lenard_fit(const SymmetricParams& params, const LeafChart& leaf);

}  // namespace biham
