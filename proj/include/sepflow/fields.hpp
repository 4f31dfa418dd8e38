#pragma once

#include "sepflow/grid.hpp"
#include "sepflow/ode.hpp"
#include "sepflow/types.hpp"

namespace sepflow {

// Velocity (equivalently its 1-form) sampled on an AnnulusGrid, stored as
// orthonormal-frame components: ur along d/dr, utheta along (1/s) d/dtheta.
struct VelocityField {
  Array2D ur;
  Array2D utheta;

  static VelocityField zero(const AnnulusGrid& g) {
    return {Array2D::Zero(g.nr, g.ntheta), Array2D::Zero(g.nr, g.ntheta)};
  }
  bool finite() const { return ur.isFinite().all() && utheta.isFinite().all(); }
  Eigen::Index rows() const { return ur.rows(); }
  Eigen::Index cols() const { return ur.cols(); }
};

struct ScalarField {
  Array2D values;

  static ScalarField zero(const AnnulusGrid& g) { return {Array2D::Zero(g.nr, g.ntheta)}; }
  bool finite() const { return values.isFinite().all(); }
};

void check_shape(const VelocityField& f, const AnnulusGrid& g);
void check_shape(const ScalarField& f, const AnnulusGrid& g);

// Elementary derivative fields: centered second order in the interior,
// one-sided second order on the radial edges, periodic wrap in theta.
Array2D d_r(const Array2D& f, Real hr);
Array2D d_rr(const Array2D& f, Real hr);
Array2D d_theta(const Array2D& f, Real ht);
Array2D d_thetatheta(const Array2D& f, Real ht);

// div u = (1/s)(d_r(s ur) + d_theta(utheta))
ScalarField divergence(const VelocityField& f, const AnnulusGrid& g);

// *du = (1/s)(d_r(s utheta) - d_theta(ur))
ScalarField vorticity(const VelocityField& f, const AnnulusGrid& g);

// 90-degree rotation of a 1-form: (ur, utheta) -> (-utheta, ur).
VelocityField hodge_star_1form(const VelocityField& f);

// Wall-normal component of the vector Laplacian,
//   (1/s^2)(d_tt ur - c d_t utheta - s d_r d_t utheta).
ScalarField laplacian_normal(const VelocityField& f, const AnnulusGrid& g);

// Equivalent form of the normal component valid for divergence-free fields,
//   (1/s^2) d_tt ur - (c/s^2) d_t utheta - ric*ur + 2(c/s) d_r ur + d_rr ur,
// kept as a cross-check variant (ric = signed curvature factor).
ScalarField laplacian_normal_divfree(const VelocityField& f, const AnnulusGrid& g);

// Tangential component of the vector Laplacian,
//   -utheta/s^2 + (c/s) d_r utheta + d_rr utheta + (c/s^2) d_t ur - (1/s) d_r d_t ur.
ScalarField laplacian_tangential(const VelocityField& f, const AnnulusGrid& g);

// Tangential component of the covariant convection term,
//   ur d_r utheta + utheta ur c/s + (1/s) utheta d_t utheta.
ScalarField convection_tangential(const VelocityField& f, const AnnulusGrid& g);

// Both frame components of the covariant convection term; the normal one is
//   ur d_r ur + (1/s) utheta d_t ur - (c/s) utheta^2.
VelocityField convection_full(const VelocityField& f, const AnnulusGrid& g);

// grad p in frame components: (d_r p, (1/s) d_t p).
VelocityField pressure_gradient(const ScalarField& p, const AnnulusGrid& g);

// One-sided wall extraction of the separation-equation inputs:
// alpha1, alpha2 from fourth-order stencils, alpha3 second order, eta from a
// fourth-order radial stencil of the centered second theta-difference.
BoundaryCoefficients extract_boundary_coefficients(const VelocityField& f, const AnnulusGrid& g,
                                                   int theta_index);

// Wall condition the identity is evaluated under.
struct WallSpec {
  enum class Kind { noslip, inflow };
  Kind kind = Kind::noslip;
  Real lambda0 = 0.0;  // wall-normal speed for inflow
  Real beta = 0.0;     // Coriolis parameter (inflow case, sphere only)
};

struct IdentityOptions {
  Real bc_tol = 1e-9;   // allowed wall-value deviation from the stated condition
  // Allowed interior divergence per unit of speed (no-slip case); smooth
  // solenoidal data discretizes to O(h^2), so this is a coarse-grid-safe cap.
  Real div_tol = 0.1;
  Real assert_factor = 50.0;  // looseness of the internal substitution check
};

// Both sides of the wall identity at theta node j, plus diagnostics.
//   raw:        the momentum-derived integrand, assembled from discrete
//               Laplacian component fields and one-sided wall derivatives
//   simplified: the ODE right-hand side built from extracted coefficients
//   residual:   raw - simplified (converges to 0 under refinement when the
//               wall/divergence preconditions hold)
//   deltae3_gap: discrepancy of the tangential pressure substitution
//               (1/s) d_t g(Lap u, e1) vs (1/s) d_t d_rr ur at the wall
struct IdentityTerms {
  Real raw = 0.0;
  Real simplified = 0.0;
  Real residual = 0.0;
  Real deltae3_gap = 0.0;
  BoundaryCoefficients coeffs;
};

IdentityTerms boundary_identity_terms(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                      const WallSpec& wall = {},
                                      const IdentityOptions& opts = {});

// No-slip wall identity residual (raw minus simplified integrand).
Real boundary_identity_residual(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                const IdentityOptions& opts = {});

// Inflow/Coriolis variant of the identity residual.
Real coriolis_identity_residual(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                Real lambda0, Real beta, const IdentityOptions& opts = {});

// Largest interior divergence magnitude (radial rows 1..nr-2).
Real max_interior_divergence(const VelocityField& f, const AnnulusGrid& g);

// Kinetic energy (1/2) integral |u|^2 s dr dtheta, trapezoidal in r.
Real kinetic_energy(const VelocityField& f, const AnnulusGrid& g);

}  // namespace sepflow
