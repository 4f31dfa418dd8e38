#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sepflow/fields.hpp"
#include "sepflow/geometry.hpp"
#include "sepflow/grid.hpp"

namespace sepflow {

// Closed-form velocity fields with exact partial derivatives.  They serve as
// oracles for the discrete operators, as manufactured solutions for the
// solver, and as reproducible initial data.

// Radial profile with analytic derivatives up to fourth order.
class RadialProfile {
 public:
  // sum_k coeffs[k] (r - r0)^k
  static RadialProfile poly(std::vector<Real> coeffs, Real r0);
  // exp(-((r - r0)/width)^2); unit value and zero slope at r0
  static RadialProfile gaussian(Real r0, Real width);

  // value and derivatives 1..4 at r
  std::array<Real, 5> eval(Real r) const;

 private:
  enum class Kind { poly, gaussian } kind_ = Kind::poly;
  std::vector<Real> coeffs_;
  Real r0_ = 0.0;
  Real width_ = 1.0;
};

// Truncated Fourier profile in theta: mean + sum_m (a_m cos + b_m sin).
// Doubles as the outer-wall tangential velocity descriptor.
struct AngularProfile {
  Real mean = 0.0;
  std::vector<Real> cos_coeff;  // cos((m+1) theta) amplitudes
  std::vector<Real> sin_coeff;

  static AngularProfile constant(Real v) { return {v, {}, {}}; }

  Real value(Real theta) const { return eval(theta)[0]; }
  // value and theta-derivatives 1..3
  std::array<Real, 4> eval(Real theta) const;
};

struct TimeProfile {
  enum class Kind { constant, exponential, sine };
  Kind kind = Kind::constant;
  Real scale = 1.0;
  Real rate = 0.0;   // exponential: scale * exp(rate t)
  Real omega = 0.0;  // sine: scale * sin(omega t + phase)
  Real phase = 0.0;

  static TimeProfile steady(Real s = 1.0) { return {Kind::constant, s, 0, 0, 0}; }
  static TimeProfile decay(Real s, Real rate) { return {Kind::exponential, s, rate, 0, 0}; }
  static TimeProfile wave(Real s, Real omega, Real phase = 0) {
    return {Kind::sine, s, 0, omega, phase};
  }

  Real value(Real t) const;
  Real derivative(Real t) const;
};

// Velocity components and partials at one point.  Suffixes: r = d/dr,
// th = d/dtheta, time = d/dt.
struct FieldJet {
  Real ur = 0, ur_r = 0, ur_rr = 0, ur_th = 0, ur_thth = 0, ur_rth = 0, ur_time = 0;
  Real ut = 0, ut_r = 0, ut_rr = 0, ut_rrr = 0, ut_th = 0, ut_rth = 0, ut_rthth = 0, ut_time = 0;

  FieldJet& operator+=(const FieldJet& o);
};

class AnalyticField {
 public:
  struct Term {
    RadialProfile radial;
    AngularProfile angular;
    TimeProfile time;
  };

  explicit AnalyticField(ManifoldSpec m) : manifold_(m) {}

  // Stream-term contribution: ur = (1/s) d_theta psi, utheta = -d_r psi with
  // psi = T(t) P(r) Q(theta).  Divergence-free by construction.
  AnalyticField& add_stream(Term term);
  // Direct component contributions u = T P Q on one frame component.
  AnalyticField& add_ur(Term term);
  AnalyticField& add_utheta(Term term);

  FieldJet jet(Real r, Real theta, Real t) const;
  VelocityField sample(const AnnulusGrid& g, Real t = 0.0) const;
  const ManifoldSpec& manifold() const { return manifold_; }
  // Multiply every term's time profile by `factor`.
  AnalyticField& scale(Real factor);

 private:
  ManifoldSpec manifold_;
  std::vector<Term> stream_, ur_, utheta_;
};

// Exact frame-component values of the differential operators at one point.
struct OperatorJet {
  Real div = 0, vort = 0, lap_n = 0, lap_t = 0, conv_r = 0, conv_t = 0;
};
OperatorJet exact_operators(const ManifoldSpec& m, Real r, const FieldJet& jet);

// Momentum forcing that makes `jet` an exact solution of the viscous system
// with Coriolis parameter beta: F = u_t + conv(u) - Lap(u) - 2 ric u + beta c(r) *u.
struct ForcingJet {
  Real fr = 0, ft = 0;
};
ForcingJet mms_forcing(const ManifoldSpec& m, Real beta, Real r, const FieldJet& jet);

// Exact wall coefficients of an analytic field at theta node j.
BoundaryCoefficients exact_wall_coefficients(const AnalyticField& f, const AnnulusGrid& g, int j,
                                             Real t = 0.0);

// Smooth random stream-function field with no-slip inner wall (the stream
// profile carries an (r-delta)^2 factor).  Reproducible from the seed.
AnalyticField manufactured_noslip(const ManifoldSpec& m, Real delta, Real R, std::uint64_t seed,
                                  int max_mode = 3);

// Exact-inflow manufactured field: radial bump lambda0 at the wall with zero
// slope, plus a no-slip stream part.  Its divergence defect is independent
// of theta, which is what the inflow wall identity requires.
AnalyticField manufactured_inflow(const ManifoldSpec& m, Real delta, Real R, Real lambda0,
                                  std::uint64_t seed, int max_mode = 3);

// Divergence-free field matching no-slip at r = delta and the prescribed
// tangential profile (u_r = 0) at r = R; smooth start for driven runs.
AnalyticField driven_initial(const ManifoldSpec& m, Real delta, Real R,
                             const AngularProfile& outer_u);

}  // namespace sepflow
