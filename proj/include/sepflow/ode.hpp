#pragma once

#include <optional>
#include <vector>

#include "sepflow/geometry.hpp"
#include "sepflow/types.hpp"

namespace sepflow {

// Wall data driving the separation equation: radial derivatives of the
// tangential velocity at the monitored wall point, plus the geometric and
// forcing parameters they were extracted under.
struct BoundaryCoefficients {
  Real k = 0.0;       // combined wall curvature c(delta)/s(delta), 1/length
  Real alpha1 = 0.0;  // d(u_theta)/dr at the wall, 1/time
  Real alpha2 = 0.0;  // d2(u_theta)/dr2
  Real alpha3 = 0.0;  // d3(u_theta)/dr3
  Real eta = 0.0;     // (1/s(delta)^2) d3(u_theta)/dr dtheta2
  Real lambda0 = 0.0; // prescribed wall-normal inflow speed (0 for no-slip)
  Real beta = 0.0;    // Coriolis parameter (sphere only when nonzero)
  Real a = 0.0;       // curvature scale of the underlying manifold
  Real delta = 0.0;   // obstacle radius
  Manifold kind = Manifold::euclidean;

  // Whether k matches c(delta)/s(delta) for the stored (kind, a, delta).
  // Hand-built instances are checked, not trusted.
  bool curvature_consistent(Real rel_tol = 1e-9) const;
};

// d(alpha1)/dt for the no-slip wall: -k^2 a1 + a3 + 2 k a2 + 2 eta.
Real rhs_plain(const BoundaryCoefficients& c);

// d(alpha1)/dt with wall inflow lambda0 and Coriolis parameter beta:
//   -k(k+lambda0) a1 + (2k-lambda0) a2 + a3 + 2 eta
//   + lambda0 beta (a sin(a delta) - k cos(a delta)).
// Rejects beta != 0 off the sphere.
Real rhs_coriolis(const BoundaryCoefficients& c);

// Time-dependent forcing data (alpha2, alpha3, eta) for the ODE.
class CoefficientSchedule {
 public:
  struct Sample {
    Real alpha2 = 0.0;
    Real alpha3 = 0.0;
    Real eta = 0.0;
  };
  // offset + amplitude * sin(omega t + phase)
  struct Sinusoid {
    Real offset = 0.0;
    Real amplitude = 0.0;
    Real omega = 0.0;
    Real phase = 0.0;
  };
  enum class Kind { constant, polynomial, sinusoid, table };

  static CoefficientSchedule constant(Real alpha2, Real alpha3, Real eta);
  // Polynomial in t, coefficients in ascending order.
  static CoefficientSchedule polynomial(std::vector<Real> alpha2, std::vector<Real> alpha3,
                                        std::vector<Real> eta);
  static CoefficientSchedule sinusoid(Sinusoid alpha2, Sinusoid alpha3, Sinusoid eta);
  // Tabulated samples with linear interpolation; t strictly increasing.
  static CoefficientSchedule table(std::vector<Real> t, std::vector<Real> alpha2,
                                   std::vector<Real> alpha3, std::vector<Real> eta);

  Sample operator()(Real t) const;
  bool covers(Real t0, Real t1) const;
  Kind kind() const { return kind_; }

  // Raw descriptor access for serialization.
  const std::vector<Real>& table_t() const { return t_; }
  const std::vector<Real>& poly_or_table(int component) const;
  const Sinusoid& sinusoid_component(int component) const;

 private:
  CoefficientSchedule() = default;
  Kind kind_ = Kind::constant;
  Sample constant_{};
  std::vector<Real> c2_, c3_, ce_;  // polynomial coefficients or table columns
  Sinusoid s2_{}, s3_{}, se_{};
  std::vector<Real> t_;
};

// Geometric/forcing context for an ODE run.
struct OdeGeometry {
  Real k = 0.0;
  Real a = 0.0;
  Real delta = 0.0;
  Real lambda0 = 0.0;
  Real beta = 0.0;
  Manifold kind = Manifold::euclidean;

  static OdeGeometry from_specs(const ManifoldSpec& m, const ObstacleSpec& obs,
                                Real lambda0 = 0.0, Real beta = 0.0);
};

BoundaryCoefficients make_coefficients(const OdeGeometry& g, Real alpha1,
                                       const CoefficientSchedule::Sample& s);

enum class OdeMode { plain, coriolis };

struct OdeTrace {
  std::vector<Real> times;   // strictly increasing, starts at 0
  std::vector<Real> alpha1;  // same length; alpha1[0] = initial value
  std::vector<Real> rhs;     // right-hand side evaluated at each sample
  OdeMode mode = OdeMode::plain;

  std::size_t size() const { return times.size(); }
};

// Classical fixed-step RK4; the final step is shortened to land on t_end.
// Requires alpha1_0 > 0, dt > 0, t_end > 0, schedule defined on [0, t_end],
// and rate*dt < 1 where rate is the linear decay coefficient of the mode.
OdeTrace integrate(OdeMode mode, Real alpha1_0, const CoefficientSchedule& sched,
                   const OdeGeometry& geom, Real t_end, Real dt);

// First time alpha1 reaches zero (sign change located by linear
// interpolation); empty when alpha1 stays positive.
std::optional<Real> detect_separation(const OdeTrace& trace);

// Long-time limit of alpha1 for constant forcing, requires k(k+lambda0) > 0.
Real asymptotic_fixed_point(const OdeGeometry& g, const CoefficientSchedule::Sample& limit);

enum class StreamlineClass { convexing, parallel, concaving };
StreamlineClass classify_streamlines(Real eta, Real tol = 1e-12);

enum class ProfileClass { poiseuille, before_separation, other };
// rho in (0,1): how small the "small" coefficient must be relative to the
// dominant ones.  A modeling knob, not ground truth.
ProfileClass classify_profile(const BoundaryCoefficients& c, Real rho = 0.1);

std::string_view to_string(StreamlineClass c);
std::string_view to_string(ProfileClass c);

}  // namespace sepflow
