#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sepflow/types.hpp"

namespace sepflow {

// Constant-curvature model surfaces in normal polar coordinates (r, theta).
// The metric is dr^2 + s(r)^2 dtheta^2 with s the curvature-dependent
// stretching factor below.
enum class Manifold { sphere, hyperbolic, euclidean };

std::string_view to_string(Manifold kind);
Manifold manifold_from_string(std::string_view name);

// Radial stretching s(r): sin(ar)/a, sinh(ar)/a, or r.  The euclidean case
// is an explicit branch, never a small-a limit.
template <typename Scalar>
Scalar metric_s(Manifold kind, Scalar a, Scalar r) {
  switch (kind) {
    case Manifold::sphere:
      return std::sin(a * r) / a;
    case Manifold::hyperbolic:
      return std::sinh(a * r) / a;
    case Manifold::euclidean:
      return r;
  }
  throw std::logic_error("metric_s: bad manifold kind");
}

// c(r) = ds/dr: cos(ar), cosh(ar), or 1.
template <typename Scalar>
Scalar metric_c(Manifold kind, Scalar a, Scalar r) {
  switch (kind) {
    case Manifold::sphere:
      return std::cos(a * r);
    case Manifold::hyperbolic:
      return std::cosh(a * r);
    case Manifold::euclidean:
      return Scalar(1);
  }
  throw std::logic_error("metric_c: bad manifold kind");
}

struct ManifoldSpec {
  Manifold kind = Manifold::euclidean;
  Real a = 0.0;  // curvature scale, 1/length; a > 0 iff curved

  void validate() const {
    if (kind == Manifold::euclidean) {
      if (a != 0.0) throw PreconditionError("euclidean manifold requires a = 0");
    } else if (!(a > 0.0)) {
      throw PreconditionError("curved manifold requires a > 0");
    }
  }
};

inline ManifoldSpec sphere(Real a) { return {Manifold::sphere, a}; }
inline ManifoldSpec hyperbolic(Real a) { return {Manifold::hyperbolic, a}; }
inline ManifoldSpec euclidean() { return {Manifold::euclidean, 0.0}; }

inline Real metric_s(const ManifoldSpec& m, Real r) { return metric_s(m.kind, m.a, r); }
inline Real metric_c(const ManifoldSpec& m, Real r) { return metric_c(m.kind, m.a, r); }

// Geodesic disc of radius delta around the base point; the flow domain is
// its exterior collar.
struct ObstacleSpec {
  Real delta = 1.0;  // geodesic radius, length

  void validate(const ManifoldSpec& m) const {
    if (!(delta > 0.0)) throw PreconditionError("obstacle radius must be positive");
    if (m.kind == Manifold::sphere && !(m.a * delta < M_PI))
      throw PreconditionError("spherical obstacle requires a*delta < pi");
  }
};

// True when the wall curvature parameter k is not strictly positive
// (sphere with a*delta >= pi/2).  Allowed only behind an explicit override.
inline bool nonpositive_k(const ManifoldSpec& m, const ObstacleSpec& obs) {
  return m.kind == Manifold::sphere && m.a * obs.delta >= M_PI_2;
}

// Combined wall curvature k = c(delta)/s(delta): mixes manifold curvature
// and the geodesic-circle curvature of the wall.
inline Real boundary_curvature_k(const ManifoldSpec& m, const ObstacleSpec& obs) {
  if (m.kind == Manifold::sphere && !(m.a * obs.delta < M_PI))
    throw std::domain_error("boundary_curvature_k: s(delta) vanishes");
  const Real s = metric_s(m, obs.delta);
  if (!(s > 0.0)) throw std::domain_error("boundary_curvature_k: s(delta) vanishes");
  return metric_c(m, obs.delta) / s;
}

// Signed sectional-curvature factor: +a^2 (sphere), -a^2 (hyperbolic), 0.
inline Real ricci_factor(const ManifoldSpec& m) {
  switch (m.kind) {
    case Manifold::sphere:
      return m.a * m.a;
    case Manifold::hyperbolic:
      return -m.a * m.a;
    case Manifold::euclidean:
      return 0.0;
  }
  throw std::logic_error("ricci_factor: bad manifold kind");
}

inline std::string_view to_string(Manifold kind) {
  switch (kind) {
    case Manifold::sphere:
      return "sphere";
    case Manifold::hyperbolic:
      return "hyperbolic";
    case Manifold::euclidean:
      return "euclidean";
  }
  throw std::logic_error("to_string: bad manifold kind");
}

inline Manifold manifold_from_string(std::string_view name) {
  if (name == "sphere") return Manifold::sphere;
  if (name == "hyperbolic") return Manifold::hyperbolic;
  if (name == "euclidean") return Manifold::euclidean;
  throw ConfigError("unknown manifold kind: " + std::string(name));
}

}  // namespace sepflow
