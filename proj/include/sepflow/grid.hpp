#pragma once

#include <cmath>

#include "sepflow/geometry.hpp"
#include "sepflow/types.hpp"

namespace sepflow {

// Uniform collocated grid on the annular collar delta <= r <= R, theta
// periodic on [0, 2*pi).  Radial node 0 sits exactly on the wall r = delta.
struct AnnulusGrid {
  ManifoldSpec manifold;
  ObstacleSpec obstacle;
  Real outer_radius = 0.0;  // R
  int nr = 0;
  int ntheta = 0;
  Real hr = 0.0;
  Real htheta = 0.0;
  Array1D r;  // radial nodes, r[0] = delta
  Array1D s;  // metric stretch s(r[i])
  Array1D c;  // ds/dr at r[i]

  AnnulusGrid() = default;

  AnnulusGrid(ManifoldSpec m, ObstacleSpec obs, Real R, int nr_, int ntheta_)
      : manifold(m), obstacle(obs), outer_radius(R), nr(nr_), ntheta(ntheta_) {
    manifold.validate();
    obstacle.validate(manifold);
    if (nr < 8 || ntheta < 8) throw PreconditionError("grid needs at least 8x8 nodes");
    if (!(R > obstacle.delta)) throw PreconditionError("outer radius must exceed obstacle radius");
    if (manifold.kind == Manifold::sphere && !(manifold.a * R < M_PI))
      throw PreconditionError("spherical annulus requires a*R < pi");
    hr = (R - obstacle.delta) / (nr - 1);
    htheta = 2.0 * M_PI / ntheta;
    r.resize(nr);
    s.resize(nr);
    c.resize(nr);
    for (int i = 0; i < nr; ++i) {
      r[i] = obstacle.delta + i * hr;
      s[i] = metric_s(manifold, r[i]);
      c[i] = metric_c(manifold, r[i]);
    }
  }

  Real theta(int j) const { return j * htheta; }
  int jp(int j) const { return j + 1 == ntheta ? 0 : j + 1; }
  int jm(int j) const { return j == 0 ? ntheta - 1 : j - 1; }

  Real wall_curvature() const { return boundary_curvature_k(manifold, obstacle); }

  // Smallest physical node spacing (radial vs arc length), the CFL scale.
  Real min_spacing() const {
    const Real smin = s.minCoeff();
    return std::min(hr, smin * htheta);
  }

  bool same_shape(const AnnulusGrid& o) const { return nr == o.nr && ntheta == o.ntheta; }
};

}  // namespace sepflow
