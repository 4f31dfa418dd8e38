#pragma once

#include "sepflow/fields.hpp"
#include "sepflow/grid.hpp"

namespace sepflow {

// Removes the centered-difference interior divergence of a collocated
// velocity field.  The potential solves the composed operator div(grad .)
// built from the same centered stencils as the correction, diagonalized by
// Fourier modes in theta and reduced to tridiagonal sublattice systems in r
// (the wide radial stencil decouples even and odd rows).  Wall rows are
// never modified; the wall-normal flux they carry must already balance for
// the axisymmetric mode to be solvable.
//
// The theta Nyquist mode of the interior velocity is invisible to the
// centered divergence and is filtered out explicitly.
class ProjectionSolver {
 public:
  explicit ProjectionSolver(const AnnulusGrid& g) : grid_(&g) {}

  // In-place projection of the interior rows of v; `dt` scales the returned
  // potential so that the subtracted correction is dt * grad(phi).
  // The potential is reported with area-weighted zero mean.
  ScalarField project(VelocityField& v, Real dt) const;

  // Largest interior divergence after the last call (diagnostics).
  Real achieved_divergence() const { return achieved_; }

 private:
  const AnnulusGrid* grid_;
  mutable Real achieved_ = 0.0;

  void solve_potential(const Array2D& rhs, Array2D& phi) const;
  void apply_correction(VelocityField& v, const Array2D& phi, Real dt) const;
};

}  // namespace sepflow
