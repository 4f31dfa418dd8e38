#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "sepflow/analytic.hpp"
#include "sepflow/fields.hpp"
#include "sepflow/grid.hpp"
#include "sepflow/ode.hpp"
#include "sepflow/projection.hpp"

namespace sepflow {

enum class BoundaryKind { noslip, inflow };
enum class OuterKind { prescribed_tangential, stress_free };

// Near-wall incompressible solver on the annular collar, unit viscosity.
// Explicit two-stage (Heun) momentum update followed by a pressure
// projection that zeroes the interior divergence.
struct SolverConfig {
  AnnulusGrid grid;
  Real dt = 0.0;    // <= 0 picks the diffusive step 0.2 h_min^2
  Real t_end = 1.0;
  BoundaryKind boundary = BoundaryKind::noslip;
  Real lambda0 = 0.0;  // wall-normal inflow speed (inflow boundary only)
  Real beta = 0.0;     // Coriolis parameter, sphere only
  OuterKind outer = OuterKind::prescribed_tangential;
  AngularProfile outer_u;  // prescribed tangential speed at r = R
  int p0_theta_index = 0;  // monitored wall angle
  int snapshot_every = 0;  // snapshot cadence in steps, 0 = never

  Real resolved_dt() const;
  void validate() const;
};

struct SimulationRecord {
  std::vector<Real> times;
  std::vector<BoundaryCoefficients> coeffs;  // wall data at the monitored angle
  std::vector<Real> raw_rhs;   // momentum-derived wall integrand
  std::vector<Real> rhs;       // separation-equation right-hand side
  std::vector<Real> residual;  // |d alpha1/dt - rhs|, centered differences
  std::vector<Real> energy;
  std::vector<Real> max_divergence;
  std::vector<std::pair<Real, VelocityField>> snapshots;
  VelocityField final_state;
  ScalarField final_pressure;

  std::size_t size() const { return times.size(); }
};

class NsSolver {
 public:
  explicit NsSolver(SolverConfig cfg);

  // Installs (and by default projects) the initial state.
  void set_state(const VelocityField& v, bool project_initial = true);
  // Manufactured-solution mode: exact Dirichlet walls, analytic forcing.
  void set_exact_solution(const AnalyticField& exact);

  void step();  // one projected Heun step of the resolved dt
  void advance_to(Real t_target);  // steps, shortening the final one to land
  SimulationRecord run();

  const VelocityField& state() const { return u_; }
  const ScalarField& pressure() const { return p_; }
  Real time() const { return t_; }
  const SolverConfig& config() const { return cfg_; }
  Real energy() const;

 private:
  SolverConfig cfg_;
  ProjectionSolver projector_;
  VelocityField u_;
  ScalarField p_;
  Real t_ = 0.0;
  Real dt_ = 0.0;
  long step_count_ = 0;
  const AnalyticField* exact_ = nullptr;

  void step_by(Real dt);
  void apply_bc(VelocityField& v, Real t) const;
  VelocityField momentum_rhs(const VelocityField& v, Real t) const;
  void check_cfl(const VelocityField& v, Real dt) const;
  void record(SimulationRecord& rec) const;
};

// Single projected step of `state` under `cfg` (the state is taken as-is).
VelocityField step(const VelocityField& state, const SolverConfig& cfg);

// Projects `tentative` onto the discretely divergence-free space; returns
// the corrected field and the pressure potential.  The wall rows of the
// input carry the mass balance and are left untouched.
std::pair<VelocityField, ScalarField> pressure_projection(const VelocityField& tentative,
                                                          const SolverConfig& cfg);

// Max over theta of the gap between the tangential pressure gradient at the
// wall and the tangential wall momentum balance.  First-order quantity for
// this projection scheme.
Real pressure_boundary_residual(const VelocityField& state, const ScalarField& pressure,
                                const SolverConfig& cfg);

struct MmsResult {
  Real linf_ur = 0.0;
  Real linf_utheta = 0.0;
  Real l2 = 0.0;
};

// Runs the solver against a manufactured exact field with the compensating
// analytic forcing; reports the final-time error against the exact field.
MmsResult manufactured_forcing_run(const SolverConfig& cfg, const AnalyticField& exact);

}  // namespace sepflow
