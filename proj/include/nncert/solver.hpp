#ifndef NNCERT_SOLVER_HPP
#define NNCERT_SOLVER_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "nncert/grid.hpp"
#include "nncert/viscosity.hpp"

namespace nncert {

struct FlowState {
  double t = 0.0;
  ScalarField rho;
  VectorField u;
};

struct SimConfig {
  Grid grid;
  ViscosityLaw law = ViscosityLaw::exponential_m();
  double end_time = 1.0;
  double cfl = 0.4;
  VectorFn forcing;      // may be empty (no forcing)
  ScalarFn rho0;
  VectorFn u0;
  double snapshot_dt = 0.0;  // 0 -> only first and last state
  long max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<FlowState> states;
  std::vector<double> dissipation;  // instantaneous int P(|Du|)|Du|^2 at each snapshot
  const FlowState& front() const { return states.front(); }
  const FlowState& back() const { return states.back(); }
};

struct NegativeDensityError : std::runtime_error {
  std::size_t cell;
  double value;
  NegativeDensityError(std::size_t cell, double value)
      : std::runtime_error("step produced negative density"), cell(cell), value(value) {}
};

/// Stable explicit time step for the current state.
double stable_dt(const FlowState& state, const SimConfig& cfg);

/// Advance by exactly dt with the conservative upwind/central scheme. On a
/// negative-density rejection the step is retried on halved substeps, up to
/// 10 halvings, then NegativeDensityError is thrown with the offending cell.
FlowState step(const FlowState& state, const SimConfig& cfg, double dt);

FlowState initial_state(const SimConfig& cfg);

Trajectory run(const SimConfig& cfg);

double dissipation_rate(const FlowState& state, const ViscosityLaw& law);

struct EnergyRow {
  double t = 0.0;
  double kinetic = 0.0;
  double internal = 0.0;
  double dissipation_cum = 0.0;
  double work_cum = 0.0;
  double energy_residual = 0.0;  // defect of the integrated energy inequality; negative values comply
};

std::vector<EnergyRow> energy_report(const Trajectory& traj, const ViscosityLaw& law, const VectorFn& forcing);

/// Exact smooth solution pair used as forcing oracle and strong reference.
struct ManufacturedSolution {
  ScalarFn rho;
  VectorFn u;
};

/// 1D traveling wave rho = 1 + a sin(2 pi (x - speed t)) with the velocity
/// chosen so the mass equation holds identically.
ManufacturedSolution make_traveling_wave(double amplitude, double speed);

/// Forcing that makes (rho_s, u_s) an exact solution of the momentum
/// equation. Space/time derivatives are taken by pointwise fourth-order
/// central differences with step h_aux, so the result carries an O(h_aux^4)
/// bias. The pair must satisfy the mass equation on its own; this is checked
/// on samples against residual_tol.
VectorFn mms_forcing(const ManufacturedSolution& ms, const ViscosityLaw& law, int dim, double h_aux = 1e-3,
                     double residual_tol = 1e-10);

}  // namespace nncert

#endif
