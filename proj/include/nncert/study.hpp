#ifndef NNCERT_STUDY_HPP
#define NNCERT_STUDY_HPP

#include "nncert/rel_energy.hpp"
#include "nncert/solver.hpp"

namespace nncert {

struct StudyParams {
  ViscosityLaw law = ViscosityLaw::exponential_m();
  int dim = 1;
  double amplitude = 0.25;
  double speed = 1.0;
  double end_time = 0.02;
  double cfl = 0.4;
  double snapshot_dt = 0.0;
  double perturb = 0.0;  // initial-data perturbation amplitude
};

Trajectory run_manufactured(const StudyParams& p, int n, const ManufacturedSolution& ms, const VectorFn& f);

struct ConvergenceLevel {
  int n = 0;
  double h = 0.0;
  double err_rho = 0.0;   // L2 error vs the manufactured density at end time
  double err_u = 0.0;     // L2 error vs the manufactured velocity at end time
  double sei_max = 0.0;   // max energy-ledger defect along the run
  double max_energy = 0.0;  // max relative energy vs the manufactured reference
  double dt0 = 0.0;       // stable step at the initial state
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  double order_rho = 0.0;  // least-squares slope of log err vs log h
  double order_u = 0.0;
  double order_energy = 0.0;
  bool sei_monotone = false;  // sei_max decreases under refinement
};

/// N-doubling manufactured-solution study: `levels` grids starting at base_n.
ConvergenceStudy run_convergence_study(const StudyParams& p, int base_n, int levels);

struct EnergySeries {
  std::vector<double> t;
  std::vector<double> energy;
  double e0 = 0.0;
  double max_energy = 0.0;
};

/// Relative energy of a manufactured-solution run against the manufactured
/// reference itself, snapshot by snapshot.
EnergySeries energy_vs_reference(const Trajectory& traj, const ReferenceSolution& ref);

}  // namespace nncert

#endif
