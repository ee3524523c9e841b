#include "nncert/study.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nncert {

namespace {

double l2_error_scalar(const ScalarField& a, const ScalarFn& exact, double t) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.grid.cells(); ++c) {
    const double d = a.v[c] - exact(a.grid.center(c), t);
    acc += d * d;
  }
  return std::sqrt(acc * a.grid.cell_measure());
}

double l2_error_vector(const VectorField& a, const VectorFn& exact, double t) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.grid.cells(); ++c) {
    const Vec3 e = exact(a.grid.center(c), t);
    for (int d = 0; d < a.grid.dim; ++d) {
      const double dd = a.comp[d][c] - e[static_cast<std::size_t>(d)];
      acc += dd * dd;
    }
  }
  return std::sqrt(acc * a.grid.cell_measure());
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Trajectory run_manufactured(const StudyParams& p, int n, const ManufacturedSolution& ms, const VectorFn& f) {
  SimConfig cfg;
  cfg.grid = Grid::unit(p.dim, n, BoundaryKind::Periodic);
  cfg.law = p.law;
  cfg.end_time = p.end_time;
  cfg.cfl = p.cfl;
  cfg.snapshot_dt = p.snapshot_dt;
  cfg.forcing = f;
  const double eps = p.perturb;
  cfg.rho0 = [&ms, eps](const Vec3& x, double) {
    return ms.rho(x, 0.0) * (1.0 + eps * std::sin(4.0 * std::numbers::pi * x[0]));
  };
  cfg.u0 = [&ms, eps](const Vec3& x, double) {
    Vec3 u = ms.u(x, 0.0);
    u[0] += eps * std::cos(2.0 * std::numbers::pi * x[0]);
    return u;
  };
  return run(cfg);
}

ConvergenceStudy run_convergence_study(const StudyParams& p, int base_n, int levels) {
  if (levels < 2) throw std::invalid_argument("run_convergence_study: need at least 2 levels");
  const ManufacturedSolution ms = make_traveling_wave(p.amplitude, p.speed);
  const VectorFn f = mms_forcing(ms, p.law, p.dim);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);

  ConvergenceStudy study;
  for (int lvl = 0, n = base_n; lvl < levels; ++lvl, n *= 2) {
    const Trajectory traj = run_manufactured(p, n, ms, f);
    ConvergenceLevel level;
    level.n = n;
    level.h = 1.0 / n;
    level.err_rho = l2_error_scalar(traj.back().rho, ms.rho, traj.back().t);
    level.err_u = l2_error_vector(traj.back().u, ms.u, traj.back().t);
    for (const auto& row : energy_report(traj, p.law, f))
      level.sei_max = std::max(level.sei_max, std::abs(row.energy_residual));
    level.max_energy = energy_vs_reference(traj, ref).max_energy;
    {
      SimConfig c;
      c.grid = Grid::unit(p.dim, n, BoundaryKind::Periodic);
      c.law = p.law;
      c.cfl = p.cfl;
      level.dt0 = stable_dt(traj.front(), c);
    }
    study.levels.push_back(level);
  }

  std::vector<double> lh, lr, lu, le;
  for (const auto& lvl : study.levels) {
    lh.push_back(std::log(lvl.h));
    lr.push_back(std::log(lvl.err_rho));
    lu.push_back(std::log(lvl.err_u));
    le.push_back(std::log(std::max(lvl.max_energy, 1e-300)));
  }
  study.order_rho = fit_slope(lh, lr);
  study.order_u = fit_slope(lh, lu);
  study.order_energy = fit_slope(lh, le);
  study.sei_monotone = true;
  for (std::size_t i = 1; i < study.levels.size(); ++i)
    if (!(study.levels[i].sei_max < study.levels[i - 1].sei_max)) study.sei_monotone = false;
  return study;
}

EnergySeries energy_vs_reference(const Trajectory& traj, const ReferenceSolution& ref) {
  EnergySeries series;
  const Grid& g = traj.front().rho.grid;
  for (const FlowState& s : traj.states) {
    const double e = relative_energy(s, ref.at(g, s.t));
    series.t.push_back(s.t);
    series.energy.push_back(e);
    series.max_energy = std::max(series.max_energy, e);
  }
  series.e0 = series.energy.front();
  return series;
}

}  // namespace nncert
