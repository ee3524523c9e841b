#include "nncert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nncert {

namespace {

struct StepReject {
  std::size_t cell;
  double value;
};

// One explicit update attempt; returns the offending cell on a negative
// density instead of the new state.
std::optional<FlowState> attempt_step(const FlowState& state, const SimConfig& cfg, double dt, StepReject& reject) {
  const Grid& g = cfg.grid;
  const int dim = g.dim;
  const std::size_t nc = g.cells();

  std::vector<double> div_rho(nc, 0.0);
  std::array<std::vector<double>, 3> div_m;
  std::array<std::vector<double>, 3> m;
  for (int e = 0; e < dim; ++e) {
    div_m[e].assign(nc, 0.0);
    m[e].resize(nc);
    for (std::size_t c = 0; c < nc; ++c) m[e][c] = state.rho.v[c] * state.u.comp[e][c];
  }

  // Upwind mass and momentum fluxes, accumulated per face so conserved
  // quantities telescope exactly.
  for (int d = 0; d < dim; ++d) {
    const double invh = 1.0 / g.h[d];
    const int nd = g.n[d];
    for (std::size_t c = 0; c < nc; ++c) {
      auto idx = g.unflatten(c);
      const int i = idx[d];
      if (g.bc == BoundaryKind::NoSlip && i == nd - 1) continue;  // wall face carries no flux
      auto idxn = idx;
      idxn[d] = (i + 1) % nd;
      const std::size_t cn = g.flatten(idxn);
      const double uface = 0.5 * (state.u.comp[d][c] + state.u.comp[d][cn]);
      const std::size_t up = uface > 0.0 ? c : cn;
      const double frho = state.rho.v[up] * uface;
      div_rho[c] += frho * invh;
      div_rho[cn] -= frho * invh;
      for (int e = 0; e < dim; ++e) {
        const double fm = m[e][up] * uface;
        div_m[e][c] += fm * invh;
        div_m[e][cn] -= fm * invh;
      }
    }
  }

  VectorField grad_p = grad_scalar(state.rho);  // isothermal pressure p = rho
  VectorField visc = div_tensor([&] {
    TensorField du = sym_grad(state.u);
    TensorField s = TensorField::zeros(g);
    for (std::size_t c = 0; c < nc; ++c) {
      const Tensor3 sc = stress(cfg.law, du.at(c));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s.comp[i][j][c] = sc(i, j);
    }
    s.symmetric = true;
    return s;
  }());

  FlowState next;
  next.t = state.t + dt;
  next.rho = ScalarField::zeros(g);
  next.u = VectorField::zeros(g);
  for (std::size_t c = 0; c < nc; ++c) {
    const double r = state.rho.v[c] - dt * div_rho[c];
    if (r < 0.0) {
      reject = {c, r};
      return std::nullopt;
    }
    next.rho.v[c] = r;
  }
  for (std::size_t c = 0; c < nc; ++c) {
    Vec3 f{0.0, 0.0, 0.0};
    if (cfg.forcing) f = cfg.forcing(g.center(c), state.t);
    for (int e = 0; e < dim; ++e) {
      const double mnew = m[e][c] + dt * (-div_m[e][c] - grad_p.comp[e][c] + visc.comp[e][c] + state.rho.v[c] * f[e]);
      next.u.comp[e][c] = next.rho.v[c] > 1e-300 ? mnew / next.rho.v[c] : 0.0;
    }
  }
  return next;
}

}  // namespace

double stable_dt(const FlowState& state, const SimConfig& cfg) {
  const Grid& g = cfg.grid;
  double umax = 0.0;
  for (int d = 0; d < g.dim; ++d)
    for (double v : state.u.comp[d]) umax = std::max(umax, std::abs(v));
  double pmax = 0.0;
  TensorField du = sym_grad(state.u);
  for (std::size_t c = 0; c < g.cells(); ++c) pmax = std::max(pmax, cfg.law.value(du.at(c).frobenius()));
  double hmin = g.h[0];
  for (int d = 1; d < g.dim; ++d) hmin = std::min(hmin, g.h[d]);
  // Unit isothermal sound speed; explicit viscous stability bound.
  const double dt_adv = hmin / (umax + 1.0);
  const double dt_visc = hmin * hmin / (2.0 * g.dim * std::max(pmax, 1e-12));
  return cfg.cfl * std::min(dt_adv, dt_visc);
}

FlowState step(const FlowState& state, const SimConfig& cfg, double dt) {
  StepReject reject{0, 0.0};
  for (int halvings = 0; halvings <= 10; ++halvings) {
    const long nsub = 1L << halvings;
    const double sub_dt = dt / nsub;
    FlowState cur = state;
    bool ok = true;
    for (long k = 0; k < nsub; ++k) {
      auto next = attempt_step(cur, cfg, sub_dt, reject);
      if (!next) {
        ok = false;
        break;
      }
      cur = std::move(*next);
    }
    if (ok) {
      cur.t = state.t + dt;  // avoid accumulated roundoff across substeps
      return cur;
    }
  }
  throw NegativeDensityError(reject.cell, reject.value);
}

FlowState initial_state(const SimConfig& cfg) {
  if (!cfg.rho0 || !cfg.u0) throw std::invalid_argument("SimConfig: initial data required");
  FlowState s;
  s.t = 0.0;
  s.rho = discretize(cfg.rho0, cfg.grid, 0.0);
  s.u = discretize(cfg.u0, cfg.grid, 0.0);
  for (double r : s.rho.v)
    if (r < 0.0) throw std::invalid_argument("SimConfig: initial density must be non-negative");
  if (integrate(s.rho) <= 0.0) throw std::invalid_argument("SimConfig: initial mass must be positive");
  return s;
}

double dissipation_rate(const FlowState& state, const ViscosityLaw& law) {
  TensorField du = sym_grad(state.u);
  ScalarField d = ScalarField::zeros(state.rho.grid);
  for (std::size_t c = 0; c < d.v.size(); ++c) {
    const Tensor3 t = du.at(c);
    const double n = t.frobenius();
    d.v[c] = n == 0.0 ? 0.0 : law.value(n) * n * n;
  }
  return integrate(d);
}

Trajectory run(const SimConfig& cfg) {
  if (!(cfg.end_time >= 0.0)) throw std::invalid_argument("SimConfig: end_time must be >= 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) throw std::invalid_argument("SimConfig: cfl must lie in (0,1)");
  Trajectory traj;
  FlowState state = initial_state(cfg);
  traj.states.push_back(state);
  traj.dissipation.push_back(dissipation_rate(state, cfg.law));
  if (cfg.end_time == 0.0) return traj;

  const double snap = cfg.snapshot_dt > 0.0 ? cfg.snapshot_dt : cfg.end_time;
  double next_snap = std::min(snap, cfg.end_time);
  long steps = 0;
  while (state.t < cfg.end_time - 1e-14) {
    double dt = std::min(stable_dt(state, cfg), next_snap - state.t);
    state = step(state, cfg, dt);
    if (state.t >= next_snap - 1e-13) {
      state.t = next_snap;
      traj.states.push_back(state);
      traj.dissipation.push_back(dissipation_rate(state, cfg.law));
      next_snap = std::min(next_snap + snap, cfg.end_time);
    }
    if (++steps > cfg.max_steps) throw std::runtime_error("run: step budget exhausted");
  }
  return traj;
}

std::vector<EnergyRow> energy_report(const Trajectory& traj, const ViscosityLaw& law, const VectorFn& forcing) {
  std::vector<EnergyRow> rows;
  rows.reserve(traj.states.size());
  auto work_rate = [&](const FlowState& s) {
    if (!forcing) return 0.0;
    double acc = 0.0;
    const Grid& g = s.rho.grid;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const Vec3 f = forcing(g.center(c), s.t);
      double dot = 0.0;
      for (int d = 0; d < g.dim; ++d) dot += f[d] * s.u.comp[d][c];
      acc += s.rho.v[c] * dot;
    }
    return acc * g.cell_measure();
  };
  auto energy = [&](const FlowState& s, EnergyRow& row) {
    double kin = 0.0, internal = 0.0;
    const Grid& g = s.rho.grid;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      double u2 = 0.0;
      for (int d = 0; d < g.dim; ++d) u2 += s.u.comp[d][c] * s.u.comp[d][c];
      kin += 0.5 * s.rho.v[c] * u2;
      internal += s.rho.v[c] > 0.0 ? s.rho.v[c] * std::log(s.rho.v[c]) : 0.0;
    }
    row.kinetic = kin * g.cell_measure();
    row.internal = internal * g.cell_measure();
  };

  double prev_diss = 0.0, prev_work = 0.0, prev_t = 0.0;
  double diss_cum = 0.0, work_cum = 0.0, e0 = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const FlowState& s = traj.states[k];
    EnergyRow row;
    row.t = s.t;
    energy(s, row);
    const double diss = traj.dissipation[k];
    const double work = work_rate(s);
    if (k == 0) {
      e0 = row.kinetic + row.internal;
    } else {
      const double dt = s.t - prev_t;
      diss_cum += 0.5 * dt * (prev_diss + diss);
      work_cum += 0.5 * dt * (prev_work + work);
    }
    row.dissipation_cum = diss_cum;
    row.work_cum = work_cum;
    row.energy_residual = row.kinetic + row.internal + diss_cum - work_cum - e0;
    prev_diss = diss;
    prev_work = work;
    prev_t = s.t;
    rows.push_back(row);
  }
  return rows;
}

ManufacturedSolution make_traveling_wave(double amplitude, double speed) {
  if (!(std::abs(amplitude) < 1.0)) throw std::invalid_argument("traveling wave amplitude must keep density positive");
  ManufacturedSolution ms;
  ms.rho = [amplitude, speed](const Vec3& x, double t) {
    return 1.0 + amplitude * std::sin(2.0 * std::numbers::pi * (x[0] - speed * t));
  };
  ms.u = [amplitude, speed](const Vec3& x, double t) {
    const double r = 1.0 + amplitude * std::sin(2.0 * std::numbers::pi * (x[0] - speed * t));
    return Vec3{speed * (1.0 - 1.0 / r), 0.0, 0.0};
  };
  return ms;
}

namespace {

// Pointwise fourth-order central difference of a scalar map.
template <class F>
double d4(const F& f, double x, double h) {
  // Grouped as symmetric differences so a constant f yields exactly 0.
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

}  // namespace

VectorFn mms_forcing(const ManufacturedSolution& ms, const ViscosityLaw& law, int dim, double h_aux,
                     double residual_tol) {
  auto rho_at = [rho = ms.rho](Vec3 x, double t) { return rho(x, t); };
  auto u_at = [u = ms.u](Vec3 x, double t, int e) { return u(x, t)[static_cast<std::size_t>(e)]; };

  auto du_tensor = [=](const Vec3& x, double t) {
    Tensor3 du;
    for (int e = 0; e < dim; ++e)
      for (int d = 0; d < dim; ++d) {
        const double g = d4([&](double s) {
          Vec3 y = x;
          y[static_cast<std::size_t>(d)] = s;
          return u_at(y, t, e);
        }, x[static_cast<std::size_t>(d)], h_aux);
        du(e, d) += 0.5 * g;
        du(d, e) += 0.5 * g;
      }
    du.symmetric = true;
    return du;
  };

  // The pair must already satisfy the mass equation; sample-check it so an
  // incompatible ansatz fails loudly instead of polluting the forcing.
  {
    double worst = 0.0;
    for (int i = 0; i < 24; ++i) {
      Vec3 x{0.0, 0.0, 0.0};
      for (int d = 0; d < dim; ++d) x[static_cast<std::size_t>(d)] = 0.017 + 0.96 * ((i * 37 + 11 * d) % 24) / 24.0;
      const double t = 0.31 * i / 24.0;
      double resid = d4([&](double s) { return rho_at(x, s); }, t, h_aux);
      for (int d = 0; d < dim; ++d)
        resid += d4([&](double s) {
          Vec3 y = x;
          y[static_cast<std::size_t>(d)] = s;
          return rho_at(y, t) * u_at(y, t, d);
        }, x[static_cast<std::size_t>(d)], h_aux);
      worst = std::max(worst, std::abs(resid));
    }
    if (worst > residual_tol)
      throw std::invalid_argument("mms_forcing: manufactured pair violates the mass equation, residual " +
                                  std::to_string(worst));
  }

  return [=](const Vec3& x, double t) {
    const double r = rho_at(x, t);
    Vec3 f{0.0, 0.0, 0.0};
    for (int e = 0; e < dim; ++e) {
      double val = d4([&](double s) { return u_at(x, s, e); }, t, h_aux);  // du/dt
      for (int d = 0; d < dim; ++d) {
        const double dude = d4([&](double s) {
          Vec3 y = x;
          y[static_cast<std::size_t>(d)] = s;
          return u_at(y, t, e);
        }, x[static_cast<std::size_t>(d)], h_aux);
        val += u_at(x, t, d) * dude;
      }
      const double drho = d4([&](double s) {
        Vec3 y = x;
        y[static_cast<std::size_t>(e)] = s;
        return rho_at(y, t);
      }, x[static_cast<std::size_t>(e)], h_aux);
      val += drho / r;
      double div_s = 0.0;
      for (int d = 0; d < dim; ++d) {
        div_s += d4([&](double s) {
          Vec3 y = x;
          y[static_cast<std::size_t>(d)] = s;
          return stress(law, du_tensor(y, t))(e, d);
        }, x[static_cast<std::size_t>(d)], h_aux);
      }
      val -= div_s / r;
      f[static_cast<std::size_t>(e)] = val;
    }
    return f;
  };
}

}  // namespace nncert
