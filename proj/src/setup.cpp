#include "nncert/setup.hpp"

#include <cmath>
#include <numbers>

namespace nncert {

ViscosityLaw law_from_config(const Config& cfg) {
  const std::string kind = cfg.get("law", "kind");
  if (kind == "exponential_m") return ViscosityLaw::exponential_m();
  if (kind == "power_law") return ViscosityLaw::power_law(cfg.get_real("law", "c"), cfg.get_real("law", "alpha"));
  if (kind == "newtonian") return ViscosityLaw::newtonian(cfg.get_real("law", "mu"));
  throw ConfigError("unknown law.kind: " + kind);
}

YoungFunction young_from_config(const Config& cfg) {
  const std::string kind = cfg.get("young", "kind");
  if (kind == "m_exponential") return YoungFunction::m_exponential();
  if (kind == "phi_gamma") return YoungFunction::phi_gamma(cfg.get_real_or("young", "gamma", 2.0));
  if (kind == "n_conjugate_of_m") return YoungFunction::n_conjugate_of_m();
  if (kind == "quadratic_f") return YoungFunction::quadratic_f();
  throw ConfigError("unknown young.kind: " + kind);
}

Grid grid_from_config(const Config& cfg) {
  const int dim = static_cast<int>(cfg.get_int_or("grid", "dim", 1));
  const int n = static_cast<int>(cfg.get_int("grid", "n"));
  if (dim < 1 || dim > 3) throw ConfigError("grid.dim must be 1, 2, or 3");
  if (n < 2) throw ConfigError("grid.n must be at least 2");
  const std::string bc = cfg.get_or("grid", "bc", "periodic");
  if (bc == "periodic") return Grid::unit(dim, n, BoundaryKind::Periodic);
  if (bc == "no_slip") return Grid::unit(dim, n, BoundaryKind::NoSlip);
  throw ConfigError("unknown grid.bc: " + bc);
}

SimSetup sim_from_config(const Config& cfg) {
  SimSetup s;
  s.sim.grid = grid_from_config(cfg);
  s.sim.law = law_from_config(cfg);
  s.sim.end_time = cfg.get_real("time", "end");
  if (!(s.sim.end_time >= 0.0)) throw ConfigError("time.end must be >= 0");
  s.sim.cfl = cfg.get_real_or("time", "cfl", 0.4);
  if (!(s.sim.cfl > 0.0 && s.sim.cfl < 1.0)) throw ConfigError("time.cfl must lie in (0,1)");
  s.sim.snapshot_dt = cfg.get_real_or("time", "snapshot_dt", 0.0);
  s.sim.max_steps = cfg.get_int_or("time", "max_steps", s.sim.max_steps);

  const std::string preset = cfg.get_or("initial", "preset", "rest");
  if (preset == "rest") {
    const double rho0 = cfg.get_real_or("initial", "rho0", 1.0);
    if (!(rho0 >= 0.0)) throw ConfigError("initial.rho0 must be >= 0");
    s.sim.rho0 = [rho0](const Vec3&, double) { return rho0; };
    s.sim.u0 = [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; };
  } else if (preset == "uniform") {
    const double rho0 = cfg.get_real_or("initial", "rho0", 1.0);
    const Vec3 u0 = {cfg.get_real_or("initial", "ux", 0.0), cfg.get_real_or("initial", "uy", 0.0),
                     cfg.get_real_or("initial", "uz", 0.0)};
    s.sim.rho0 = [rho0](const Vec3&, double) { return rho0; };
    s.sim.u0 = [u0](const Vec3&, double) { return u0; };
  } else if (preset == "traveling_wave") {
    const double amplitude = cfg.get_real_or("initial", "amplitude", 0.25);
    const double speed = cfg.get_real_or("initial", "speed", 1.0);
    const ManufacturedSolution ms = make_traveling_wave(amplitude, speed);
    s.manufactured = ms;
    s.perturb = cfg.get_real_or("initial", "perturb", 0.0);
    const double eps = s.perturb;
    s.sim.rho0 = [ms, eps](const Vec3& x, double) {
      return ms.rho(x, 0.0) * (1.0 + eps * std::sin(4.0 * std::numbers::pi * x[0]));
    };
    s.sim.u0 = [ms, eps](const Vec3& x, double) {
      Vec3 u = ms.u(x, 0.0);
      u[0] += eps * std::cos(2.0 * std::numbers::pi * x[0]);
      return u;
    };
  } else {
    throw ConfigError("unknown initial.preset: " + preset);
  }

  const std::string forcing = cfg.get_or("forcing", "kind", "none");
  if (forcing == "mms") {
    if (!s.manufactured) throw ConfigError("forcing.kind=mms requires initial.preset=traveling_wave");
    s.sim.forcing = mms_forcing(*s.manufactured, s.sim.law, s.sim.grid.dim);
  } else if (forcing != "none") {
    throw ConfigError("unknown forcing.kind: " + forcing);
  }
  return s;
}

}  // namespace nncert
