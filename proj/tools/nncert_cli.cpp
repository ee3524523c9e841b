#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nncert/setup.hpp"
#include "nncert/study.hpp"

namespace fs = std::filesystem;
using namespace nncert;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitPass = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "configuration file")->required();
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--tol-scale", o.tol_scale, "multiplier applied to certificate tolerances");
}

void write_manifest(const fs::path& dir, const std::string& command, const CommonOpts& o,
                    const std::string& summary, double wall_seconds) {
  const fs::path tmp = dir / "manifest.txt.tmp";
  {
    std::ofstream out(tmp);
    out << "command=" << command << "\n"
        << "config=" << o.config << "\n"
        << "seed=" << o.seed << "\n"
        << "out=" << dir.string() << "\n"
        << "version=" << kVersion << "\n"
        << "wall_seconds=" << format_full(wall_seconds) << "\n"
        << "summary=" << summary << "\n";
  }
  fs::rename(tmp, dir / "manifest.txt");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> z(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) z[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  return z;
}

void write_snapshots(const fs::path& dir, const Trajectory& traj) {
  for (const FlowState& s : traj.states) {
    char tag[32];
    std::snprintf(tag, sizeof tag, "%.6f", s.t);
    write_field_csv(dir / (std::string("rho_t") + tag + ".csv"), s.rho);
    for (int d = 0; d < s.rho.grid.dim; ++d)
      write_field_csv(dir / (std::string("u") + std::to_string(d) + "_t" + tag + ".csv"),
                      ScalarField{s.rho.grid, s.u.comp[static_cast<std::size_t>(d)]});
  }
}

void write_energy_csv(const fs::path& path, const std::vector<EnergyRow>& rows) {
  std::ofstream out(path);
  out << "t,kinetic,internal,dissipation_cum,work_cum,sei_residual\n";
  for (const auto& r : rows)
    out << format_full(r.t) << ',' << format_full(r.kinetic) << ',' << format_full(r.internal) << ','
        << format_full(r.dissipation_cum) << ',' << format_full(r.work_cum) << ','
        << format_full(r.energy_residual) << "\n";
}

StudyParams study_params_from(const Config& cfg, const SimSetup& setup) {
  StudyParams p;
  p.law = setup.sim.law;
  p.dim = setup.sim.grid.dim;
  p.amplitude = cfg.get_real_or("initial", "amplitude", 0.25);
  p.speed = cfg.get_real_or("initial", "speed", 1.0);
  p.end_time = setup.sim.end_time;
  p.cfl = setup.sim.cfl;
  p.snapshot_dt = setup.sim.snapshot_dt;
  p.perturb = setup.perturb;
  return p;
}

int cmd_check_law(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const ViscosityLaw law = law_from_config(cfg);
  const long budget = cfg.get_int_or("samples", "budget", 100'000);
  const double lo = cfg.get_real_or("samples", "entry_lo", -5.0);
  const double hi = cfg.get_real_or("samples", "entry_hi", 5.0);
  cfg.reject_unknown();

  const double z_hi = std::min(30.0, law.domain_max());
  CertificateReport report = certify_pointwise_conditions(law, log_grid(1e-6, z_hi, 400), 1e-10 * o.tol_scale);

  if (law.q_claimed()) {
    const double q = *law.q_claimed();
    const MonotonicityCertificate mono = certify_monotonicity_exponent(law, q, budget, lo, hi, o.seed);
    report.add(CheckEntry::make("monotonicity_min_ratio", mono.c_min, 0.0, -mono.c_min,
                                "q=" + format_full(q) + " samples=" + std::to_string(mono.evaluated)));
    report.add(CheckEntry::make("monotonicity_nonpositive_samples", static_cast<double>(mono.nonpositive),
                                0.0, static_cast<double>(mono.nonpositive)));
    const double fitted = fit_pairing_exponent(law, budget, lo, hi, o.seed);
    // One-sided: the small-separation envelope must not outgrow the claimed
    // exponent. Laws with a quadratic core legitimately fit below q.
    report.add(CheckEntry::make("fitted_pairing_exponent", fitted, 0.5, fitted - q,
                                "claimed q=" + format_full(q) + " (envelope slope <= q)"));
  }
  if (law.alpha_lower() || law.kind() == LawKind::PowerLaw) {
    const CertificateReport chain = certify_growth_chain(law, budget, lo, hi, o.seed);
    for (const auto& e : chain.entries) report.add(e);
  }
  if (law.kind() == LawKind::ExponentialM) {
    const CertificateReport decomp = certify_exponential_decomposition(law, 1e-6, 30.0, 1000, o.tol_scale);
    for (const auto& e : decomp.entries) report.add(e);
  }

  fs::create_directories(o.out);
  report.write_csv(fs::path(o.out) / "law_report.csv");
  const bool pass = report.all_pass();
  write_manifest(o.out, "check-law", o,
                 pass ? "pass" : ("fail:" + report.first_failure()->name), watch.seconds());
  return pass ? kExitPass : kExitCertFail;
}

int cmd_conjugate(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const YoungFunction f = young_from_config(cfg);
  const double y_lo = cfg.get_real_or("tabulate", "y_lo", 1e-3);
  const double y_hi = cfg.get_real_or("tabulate", "y_hi", 1e3);
  const int points = static_cast<int>(cfg.get_int_or("tabulate", "points", 200));
  cfg.reject_unknown();

  const YoungFunction table = tabulate_conjugate(f, y_lo, y_hi, points);
  fs::create_directories(o.out);
  {
    std::ofstream out(fs::path(o.out) / "conjugate.csv");
    out << "z,value\n";
    for (std::size_t i = 0; i < table.breakpoints().size(); ++i)
      out << format_full(table.breakpoints()[i]) << ',' << format_full(table.values()[i]) << "\n";
  }

  bool pass = true;
  std::string summary = "tabulated";
  if (f.kind() == YoungKind::MExponential) {
    // The exponential gauge has a closed-form conjugate; use it as the oracle.
    const YoungFunction n = YoungFunction::n_conjugate_of_m();
    double worst = 0.0;
    for (std::size_t i = 0; i < table.breakpoints().size(); ++i) {
      const double y = table.breakpoints()[i];
      if (y <= 0.0) continue;
      worst = std::max(worst, std::abs(table.values()[i] - eval_young(n, y)) / eval_young(n, y));
    }
    pass = worst <= 1e-8 * o.tol_scale;
    CertificateReport rep;
    rep.title = "conjugate oracle";
    rep.add(CheckEntry::make("conjugate_closed_form_rel", worst, 1e-8 * o.tol_scale, worst,
                             "closed-form conjugate (identity)"));
    rep.write_csv(fs::path(o.out) / "law_report.csv");
    summary = pass ? "pass" : "fail:conjugate_closed_form_rel";
  }
  write_manifest(o.out, "conjugate", o, summary, watch.seconds());
  return pass ? kExitPass : kExitCertFail;
}

int cmd_simulate(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const SimSetup setup = sim_from_config(cfg);
  cfg.reject_unknown();

  const Trajectory traj = run(setup.sim);
  fs::create_directories(o.out);
  write_snapshots(o.out, traj);
  write_energy_csv(fs::path(o.out) / "energy.csv", energy_report(traj, setup.sim.law, setup.sim.forcing));
  write_manifest(o.out, "simulate", o, "pass", watch.seconds());
  return kExitPass;
}

int cmd_convergence(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const SimSetup setup = sim_from_config(cfg);
  const int levels = static_cast<int>(cfg.get_int_or("convergence", "levels", 3));
  cfg.reject_unknown();
  if (!setup.manufactured) throw ConfigError("convergence requires initial.preset=traveling_wave");

  const ConvergenceStudy study = run_convergence_study(study_params_from(cfg, setup), setup.sim.grid.n[0], levels);

  fs::create_directories(o.out);
  {
    std::ofstream out(fs::path(o.out) / "convergence.csv");
    out << "n,h,err_rho,err_u,sei_max,max_rel_energy\n";
    for (const auto& lvl : study.levels)
      out << lvl.n << ',' << format_full(lvl.h) << ',' << format_full(lvl.err_rho) << ','
          << format_full(lvl.err_u) << ',' << format_full(lvl.sei_max) << ','
          << format_full(lvl.max_energy) << "\n";
    out << "# order_rho=" << format_full(study.order_rho) << " order_u=" << format_full(study.order_u)
        << " order_energy=" << format_full(study.order_energy)
        << " sei_monotone=" << (study.sei_monotone ? 1 : 0) << "\n";
  }
  const bool pass = study.order_rho >= 1.0 && study.order_u >= 1.0;
  write_manifest(o.out, "convergence", o, pass ? "pass" : "fail:observed_order", watch.seconds());
  return pass ? kExitPass : kExitCertFail;
}

int cmd_certify(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const SimSetup setup = sim_from_config(cfg);
  const double bound_scale = cfg.get_real_or("certify", "bound_scale", 50.0);
  const double energy_tol_key = cfg.get_real_or("certify", "energy_tol", 0.0);
  cfg.reject_unknown();
  if (!setup.manufactured) throw ConfigError("certify requires initial.preset=traveling_wave");

  const Trajectory traj = run(setup.sim);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(*setup.manufactured);
  const Grid& g = setup.sim.grid;
  const double h = g.h[0];
  const double dt0 = stable_dt(traj.front(), setup.sim);
  const double bound = o.tol_scale * bound_scale * (h + dt0);

  const auto rows = relative_energy_residual(traj, ref, setup.sim.forcing, setup.sim.law, bound);
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.pass;

  const ProofStepSeries steps = proof_step_identities(traj, ref, setup.sim.forcing, setup.sim.law);
  double step_max = 0.0;
  for (std::size_t k = 0; k < steps.t.size(); ++k)
    step_max = std::max({step_max, std::abs(steps.kinetic_test[k]), std::abs(steps.momentum_test[k]),
                         std::abs(steps.log_density_test[k])});
  pass = pass && step_max <= bound;

  const ReferencePair rp = ref.at(g, traj.back().t);
  const CertificateReport coercive = coercivity_bound(traj.back(), rp);
  pass = pass && coercive.all_pass();

  WsuConstants constants;
  constants.korn_c = estimate_korn_constant(g, setup.sim.law.q_claimed().value_or(2.0), 8, o.seed);
  const CertificateReport wsu = weak_strong_bounds(traj.back(), rp, setup.sim.law, constants);
  pass = pass && wsu.all_pass();

  const EnergySeries series = energy_vs_reference(traj, ref);
  const double energy_tol =
      o.tol_scale * (energy_tol_key > 0.0 ? energy_tol_key : 200.0 * h * h * (1.0 + setup.perturb / (h * h)));
  const GronwallResult gron =
      gronwall_certify(series.t, series.energy, setup.perturb > 0.0 ? GronwallMode::Perturbed : GronwallMode::IdenticalData,
                       series.e0, energy_tol);
  pass = pass && gron.pass;

  fs::create_directories(o.out);
  write_energy_csv(fs::path(o.out) / "energy.csv", energy_report(traj, setup.sim.law, setup.sim.forcing));
  std::string summary = std::string("lambda=") + format_full(gron.lambda) +
                        " max_E=" + format_full(gron.max_energy) + " bound=" + format_full(bound) +
                        " korn_c=" + format_full(constants.korn_c) + " (estimated)" +
                        " proof_step_max=" + format_full(step_max) + (pass ? " pass" : " fail");
  write_certificate_csv(fs::path(o.out) / "certificate.csv", rows, summary);
  write_manifest(o.out, "certify", o, pass ? "pass" : "fail", watch.seconds());
  return pass ? kExitPass : kExitCertFail;
}

int cmd_weak_strong(const CommonOpts& o) {
  Stopwatch watch;
  const Config cfg = Config::parse_file(o.config);
  const SimSetup setup = sim_from_config(cfg);
  const std::string mode = cfg.get_or("weak_strong", "mode", "identical");
  const double perturb = cfg.get_real_or("weak_strong", "perturb", 0.05);
  const double energy_tol_key = cfg.get_real_or("weak_strong", "energy_tol", 0.0);
  const double lambda_floor = cfg.get_real_or("weak_strong", "lambda_floor", 0.5);
  cfg.reject_unknown();
  if (!setup.manufactured) throw ConfigError("weak-strong requires initial.preset=traveling_wave");

  StudyParams params = study_params_from(cfg, setup);
  const ManufacturedSolution& ms = *setup.manufactured;
  const VectorFn f = setup.sim.forcing;
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);
  const int n = setup.sim.grid.n[0];
  const double h = setup.sim.grid.h[0];
  const double energy_tol = o.tol_scale * (energy_tol_key > 0.0 ? energy_tol_key : 200.0 * h * h);

  fs::create_directories(o.out);
  bool pass = false;
  std::string summary;
  if (mode == "identical") {
    params.perturb = 0.0;
    const Trajectory traj = run_manufactured(params, n, ms, f);
    const EnergySeries series = energy_vs_reference(traj, ref);
    const GronwallResult gron =
        gronwall_certify(series.t, series.energy, GronwallMode::IdenticalData, series.e0, energy_tol);
    pass = gron.pass;
    const auto rows = relative_energy_residual(traj, ref, f, setup.sim.law, energy_tol);
    summary = "mode=identical max_E=" + format_full(gron.max_energy) + " tol=" + format_full(energy_tol) +
              (pass ? " pass" : " fail");
    write_certificate_csv(fs::path(o.out) / "certificate.csv", rows, summary);
  } else if (mode == "perturbed") {
    double lambda[2] = {0.0, 0.0};
    std::vector<RelEnergyRow> first_rows;
    for (int k = 0; k < 2; ++k) {
      params.perturb = perturb / std::pow(std::sqrt(10.0), k);
      const Trajectory traj = run_manufactured(params, n, ms, f);
      const EnergySeries series = energy_vs_reference(traj, ref);
      const GronwallResult gron =
          gronwall_certify(series.t, series.energy, GronwallMode::Perturbed, series.e0, energy_tol);
      lambda[k] = gron.lambda;
      if (k == 0)
        first_rows = relative_energy_residual(traj, ref, f, setup.sim.law,
                                              std::numeric_limits<double>::infinity());
    }
    const double scale = std::max({std::abs(lambda[0]), std::abs(lambda[1]), lambda_floor});
    pass = std::abs(lambda[0] - lambda[1]) <= 0.2 * scale;
    summary = "mode=perturbed lambda_a=" + format_full(lambda[0]) + " lambda_b=" + format_full(lambda[1]) +
              " floor=" + format_full(lambda_floor) + (pass ? " pass" : " fail");
    write_certificate_csv(fs::path(o.out) / "certificate.csv", first_rows, summary);
  } else {
    throw ConfigError("unknown weak_strong.mode: " + mode);
  }
  write_manifest(o.out, "weak-strong", o, pass ? "pass" : "fail", watch.seconds());
  return pass ? kExitPass : kExitCertFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification driver for the shear-dependent compressible flow library"};
  app.require_subcommand(1);

  CommonOpts opts[6];
  CLI::App* sub[6];
  const char* names[6] = {"check-law", "conjugate", "simulate", "convergence", "certify", "weak-strong"};
  const char* descs[6] = {"certify the pointwise and sampled viscosity-law conditions",
                          "tabulate the convex conjugate of a Young function",
                          "run a simulation and write snapshots plus the energy ledger",
                          "manufactured-solution grid-refinement study",
                          "relative-energy certificate along a manufactured run",
                          "weak-strong uniqueness certificate (identical or perturbed data)"};
  for (int k = 0; k < 6; ++k) {
    sub[k] = app.add_subcommand(names[k], descs[k]);
    add_common(sub[k], opts[k]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (sub[0]->parsed()) return cmd_check_law(opts[0]);
    if (sub[1]->parsed()) return cmd_conjugate(opts[1]);
    if (sub[2]->parsed()) return cmd_simulate(opts[2]);
    if (sub[3]->parsed()) return cmd_convergence(opts[3]);
    if (sub[4]->parsed()) return cmd_certify(opts[4]);
    if (sub[5]->parsed()) return cmd_weak_strong(opts[5]);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const NegativeDensityError& e) {
    std::fprintf(stderr, "numeric failure: %s (cell %zu, value %s)\n", e.what(), e.cell,
                 format_full(e.value).c_str());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitConfig;
}
