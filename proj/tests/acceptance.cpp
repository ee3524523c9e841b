// Acceptance gate: ten certified criteria, one pass/fail line each.
// Tolerances are pinned here, next to the criterion they gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nncert/rel_energy.hpp"
#include "nncert/study.hpp"
#include "nncert/young.hpp"

using namespace nncert;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// 1. Numeric conjugate of the exponential gauge vs its closed form.
void criterion_conjugate_oracle() {
  const double tol = 1e-8;          // relative, on 50 log-spaced points
  const double budget_seconds = 1.0;
  Stopwatch watch;
  const YoungFunction m = YoungFunction::m_exponential();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double y = 1e-3 * std::pow(1e6, i / 49.0);
    const double closed = (1.0 + y) * std::log(1.0 + y) - y;
    worst = std::max(worst, std::abs(conjugate_numeric(m, y) - closed) / closed);
  }
  const double elapsed = watch.seconds();
  report(1, "conjugate oracle", worst <= tol && elapsed < budget_seconds,
         "max rel err " + format_full(worst) + ", " + format_full(elapsed) + " s");
}

// 2. Exponential-law identities: gauge identity, slope decomposition, tail
//    slope monotonicity.
void criterion_exponential_identities() {
  const CertificateReport rep =
      certify_exponential_decomposition(ViscosityLaw::exponential_m(), 1e-6, 30.0, 1000);
  const CheckEntry* fail = rep.first_failure();
  report(2, "exponential-law identities", rep.all_pass(),
         fail ? fail->name + " residual " + format_full(fail->residual)
              : "gauge 1e-12, decomposition 1e-10, zero monotonicity violations");
}

// 3. Monotonicity pairing sampled with the claimed exponents.
void criterion_p6_sampling() {
  const long samples = 100'000;
  const double budget_seconds = 30.0;
  Stopwatch watch;
  const MonotonicityCertificate em =
      certify_monotonicity_exponent(ViscosityLaw::exponential_m(), 3.0, samples, -5.0, 5.0, 2024);
  const MonotonicityCertificate pl =
      certify_monotonicity_exponent(ViscosityLaw::power_law(1.0, 1.0), 3.0, samples, -5.0, 5.0, 2024);
  const double elapsed = watch.seconds();
  const bool pass = em.pass && em.c_min > 0.0 && em.nonpositive == 0 && pl.pass && pl.c_min > 0.0 &&
                    pl.nonpositive == 0 && elapsed < budget_seconds;
  report(3, "monotonicity exponent sampling", pass,
         "c_min exp " + format_full(em.c_min) + ", power " + format_full(pl.c_min) + ", " +
             format_full(elapsed) + " s");
}

// 4. The power-law inequality chain replayed sample by sample.
void criterion_chain_replay() {
  const long samples = 100'000;
  const CertificateReport rep = certify_growth_chain(ViscosityLaw::power_law(1.0, 1.0), samples, -5.0, 5.0, 2024);
  const CheckEntry* fail = rep.first_failure();
  report(4, "growth chain replay", rep.all_pass(),
         fail ? fail->name + " residual " + format_full(fail->residual)
              : "all chain inequalities hold on " + std::to_string(samples) + " samples");
}

// 5. Discrete summation by parts on periodic grids.
void criterion_sbp() {
  const double tol = 1e-12;
  double worst = 0.0;
  for (int dim : {1, 2})
    for (int n : {16, 64, 256}) {
      if (dim == 2 && n == 256) {
        worst = std::max(worst, sbp_residual(Grid::unit(2, 256), 2, 5));
        continue;
      }
      worst = std::max(worst, sbp_residual(Grid::unit(dim, n), 4, 5));
    }
  report(5, "summation by parts", worst <= tol, "max residual " + format_full(worst));
}

ConvergenceStudy shared_study() {
  static const ConvergenceStudy study = [] {
    StudyParams p;
    p.amplitude = 0.25;
    p.speed = 1.0;
    p.end_time = 0.02;
    p.snapshot_dt = 0.004;
    return run_convergence_study(p, 64, 3);
  }();
  return study;
}

// 6. Manufactured traveling wave converges at first order or better.
void criterion_mms_convergence() {
  const double min_order = 1.0;
  const double budget_seconds = 60.0;
  Stopwatch watch;
  const ConvergenceStudy study = shared_study();
  const double elapsed = watch.seconds();
  const bool pass = study.order_rho >= min_order && study.order_u >= min_order && elapsed < budget_seconds;
  report(6, "manufactured-solution convergence", pass,
         "order rho " + format_full(study.order_rho) + ", order u " + format_full(study.order_u) + ", " +
             format_full(elapsed) + " s");
}

// 7. Energy-ledger defect bounded by K(h+dt) with K frozen on the finest grid.
void criterion_energy_inequality() {
  const double safety = 2.0;  // frozen-baseline headroom
  const ConvergenceStudy study = shared_study();
  const ConvergenceLevel& fine = study.levels.back();
  const double K = safety * std::max(fine.sei_max, 0.0) / (fine.h + fine.dt0);
  bool bounded = true;
  for (const auto& lvl : study.levels) bounded = bounded && lvl.sei_max <= K * (lvl.h + lvl.dt0);
  const bool pass = bounded && study.sei_monotone;
  std::string detail = "K " + format_full(K) + ", sei_max";
  for (const auto& lvl : study.levels) detail += " " + format_full(lvl.sei_max);
  report(7, "energy inequality", pass, detail);
}

// 8. Weak-strong certificate: identical data decays at order >= 1 under
//    refinement; the perturbed Gronwall rate is stable across magnitudes.
void criterion_weak_strong() {
  const double min_order = 1.0;
  const double lambda_tol = 0.2;     // +-20%
  const double lambda_floor = 1e-8;  // both rates at zero counts as stable
  const ConvergenceStudy study = shared_study();
  const bool order_ok = study.order_energy >= min_order;

  StudyParams p;
  p.amplitude = 0.25;
  p.end_time = 0.02;
  p.snapshot_dt = 0.004;
  const ManufacturedSolution ms = make_traveling_wave(p.amplitude, p.speed);
  const VectorFn f = mms_forcing(ms, p.law, p.dim);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);
  double lambda[2] = {0.0, 0.0};
  double e0[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    p.perturb = 0.05 / std::pow(std::sqrt(10.0), k);  // E(0) targets 1e-2 and 1e-3 of scale
    const Trajectory traj = run_manufactured(p, 64, ms, f);
    const EnergySeries series = energy_vs_reference(traj, ref);
    e0[k] = series.e0;
    lambda[k] = gronwall_certify(series.t, series.energy, GronwallMode::Perturbed, series.e0, 1e-12).lambda;
  }
  const double scale = std::max(std::abs(lambda[0]), std::abs(lambda[1]));
  const bool lambda_ok = scale <= lambda_floor || std::abs(lambda[0] - lambda[1]) <= lambda_tol * scale;
  report(8, "weak-strong certificate", order_ok && lambda_ok,
         "energy order " + format_full(study.order_energy) + ", lambda " + format_full(lambda[0]) + " / " +
             format_full(lambda[1]) + ", E0 " + format_full(e0[0]) + " / " + format_full(e0[1]));
}

// 9. With a constant resting reference the relative-energy pipeline is the
//    standard energy ledger, including the mass-conservation cancellation.
void criterion_reduction_identity() {
  const double tol = 1e-12;
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  double worst = 0.0;

  // Trajectory A: manufactured forcing run.
  {
    const ManufacturedSolution ms = make_traveling_wave(0.25, 1.0);
    const VectorFn f = mms_forcing(ms, law, 1);
    StudyParams p;
    p.end_time = 0.01;
    p.snapshot_dt = 0.002;
    const Trajectory traj = run_manufactured(p, 32, ms, f);
    const auto rows = relative_energy_residual(traj, ReferenceSolution::constant(0.9), f, law, 1.0);
    const auto sei = energy_report(traj, law, f);
    for (std::size_t k = 0; k < rows.size(); ++k)
      worst = std::max(worst, std::abs(rows[k].residual - sei[k].energy_residual));
  }
  // Trajectory B: unforced decay from a non-trivial state.
  {
    SimConfig cfg;
    cfg.grid = Grid::unit(1, 32);
    cfg.law = law;
    cfg.end_time = 0.01;
    cfg.snapshot_dt = 0.002;
    cfg.rho0 = [](const Vec3& x, double) { return 1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * x[0]); };
    cfg.u0 = [](const Vec3& x, double) {
      return Vec3{0.2 * std::cos(2.0 * std::numbers::pi * x[0]), 0.0, 0.0};
    };
    const Trajectory traj = run(cfg);
    const auto rows = relative_energy_residual(traj, ReferenceSolution::constant(1.1), nullptr, law, 1.0);
    const auto sei = energy_report(traj, law, nullptr);
    for (std::size_t k = 0; k < rows.size(); ++k)
      worst = std::max(worst, std::abs(rows[k].residual - sei[k].energy_residual));
  }
  report(9, "reduction identity", worst <= tol, "max ledger mismatch " + format_full(worst));
}

// 10. Coercivity certificate on randomized state/reference pairs spanning
//     essential and residual regimes.
void criterion_coercivity_suite() {
  const int trials = 1000;
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  std::string first;
  const Grid g = Grid::unit(1, 12);
  for (int trial = 0; trial < trials; ++trial) {
    ReferenceSolution ref;
    const double r0 = 0.6 + 0.8 * unit(rng);
    const double ramp = 0.3 * unit(rng);
    ref.r = [r0, ramp](const Vec3& x, double) {
      return r0 + ramp * std::sin(2.0 * std::numbers::pi * x[0]);
    };
    const double uamp = 2.0 * unit(rng);
    ref.U = [uamp](const Vec3& x, double) {
      return Vec3{uamp * std::cos(2.0 * std::numbers::pi * x[0]), 0.0, 0.0};
    };
    const ReferencePair rp = ref.at(g, 0.0);
    FlowState s;
    s.t = 0.0;
    s.rho = ScalarField::zeros(g);
    s.u = random_smooth_vector(g, 90000 + static_cast<std::uint64_t>(trial));
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const double pick = unit(rng);
      if (pick < 0.25)
        s.rho.v[c] = 0.2 * r0 * unit(rng);  // residual low / vacuum side
      else if (pick < 0.5)
        s.rho.v[c] = 3.0 * rp.r_high + 6.0 * unit(rng);  // residual high side
      else
        s.rho.v[c] = rp.r.v[c] * (0.7 + 0.6 * unit(rng));  // essential window
    }
    const CertificateReport rep = coercivity_bound(s, rp);
    if (!rep.all_pass()) {
      if (violations == 0) first = "trial " + std::to_string(trial);
      ++violations;
    }
  }
  report(10, "coercivity suite", violations == 0,
         violations == 0 ? std::to_string(trials) + " randomized trials, zero violations"
                         : std::to_string(violations) + " violations, first at " + first);
}

}  // namespace

int main() {
  criterion_conjugate_oracle();
  criterion_exponential_identities();
  criterion_p6_sampling();
  criterion_chain_replay();
  criterion_sbp();
  criterion_mms_convergence();
  criterion_energy_inequality();
  criterion_weak_strong();
  criterion_reduction_identity();
  criterion_coercivity_suite();
  if (failures == 0)
    std::printf("ACCEPTANCE: all 10 criteria pass\n");
  else
    std::printf("ACCEPTANCE: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
