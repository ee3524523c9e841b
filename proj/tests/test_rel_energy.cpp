#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nncert/rel_energy.hpp"
#include "nncert/study.hpp"

using namespace nncert;

namespace {

FlowState state_from(const Grid& g, const ScalarFn& rho, const VectorFn& u, double t = 0.0) {
  FlowState s;
  s.t = t;
  s.rho = discretize(rho, g, t);
  s.u = discretize(u, g, t);
  return s;
}

Trajectory short_mms_run(int n, double end_time, const ManufacturedSolution& ms, const VectorFn& f) {
  StudyParams p;
  p.end_time = end_time;
  p.snapshot_dt = end_time / 5.0;
  return run_manufactured(p, n, ms, f);
}

}  // namespace

TEST_CASE("h_gap oracle values") {
  CHECK(h_gap(1.0, 1.0) == 0.0);
  CHECK(h_gap(2.0, 1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  CHECK(h_gap(0.0, 1.0) == 1.0);
  CHECK(h_gap(0.0, 0.3) == 0.3);
  for (double rho : {0.1, 0.5, 1.0, 3.0, 10.0})
    for (double r : {0.2, 1.0, 2.5}) CHECK(h_gap(rho, r) >= 0.0);
  CHECK_THROWS(h_gap(1.0, 0.0));
  CHECK_THROWS(h_gap(-0.5, 1.0));
}

TEST_CASE("relative energy basics") {
  const Grid g = Grid::unit(1, 32);
  const ReferenceSolution ref = ReferenceSolution::constant(1.0);
  const ReferencePair rp = ref.at(g, 0.0);
  CHECK(rp.r_low == 1.0);
  CHECK(rp.r_high == 1.0);

  const FlowState same = state_from(g, [](const Vec3&, double) { return 1.0; },
                                    [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; });
  CHECK(relative_energy(same, rp) == 0.0);

  const FlowState shifted = state_from(g, [](const Vec3&, double) { return 1.0; },
                                       [](const Vec3&, double) { return Vec3{0.4, 0.0, 0.0}; });
  CHECK(relative_energy(shifted, rp) == doctest::Approx(0.5 * 0.16).epsilon(1e-14));

  const FlowState dense = state_from(g, [](const Vec3&, double) { return 2.0; },
                                     [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; });
  CHECK(relative_energy(dense, rp) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("remainder against a constant reference") {
  const Grid g = Grid::unit(1, 24);
  const ReferencePair rp = ReferenceSolution::constant(0.8).at(g, 0.0);
  const FlowState s = state_from(g,
                                 [](const Vec3& x, double) { return 1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * x[0]); },
                                 [](const Vec3& x, double) { return Vec3{std::cos(2.0 * std::numbers::pi * x[0]), 0.0, 0.0}; });
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  CHECK(std::abs(remainder_general(s, rp, nullptr, law)) == 0.0);

  const VectorFn f = [](const Vec3& x, double) { return Vec3{x[0], 0.0, 0.0}; };
  double work = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) work += s.rho.v[c] * g.center(c)[0] * s.u.comp[0][c];
  work *= g.cell_measure();
  CHECK(remainder_general(s, rp, f, law) == doctest::Approx(work).epsilon(1e-14));
}

TEST_CASE("strong remainder vanishes when state matches the reference") {
  const Grid g = Grid::unit(1, 32);
  const ManufacturedSolution ms = make_traveling_wave(0.25, 1.0);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);
  const ReferencePair rp = ref.at(g, 0.1);
  const FlowState s = state_from(g, ms.rho, ms.u, 0.1);
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  CHECK(std::abs(remainder_strong(s, rp, law)) <= 1e-14);

  // u = U with rho != r: both terms carry (U - u).
  FlowState s2 = s;
  for (auto& r : s2.rho.v) r *= 1.7;
  CHECK(std::abs(remainder_strong(s2, rp, law)) <= 1e-14);
}

TEST_CASE("essential residual split partitions the field") {
  const Grid g = Grid::unit(1, 16);
  ScalarField field = random_smooth_scalar(g, 4);
  ScalarField rho = ScalarField::zeros(g);
  for (std::size_t c = 0; c < g.cells(); ++c) rho.v[c] = c % 3 == 0 ? 5.0 : (c % 3 == 1 ? 1.0 : 0.1);
  const EssResSplit split = ess_res_split(field, rho, 0.9, 1.1);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    CHECK(split.essential.v[c] + split.residual.v[c] == field.v[c]);
    CHECK((split.essential_mask[c] == 1) == (rho.v[c] > 0.45 && rho.v[c] < 2.2));
    if (split.essential_mask[c])
      CHECK(split.residual.v[c] == 0.0);
    else
      CHECK(split.essential.v[c] == 0.0);
  }
}

TEST_CASE("coercivity constants bound the gap function cellwise") {
  const double r_low = 0.7, r_high = 1.3, cap = 8.0;
  const CoercivityConstants k = coercivity_constants(r_low, r_high, cap);
  CHECK(k.c_ess > 0.0);
  CHECK(k.c_res_one > 0.0);
  CHECK(k.c_res_abs > 0.0);
  CHECK(k.c_ess <= 0.5 / r_low + 1e-12);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> rd(r_low, r_high);
  std::uniform_real_distribution<double> rho_d(0.0, cap);
  for (int trial = 0; trial < 20000; ++trial) {
    const double r = rd(rng), rho = rho_d(rng);
    const double gap = h_gap(rho, r);
    if (rho > 0.5 * r_low && rho < 2.0 * r_high) {
      CHECK(gap >= k.c_ess * (rho - r) * (rho - r));
    } else {
      CHECK(gap >= k.c_res_one * (1.0 + rho));
      CHECK(gap >= k.c_res_abs * std::abs(rho - r));
    }
  }
}

TEST_CASE("coercivity bound certificate on randomized states") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> mode(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = Grid::unit(1, 16);
    ReferenceSolution ref;
    const double r0 = 0.8 + 0.4 * mode(rng);
    ref.r = [r0](const Vec3& x, double) { return r0 + 0.1 * std::sin(2.0 * std::numbers::pi * x[0]); };
    ref.U = [](const Vec3& x, double) { return Vec3{0.2 * std::cos(2.0 * std::numbers::pi * x[0]), 0.0, 0.0}; };
    const ReferencePair rp = ref.at(g, 0.0);
    FlowState s;
    s.t = 0.0;
    s.rho = ScalarField::zeros(g);
    s.u = random_smooth_vector(g, 1000 + static_cast<std::uint64_t>(trial));
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const double pick = mode(rng);
      s.rho.v[c] = pick < 0.2 ? 0.0 : (pick < 0.4 ? 6.0 * mode(rng) + 3.0 : r0 * (0.6 + 0.8 * mode(rng)));
    }
    const CertificateReport rep = coercivity_bound(s, rp);
    INFO("trial " << trial);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("dissipation gap properties") {
  const Grid g = Grid::unit(1, 32);
  const VectorField u = random_smooth_vector(g, 51);
  const VectorField v = random_smooth_vector(g, 52);
  const ViscosityLaw newt = ViscosityLaw::newtonian(1.0);
  const DissipationGap same = dissipation_gap(u, u, newt);
  CHECK(same.value == 0.0);
  const DissipationGap lin = dissipation_gap(u, v, newt);
  CHECK(lin.value == doctest::Approx(lin.qnorm).epsilon(1e-12));  // pairing telescopes to |Du-DU|^2
  const DissipationGap expm = dissipation_gap(u, v, ViscosityLaw::exponential_m());
  CHECK(expm.value >= 0.0);
  CHECK(expm.ratio > 0.0);
}

TEST_CASE("relative energy residual certifies a short manufactured run") {
  const ManufacturedSolution ms = make_traveling_wave(0.25, 1.0);
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  const VectorFn f = mms_forcing(ms, law, 1);
  const Trajectory traj = short_mms_run(32, 0.01, ms, f);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);
  const auto rows = relative_energy_residual(traj, ref, f, law, 10.0 * (1.0 / 32.0));
  REQUIRE(rows.size() == traj.states.size());
  CHECK(rows.front().residual == 0.0);
  for (const auto& row : rows) {
    INFO("tau " << row.tau << " residual " << row.residual);
    CHECK(row.pass);
  }
}

TEST_CASE("reduction to the standard energy ledger at a constant reference") {
  const ManufacturedSolution ms = make_traveling_wave(0.2, 1.0);
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  const VectorFn f = mms_forcing(ms, law, 1);
  const Trajectory traj = short_mms_run(24, 0.01, ms, f);
  const ReferenceSolution ref = ReferenceSolution::constant(0.9);
  const auto rows = relative_energy_residual(traj, ref, f, law, 1.0);
  const auto sei = energy_report(traj, law, f);
  REQUIRE(rows.size() == sei.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    CHECK(std::abs(rows[k].residual - sei[k].energy_residual) <= 1e-12);
}

TEST_CASE("proof step identities vanish for trivial references and stay small for manufactured ones") {
  SimConfig cfg;
  cfg.grid = Grid::unit(1, 16);
  cfg.end_time = 0.05;
  cfg.snapshot_dt = 0.01;
  cfg.rho0 = [](const Vec3&, double) { return 1.0; };
  cfg.u0 = [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; };
  const Trajectory rest = run(cfg);
  const ProofStepSeries trivial = proof_step_identities(rest, ReferenceSolution::constant(1.0), nullptr, cfg.law);
  for (std::size_t k = 0; k < trivial.t.size(); ++k) {
    CHECK(std::abs(trivial.kinetic_test[k]) <= 1e-13);
    CHECK(std::abs(trivial.momentum_test[k]) <= 1e-13);
    CHECK(std::abs(trivial.log_density_test[k]) <= 1e-13);
  }

  const ManufacturedSolution ms = make_traveling_wave(0.25, 1.0);
  const VectorFn f = mms_forcing(ms, cfg.law, 1);
  const Trajectory traj = short_mms_run(32, 0.01, ms, f);
  const ProofStepSeries steps = proof_step_identities(traj, ReferenceSolution::from_manufactured(ms), f, cfg.law);
  for (std::size_t k = 0; k < steps.t.size(); ++k) {
    CHECK(std::abs(steps.kinetic_test[k]) <= 0.5 / 32.0);
    CHECK(std::abs(steps.momentum_test[k]) <= 0.5 / 32.0);
    CHECK(std::abs(steps.log_density_test[k]) <= 0.5 / 32.0);
  }
}

TEST_CASE("weak strong bounds hold with oracle constants") {
  const ManufacturedSolution ms = make_traveling_wave(0.25, 1.0);
  const ViscosityLaw law = ViscosityLaw::exponential_m();
  const VectorFn f = mms_forcing(ms, law, 1);
  const Trajectory traj = short_mms_run(32, 0.01, ms, f);
  const ReferenceSolution ref = ReferenceSolution::from_manufactured(ms);
  const ReferencePair rp = ref.at(Grid::unit(1, 32), traj.back().t);
  WsuConstants constants;
  constants.korn_c = estimate_korn_constant(Grid::unit(1, 32), 3.0, 8, 5);
  const CertificateReport rep = weak_strong_bounds(traj.back(), rp, law, constants);
  INFO((rep.first_failure() ? rep.first_failure()->name : std::string("all pass")));
  CHECK(rep.all_pass());
}

TEST_CASE("gronwall certification modes") {
  std::vector<double> t, flat, growing;
  for (int k = 0; k <= 20; ++k) {
    t.push_back(0.05 * k);
    flat.push_back(0.0);
    growing.push_back(1e-3 * std::exp(t.back()));
  }
  const GronwallResult zero = gronwall_certify(t, flat, GronwallMode::IdenticalData, 0.0, 1e-12);
  CHECK(zero.pass);
  CHECK(zero.lambda == 0.0);

  const GronwallResult fit = gronwall_certify(t, growing, GronwallMode::Perturbed, 1e-3, 1e-15);
  CHECK(fit.pass);
  CHECK(fit.lambda == doctest::Approx(1.0).epsilon(0.01));

  CHECK_THROWS(gronwall_certify({}, {}, GronwallMode::IdenticalData, 0.0, 1e-12));
}

TEST_CASE("korn surrogate is positive and bounds its own trial class") {
  const Grid g = Grid::unit(1, 32);
  const double korn = estimate_korn_constant(g, 3.0, 10, 77);
  CHECK(korn > 0.0);
  for (std::uint64_t s = 77; s < 87; ++s) {
    const VectorField v = random_smooth_vector(g, s);
    const TensorField dv = sym_grad(v);
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      num += std::pow(std::abs(v.comp[0][c]), 3.0);
      den += std::pow(dv.at(c).frobenius(), 3.0);
    }
    CHECK(num <= korn * den);
  }
}
