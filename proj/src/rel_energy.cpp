#include "nncert/rel_energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace nncert {

namespace {

template <class F>
double d4t(const F& f, double t, double h) {
  // Grouped as symmetric differences so a time-independent f yields exactly 0.
  return (8.0 * (f(t + h) - f(t - h)) - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h);
}

// Golden-section minimizer on [a, b] for a continuous scalar function.
template <class F>
double golden_min(const F& f, double a, double b, int iters = 120) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

ReferencePair ReferenceSolution::at(const Grid& grid, double t, double h_t) const {
  ReferencePair p;
  p.r = discretize(r, grid, t);
  p.U = discretize(U, grid, t);
  p.dt_r = ScalarField::zeros(grid);
  p.dt_U = VectorField::zeros(grid);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const Vec3 x = grid.center(c);
    p.dt_r.v[c] = d4t([&](double s) { return r(x, s); }, t, h_t);
    const Vec3 du = {d4t([&](double s) { return U(x, s)[0]; }, t, h_t),
                     d4t([&](double s) { return U(x, s)[1]; }, t, h_t),
                     d4t([&](double s) { return U(x, s)[2]; }, t, h_t)};
    for (int d = 0; d < grid.dim; ++d) p.dt_U.comp[d][c] = du[static_cast<std::size_t>(d)];
  }
  p.r_low = *std::min_element(p.r.v.begin(), p.r.v.end());
  p.r_high = *std::max_element(p.r.v.begin(), p.r.v.end());
  if (!(p.r_low > 0.0)) throw std::invalid_argument("reference density must be strictly positive");
  return p;
}

ReferenceSolution ReferenceSolution::constant(double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("constant reference requires r0 > 0");
  ReferenceSolution s;
  s.r = [r0](const Vec3&, double) { return r0; };
  s.U = [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; };
  return s;
}

ReferenceSolution ReferenceSolution::from_manufactured(const ManufacturedSolution& ms) {
  ReferenceSolution s;
  s.r = ms.rho;
  s.U = ms.u;
  return s;
}

double h_gap(double rho, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("h_gap: r must be positive");
  if (rho < 0.0) throw std::invalid_argument("h_gap: rho must be non-negative");
  if (rho == 0.0) return r;
  return rho * std::log(rho / r) - (rho - r);
}

double relative_energy(const FlowState& state, const ReferencePair& ref) {
  const Grid& g = state.rho.grid;
  if (!(g == ref.r.grid)) throw std::invalid_argument("relative_energy: grid mismatch");
  double acc = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    double du2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double dd = state.u.comp[d][c] - ref.U.comp[d][c];
      du2 += dd * dd;
    }
    acc += 0.5 * state.rho.v[c] * du2 + h_gap(state.rho.v[c], ref.r.v[c]);
  }
  return acc * g.cell_measure();
}

double remainder_general(const FlowState& state, const ReferencePair& ref, const VectorFn& f,
                         const ViscosityLaw& law) {
  const Grid& g = state.rho.grid;
  if (ref.dt_r.v.empty() || ref.dt_U.comp[0].empty())
    throw std::invalid_argument("remainder_general: reference time derivatives required");
  const TensorField grad_U = grad_vector(ref.U);
  const TensorField du = sym_grad(state.u);
  const TensorField dU = sym_grad(ref.U);
  const VectorField grad_r = grad_scalar(ref.r);
  const ScalarField div_U = div_vector(ref.U);

  double acc = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double rho = state.rho.v[c];
    const double rr = ref.r.v[c];
    // rho (dt U + u . grad U) . (U - u)
    for (int e = 0; e < g.dim; ++e) {
      double adv = ref.dt_U.comp[e][c];
      for (int d = 0; d < g.dim; ++d) adv += state.u.comp[d][c] * grad_U.comp[e][d][c];
      acc += rho * adv * (ref.U.comp[e][c] - state.u.comp[e][c]);
    }
    // S(DU) : (DU - Du)
    const Tensor3 su = stress(law, dU.at(c));
    acc += ddot(su, dU.at(c) - du.at(c));
    // rho f . (u - U)
    if (f) {
      const Vec3 fv = f(g.center(c), state.t);
      for (int d = 0; d < g.dim; ++d) acc += rho * fv[static_cast<std::size_t>(d)] * (state.u.comp[d][c] - ref.U.comp[d][c]);
    }
    // (r - rho) dt r / r + (grad r / r) . (r U - rho u)
    acc += (rr - rho) * ref.dt_r.v[c] / rr;
    for (int d = 0; d < g.dim; ++d)
      acc += grad_r.comp[d][c] / rr * (rr * ref.U.comp[d][c] - rho * state.u.comp[d][c]);
    // div U (r - rho)
    acc += div_U.v[c] * (rr - rho);
  }
  return acc * g.cell_measure();
}

double remainder_strong(const FlowState& state, const ReferencePair& ref, const ViscosityLaw& law) {
  if (!(ref.r_low > 0.0)) throw std::invalid_argument("remainder_strong: reference density not bounded below");
  const Grid& g = state.rho.grid;
  const TensorField grad_U = grad_vector(ref.U);
  TensorField s_ref = TensorField::zeros(g);
  {
    const TensorField dU = sym_grad(ref.U);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const Tensor3 sc = stress(law, dU.at(c));
      for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) s_ref.comp[i][j][c] = sc(i, j);
    }
    s_ref.symmetric = true;
  }
  const VectorField div_s = div_tensor(s_ref);

  double acc = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double rho = state.rho.v[c];
    const double rr = ref.r.v[c];
    for (int e = 0; e < g.dim; ++e) {
      double adv = 0.0;
      for (int d = 0; d < g.dim; ++d)
        adv += (state.u.comp[d][c] - ref.U.comp[d][c]) * grad_U.comp[e][d][c];
      acc += rho * adv * (ref.U.comp[e][c] - state.u.comp[e][c]);
      acc += (rho - rr) / rr * div_s.comp[e][c] * (ref.U.comp[e][c] - state.u.comp[e][c]);
    }
  }
  return acc * g.cell_measure();
}

EssResSplit ess_res_split(const ScalarField& field, const ScalarField& rho, double r_low, double r_high) {
  if (!(r_low > 0.0 && r_high >= r_low)) throw std::invalid_argument("ess_res_split: bad thresholds");
  EssResSplit out;
  out.essential = ScalarField::zeros(field.grid);
  out.residual = ScalarField::zeros(field.grid);
  out.essential_mask.assign(field.v.size(), 0);
  for (std::size_t c = 0; c < field.v.size(); ++c) {
    const bool ess = rho.v[c] > 0.5 * r_low && rho.v[c] < 2.0 * r_high;
    out.essential_mask[c] = ess ? 1 : 0;
    (ess ? out.essential.v[c] : out.residual.v[c]) = field.v[c];
  }
  return out;
}

CoercivityConstants coercivity_constants(double r_low, double r_high, double rho_cap) {
  if (!(r_low > 0.0 && r_high >= r_low && rho_cap > 2.0 * r_high))
    throw std::invalid_argument("coercivity_constants: bad window");
  CoercivityConstants k;
  const int nr = 160;
  auto for_each_r = [&](auto&& body) {
    for (int i = 0; i <= nr; ++i) body(r_low + (r_high - r_low) * i / nr);
  };

  // Window constant: min over the essential strip of h_gap / (rho - r)^2,
  // with the limit 1/(2 r) at rho = r.
  double c_ess = std::numeric_limits<double>::infinity();
  for_each_r([&](double r) {
    auto ratio = [&](double rho) {
      const double d = rho - r;
      if (std::abs(d) < 1e-9 * r) return 0.5 / r;
      return h_gap(rho, r) / (d * d);
    };
    c_ess = std::min(c_ess, golden_min(ratio, 0.5 * r_low, r * (1.0 - 1e-6)));
    c_ess = std::min(c_ess, golden_min(ratio, r * (1.0 + 1e-6), 2.0 * r_high));
    c_ess = std::min(c_ess, 0.5 / r);
  });

  // Residual constants: minima over both residual branches up to rho_cap.
  double c_one = std::numeric_limits<double>::infinity();
  double c_abs = std::numeric_limits<double>::infinity();
  for_each_r([&](double r) {
    auto ratio_one = [&](double rho) { return h_gap(rho, r) / (1.0 + rho); };
    auto ratio_abs = [&](double rho) { return h_gap(rho, r) / std::max(std::abs(rho - r), 1e-300); };
    c_one = std::min({c_one, golden_min(ratio_one, 0.0, 0.5 * r_low), golden_min(ratio_one, 2.0 * r_high, rho_cap)});
    c_abs = std::min({c_abs, golden_min(ratio_abs, 0.0, 0.5 * r_low), golden_min(ratio_abs, 2.0 * r_high, rho_cap)});
  });

  // Shave so interpolation between probe points cannot flip a certificate.
  k.c_ess = c_ess * (1.0 - 1e-9);
  k.c_res_one = c_one * (1.0 - 1e-9);
  k.c_res_abs = c_abs * (1.0 - 1e-9);
  return k;
}

CertificateReport coercivity_bound(const FlowState& state, const ReferencePair& ref) {
  const Grid& g = state.rho.grid;
  double rho_max = 0.0;
  for (double r : state.rho.v) rho_max = std::max(rho_max, r);
  const double rho_cap = std::max(4.0 * ref.r_high, 2.0 * rho_max) + 1.0;
  CoercivityConstants k = coercivity_constants(ref.r_low, ref.r_high, rho_cap);
  const double cmin = std::min(0.5, std::min(k.c_ess, k.c_res_one));

  double rhs = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double rho = state.rho.v[c];
    const bool ess = rho > 0.5 * ref.r_low && rho < 2.0 * ref.r_high;
    double du2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double dd = state.u.comp[d][c] - ref.U.comp[d][c];
      du2 += dd * dd;
    }
    rhs += rho * du2;
    if (ess) {
      const double d = rho - ref.r.v[c];
      rhs += d * d;
    } else {
      rhs += 1.0 + rho;
    }
  }
  rhs *= g.cell_measure();

  const double energy = relative_energy(state, ref);
  CertificateReport rep;
  rep.title = "relative energy coercivity";
  rep.add(CheckEntry::make(
      "coercivity_lower_bound", energy, energy, cmin * rhs,
      "c_ess=" + format_full(k.c_ess) + " c_res=" + format_full(k.c_res_one) + " (oracle-minimized)"));
  return rep;
}

DissipationGap dissipation_gap(const VectorField& u, const VectorField& U, const ViscosityLaw& law) {
  if (!(u.grid == U.grid)) throw std::invalid_argument("dissipation_gap: grid mismatch");
  const TensorField du = sym_grad(u);
  const TensorField dU = sym_grad(U);
  const double q = law.q_claimed().value_or(2.0);
  DissipationGap gap;
  for (std::size_t c = 0; c < u.grid.cells(); ++c) {
    const Tensor3 a = du.at(c), b = dU.at(c);
    gap.value += pairing(law, a, b);
    gap.qnorm += std::pow((a - b).frobenius(), q);
  }
  gap.value *= u.grid.cell_measure();
  gap.qnorm *= u.grid.cell_measure();
  gap.ratio = gap.qnorm > 0.0 ? gap.value / gap.qnorm : std::numeric_limits<double>::infinity();
  return gap;
}

std::vector<RelEnergyRow> relative_energy_residual(const Trajectory& traj, const ReferenceSolution& ref,
                                                   const VectorFn& f, const ViscosityLaw& law, double bound) {
  if (traj.states.empty()) throw std::invalid_argument("relative_energy_residual: empty trajectory");
  std::vector<RelEnergyRow> rows;
  rows.reserve(traj.states.size());
  const Grid& g = traj.front().rho.grid;
  double gap_cum = 0.0, rem_cum = 0.0, e0 = 0.0;
  double prev_gap = 0.0, prev_rem = 0.0, prev_t = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const FlowState& s = traj.states[k];
    const ReferencePair p = ref.at(g, s.t);
    const double energy = relative_energy(s, p);
    const double gap = dissipation_gap(s.u, p.U, law).value;
    const double rem = remainder_general(s, p, f, law);
    if (k == 0) {
      e0 = energy;
    } else {
      const double dt = s.t - prev_t;
      gap_cum += 0.5 * dt * (prev_gap + gap);
      rem_cum += 0.5 * dt * (prev_rem + rem);
    }
    RelEnergyRow row;
    row.tau = s.t;
    row.energy = energy;
    row.gap_cum = gap_cum;
    row.remainder_cum = rem_cum;
    row.residual = energy + gap_cum - e0 - rem_cum;
    row.bound = bound;
    row.pass = row.residual <= bound;
    rows.push_back(row);
    prev_gap = gap;
    prev_rem = rem;
    prev_t = s.t;
  }
  return rows;
}

void write_certificate_csv(const std::filesystem::path& path, const std::vector<RelEnergyRow>& rows,
                           const std::string& summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "tau,E,dissipation_gap_cum,remainder_cum,residual,bound,pass\n";
  for (const auto& r : rows)
    out << format_full(r.tau) << ',' << format_full(r.energy) << ',' << format_full(r.gap_cum) << ','
        << format_full(r.remainder_cum) << ',' << format_full(r.residual) << ',' << format_full(r.bound) << ','
        << (r.pass ? 1 : 0) << "\n";
  if (!summary.empty()) out << "# " << summary << "\n";
}

ProofStepSeries proof_step_identities(const Trajectory& traj, const ReferenceSolution& ref, const VectorFn& f,
                                      const ViscosityLaw& law) {
  ProofStepSeries series;
  const Grid& g = traj.front().rho.grid;

  double a0 = 0.0, b0 = 0.0, c0 = 0.0;
  double i1_cum = 0.0, i2_cum = 0.0, i3_cum = 0.0;
  double prev_i1 = 0.0, prev_i2 = 0.0, prev_i3 = 0.0, prev_t = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const FlowState& s = traj.states[k];
    const ReferencePair p = ref.at(g, s.t);
    const TensorField grad_U = grad_vector(p.U);
    const TensorField dU = sym_grad(p.U);
    const TensorField du = sym_grad(s.u);
    const ScalarField div_U = div_vector(p.U);
    const VectorField grad_r = grad_scalar(p.r);

    double a = 0.0, b = 0.0, cc = 0.0;
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const double rho = s.rho.v[c];
      double uu = 0.0, uU = 0.0;
      for (int d = 0; d < g.dim; ++d) {
        uu += p.U.comp[d][c] * p.U.comp[d][c];
        uU += s.u.comp[d][c] * p.U.comp[d][c];
      }
      a += 0.5 * rho * uu;
      b += rho * uU;
      cc += rho * std::log(p.r.v[c]);

      // rho U . dt U + rho (u . grad U) . U
      for (int e = 0; e < g.dim; ++e) {
        i1 += rho * p.U.comp[e][c] * p.dt_U.comp[e][c];
        double adv = 0.0;
        for (int d = 0; d < g.dim; ++d) adv += s.u.comp[d][c] * grad_U.comp[e][d][c];
        i1 += rho * adv * p.U.comp[e][c];
      }
      // rho u . dt U + (rho u (x) u) : DU + rho div U + rho f . U - S(Du) : DU
      for (int e = 0; e < g.dim; ++e) i2 += rho * s.u.comp[e][c] * p.dt_U.comp[e][c];
      for (int e = 0; e < g.dim; ++e)
        for (int d = 0; d < g.dim; ++d) i2 += rho * s.u.comp[e][c] * s.u.comp[d][c] * dU.comp[e][d][c];
      i2 += rho * div_U.v[c];
      if (f) {
        const Vec3 fv = f(g.center(c), s.t);
        for (int d = 0; d < g.dim; ++d) i2 += rho * fv[static_cast<std::size_t>(d)] * p.U.comp[d][c];
      }
      i2 -= ddot(stress(law, du.at(c)), dU.at(c));
      // rho dt r / r + rho u . grad r / r
      i3 += rho * p.dt_r.v[c] / p.r.v[c];
      for (int d = 0; d < g.dim; ++d) i3 += rho * s.u.comp[d][c] * grad_r.comp[d][c] / p.r.v[c];
    }
    const double vol = g.cell_measure();
    a *= vol;
    b *= vol;
    cc *= vol;
    i1 *= vol;
    i2 *= vol;
    i3 *= vol;

    if (k == 0) {
      a0 = a;
      b0 = b;
      c0 = cc;
    } else {
      const double dt = s.t - prev_t;
      i1_cum += 0.5 * dt * (prev_i1 + i1);
      i2_cum += 0.5 * dt * (prev_i2 + i2);
      i3_cum += 0.5 * dt * (prev_i3 + i3);
    }
    series.t.push_back(s.t);
    series.kinetic_test.push_back(a - a0 - i1_cum);
    series.momentum_test.push_back(b - b0 - i2_cum);
    series.log_density_test.push_back(cc - c0 - i3_cum);
    prev_i1 = i1;
    prev_i2 = i2;
    prev_i3 = i3;
    prev_t = s.t;
  }
  return series;
}

double estimate_korn_constant(const Grid& grid, double q, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const VectorField v = random_smooth_vector(grid, seed + static_cast<std::uint64_t>(t));
    const TensorField dv = sym_grad(v);
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
      double vv = 0.0;
      for (int d = 0; d < grid.dim; ++d) vv += v.comp[d][c] * v.comp[d][c];
      num += std::pow(std::sqrt(vv), q);
      den += std::pow(dv.at(c).frobenius(), q);
    }
    if (den > 0.0) worst = std::max(worst, num / den);
  }
  if (worst == 0.0) throw std::runtime_error("estimate_korn_constant: degenerate trials");
  return 2.0 * worst;  // safety factor over the sampled class
}

CertificateReport weak_strong_bounds(const FlowState& state, const ReferencePair& ref, const ViscosityLaw& law,
                                     const WsuConstants& constants) {
  const Grid& g = state.rho.grid;
  const double q = law.q_claimed().value_or(2.0);
  const double qp = q / (q - 1.0);
  const double vol = g.cell_measure();

  CertificateReport rep;
  rep.title = "weak-strong remainder bounds";

  const double energy = relative_energy(state, ref);
  const DissipationGap gap = dissipation_gap(state.u, ref.U, law);

  // Reference stress divergence and its density-weighted sup.
  TensorField s_ref = TensorField::zeros(g);
  {
    const TensorField dU = sym_grad(ref.U);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const Tensor3 sc = stress(law, dU.at(c));
      for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) s_ref.comp[i][j][c] = sc(i, j);
    }
  }
  const VectorField div_s = div_tensor(s_ref);
  double c_visc = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    double n2 = 0.0;
    for (int d = 0; d < g.dim; ++d) n2 += div_s.comp[d][c] * div_s.comp[d][c];
    c_visc = std::max(c_visc, std::sqrt(n2) / ref.r.v[c]);
  }

  const TensorField grad_U = grad_vector(ref.U);
  double grad_sup = constants.grad_u_sup;
  if (grad_sup <= 0.0)
    for (std::size_t c = 0; c < g.cells(); ++c) grad_sup = std::max(grad_sup, grad_U.at(c).frobenius());

  // Convective term against the kinetic part of the energy.
  double convective = 0.0, kin = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    double du2 = 0.0;
    for (int e = 0; e < g.dim; ++e) {
      double adv = 0.0;
      for (int d = 0; d < g.dim; ++d)
        adv += (state.u.comp[d][c] - ref.U.comp[d][c]) * grad_U.comp[e][d][c];
      convective += state.rho.v[c] * adv * (ref.U.comp[e][c] - state.u.comp[e][c]);
      const double dd = state.u.comp[e][c] - ref.U.comp[e][c];
      du2 += dd * dd;
    }
    kin += state.rho.v[c] * du2;
  }
  convective = std::abs(convective * vol);
  kin *= vol;
  rep.add(CheckEntry::make("convective_term", convective, 2.0 * grad_sup * energy, convective,
                           "grad_U_sup=" + format_full(grad_sup) + " (oracle)"));

  // Split couplings with the reference stress divergence.
  double i_ess = 0.0, i_high = 0.0, i_low = 0.0;
  double ess_sq = 0.0, high_abs = 0.0, vol_low = 0.0, uq = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double rho = state.rho.v[c];
    const double rr = ref.r.v[c];
    double nds = 0.0, ndu = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      nds += div_s.comp[d][c] * div_s.comp[d][c];
      const double dd = state.u.comp[d][c] - ref.U.comp[d][c];
      ndu += dd * dd;
    }
    nds = std::sqrt(nds);
    ndu = std::sqrt(ndu);
    const double coupling = std::abs(rho - rr) / rr * nds * ndu;
    uq += std::pow(ndu, q);
    if (rho > 0.5 * ref.r_low && rho < 2.0 * ref.r_high) {
      i_ess += coupling;
      ess_sq += (rho - rr) * (rho - rr);
    } else if (rho >= 2.0 * ref.r_high) {
      i_high += coupling;
      high_abs += std::abs(rho - rr);
    } else {
      i_low += coupling;
      vol_low += 1.0;
    }
  }
  i_ess *= vol;
  i_high *= vol;
  i_low *= vol;
  ess_sq *= vol;
  high_abs *= vol;
  vol_low *= vol;
  uq *= vol;

  rep.add(CheckEntry::make("essential_coupling", i_ess,
                           c_visc * (ess_sq / ref.r_low + 0.5 * kin), i_ess,
                           "C_visc=" + format_full(c_visc) + " (oracle)"));
  rep.add(CheckEntry::make("residual_coupling_high", i_high, c_visc * (0.5 * high_abs + 0.5 * kin), i_high,
                           "C_visc=" + format_full(c_visc) + " (oracle)"));

  // Low-density branch: pointwise Young split plus the Korn absorption into
  // half of the dissipation gap.
  const double korn_c = constants.korn_c;
  rep.add(CheckEntry::make("korn_in_situ", gap.qnorm > 0.0 ? uq / gap.qnorm : 0.0, korn_c,
                           gap.qnorm > 0.0 ? uq / gap.qnorm : 0.0,
                           "korn_c=" + format_full(korn_c) + " (" + constants.korn_provenance + ")"));

  const double front = c_visc * ref.r_high;  // |rho - r| <= r <= r_high on the low branch
  if (i_low <= 0.0) {
    rep.add(CheckEntry::make("residual_coupling_low", 0.0, 0.0, 0.0, "empty low-density region"));
    rep.add(CheckEntry::make("dissipation_absorption", 0.0, 0.5 * std::max(gap.value, 0.0), 0.0, ""));
  } else if (!(gap.value > 0.0) || !(gap.qnorm > 0.0) || front <= 0.0 || korn_c <= 0.0) {
    rep.add(CheckEntry::make("residual_coupling_low_inconclusive", i_low,
                             std::numeric_limits<double>::infinity(), i_low,
                             "no dissipation available for absorption"));
  } else {
    const double eps_q = q * gap.value / (2.0 * front * korn_c * gap.qnorm);
    const double delta = front * std::pow(eps_q, 1.0) * korn_c / q;  // coefficient of int |Du-DU|^q
    const double bound_low = front * (std::pow(eps_q, -qp / q) / qp * vol_low) + 0.5 * gap.value;
    rep.add(CheckEntry::make("residual_coupling_low", i_low, bound_low, i_low,
                             "eps^q=" + format_full(eps_q) + " korn_c=" + format_full(korn_c)));
    rep.add(CheckEntry::make("dissipation_absorption", delta * gap.qnorm, 0.5 * gap.value + 1e-300,
                             delta * gap.qnorm, "delta=" + format_full(delta)));
  }

  // Triangle bound on the whole two-term remainder.
  double total_bound = 0.0;
  for (const auto& e : rep.entries)
    if (e.name != "korn_in_situ") total_bound += std::max(e.bound, 0.0);
  const double rem = std::abs(remainder_strong(state, ref, law));
  rep.add(CheckEntry::make("remainder_total", rem, total_bound, rem, ""));
  return rep;
}

GronwallResult gronwall_certify(const std::vector<double>& t, const std::vector<double>& energy,
                                GronwallMode mode, double e0, double tol) {
  if (t.empty() || t.size() != energy.size()) throw std::invalid_argument("gronwall_certify: empty or mismatched series");
  GronwallResult res;
  for (double e : energy) res.max_energy = std::max(res.max_energy, e);
  if (mode == GronwallMode::IdenticalData) {
    res.lambda = 0.0;
    res.pass = res.max_energy <= tol;
    return res;
  }
  const double floor = e0 + tol;
  if (!(floor > 0.0)) throw std::invalid_argument("gronwall_certify: perturbed mode needs e0 + tol > 0");
  double lambda = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] <= 0.0) continue;
    if (energy[k] > floor) lambda = std::max(lambda, std::log(energy[k] / floor) / t[k]);
  }
  res.lambda = lambda;
  res.pass = std::isfinite(lambda);
  return res;
}

}  // namespace nncert
