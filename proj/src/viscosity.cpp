#include "nncert/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nncert/young.hpp"

namespace nncert {

namespace {

constexpr double kSeriesSwitch = 0.25;

// P(z) = sum_{i>=0} z^i / (i+2)!  below the switch point.
double p_series(double z) {
  double term = 0.5;  // 1/2!
  double sum = term;
  for (int i = 1; i <= 12; ++i) {
    term *= z / (i + 2);
    sum += term;
  }
  return sum;
}

// P(z) z^2 = sum_{k>=2} z^k / k!, summed exactly as the Young-function side.
double gauge_series(double z) {
  double term = z * z / 2.0;
  double sum = term;
  for (int i = 3; i <= 13; ++i) {
    term *= z / i;
    sum += term;
  }
  return sum;
}

// P(z) z = sum_{i>=1} z^i / (i+1)!.
double pz_series(double z) {
  double term = 0.5 * z;
  double sum = term;
  for (int i = 2; i <= 13; ++i) {
    term *= z / (i + 1);
    sum += term;
  }
  return sum;
}

// P'(z) = sum_{j>=0} (j+1) z^j / (j+3)!.
double pprime_series(double z) {
  double sum = 0.0;
  double zpow = 1.0;
  double fact = 6.0;  // 3!
  for (int j = 0; j <= 12; ++j) {
    sum += (j + 1) * zpow / fact;
    zpow *= z;
    fact *= j + 4;
  }
  return sum;
}

// P(z) z - z/2 = sum_{i>=2} z^i / (i+1)!.
double tail_series(double z) {
  double term = z * z / 6.0;
  double sum = term;
  for (int i = 3; i <= 14; ++i) {
    term *= z / (i + 1);
    sum += term;
  }
  return sum;
}

double m_gauge(double z) { return std::exp(z) - z - 1.0; }

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order.
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[static_cast<std::size_t>(i)] = t;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussRule& gauss32() {
  static const GaussRule rule(32);
  return rule;
}

template <class F>
double gauss_segment(const F& f, double a, double b) {
  const auto& r = gauss32();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

// Composite rule over [0,1] graded around a possibly kinked location s_star.
template <class F>
double gauss01_graded(const F& f, double s_star) {
  std::vector<double> bp{0.0, 1.0};
  if (s_star > 0.0 && s_star < 1.0) {
    bp.push_back(s_star);
    for (double d : {0.3, 0.03, 0.003}) {
      if (s_star - d > 0.0) bp.push_back(s_star - d);
      if (s_star + d < 1.0) bp.push_back(s_star + d);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) s += gauss_segment(f, bp[i], bp[i + 1]);
  return s;
}

}  // namespace

ViscosityLaw ViscosityLaw::exponential_m() {
  ViscosityLaw l;
  l.kind_ = LawKind::ExponentialM;
  l.q_claimed_ = 3.0;
  l.alpha_lower_ = 1.0;
  l.domain_max_ = 500.0;
  return l;
}

ViscosityLaw ViscosityLaw::power_law(double c, double alpha) {
  if (!(c > 0.0 && alpha > 0.0)) throw std::invalid_argument("power_law: c and alpha must be positive");
  ViscosityLaw l;
  l.kind_ = LawKind::PowerLaw;
  l.c_ = c;
  l.alpha_ = alpha;
  l.alpha_lower_ = alpha;
  l.q_claimed_ = 2.0 + alpha;
  l.domain_max_ = 1e100;
  return l;
}

ViscosityLaw ViscosityLaw::newtonian(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("newtonian: mu must be positive");
  ViscosityLaw l;
  l.kind_ = LawKind::ConstantNewtonian;
  l.mu_ = mu;
  l.q_claimed_ = 2.0;
  l.domain_max_ = 1e300;
  return l;
}

double ViscosityLaw::value(double z) const {
  if (z < 0.0) throw std::domain_error("viscosity: negative argument");
  if (z > domain_max_) throw std::range_error("viscosity: argument exceeds domain_max");
  switch (kind_) {
    case LawKind::ExponentialM:
      return z < kSeriesSwitch ? p_series(z) : m_gauge(z) / (z * z);
    case LawKind::PowerLaw:
      return c_ * std::pow(z, alpha_);
    case LawKind::ConstantNewtonian:
      return mu_;
  }
  return 0.0;
}

double ViscosityLaw::p_times_z(double z) const {
  if (kind_ == LawKind::ExponentialM) return z < kSeriesSwitch ? pz_series(z) : m_gauge(z) / z;
  return value(z) * z;
}

double ViscosityLaw::stress_gauge(double z) const {
  switch (kind_) {
    case LawKind::ExponentialM:
      // Same summation as the exponential Young function so the identity
      // P(z) z^2 = M(z) holds bitwise, not just to rounding.
      return z < kSeriesSwitch ? gauge_series(z) : m_gauge(z);
    case LawKind::PowerLaw:
      return c_ * std::pow(z, alpha_ + 2.0);
    case LawKind::ConstantNewtonian:
      return mu_ * z * z;
  }
  return 0.0;
}

double ViscosityLaw::derivative(double z) const {
  switch (kind_) {
    case LawKind::ExponentialM: {
      if (z < kSeriesSwitch) return pprime_series(z);
      const double mp = std::exp(z) - 1.0;
      return (mp * z - 2.0 * m_gauge(z)) / (z * z * z);
    }
    case LawKind::PowerLaw:
      return z == 0.0 ? (alpha_ == 1.0 ? c_ : (alpha_ > 1.0 ? 0.0 : std::numeric_limits<double>::infinity()))
                      : c_ * alpha_ * std::pow(z, alpha_ - 1.0);
    case LawKind::ConstantNewtonian:
      return 0.0;
  }
  return 0.0;
}

ViscosityEval eval_viscosity(const ViscosityLaw& law, double z) {
  ViscosityEval e;
  if (law.kind() == LawKind::ExponentialM && z == 0.0) {
    e.value = 0.0;
    e.removable_limit = 0.5;
    return e;
  }
  e.value = law.value(z);
  return e;
}

Tensor3 stress(const ViscosityLaw& law, const Tensor3& u) {
  const double nu = u.frobenius();
  if (nu == 0.0) return Tensor3::zero();
  return law.value(nu) * u;
}

double pairing(const ViscosityLaw& law, const Tensor3& u, const Tensor3& v) {
  return ddot(stress(law, u) - stress(law, v), u - v);
}

Tensor3 random_symmetric(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Tensor3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = dist(rng);
  return a.sym();
}

CertificateReport certify_pointwise_conditions(const ViscosityLaw& law, const std::vector<double>& z_grid,
                                               double tol) {
  if (z_grid.size() < 3) throw std::invalid_argument("certify_pointwise_conditions: need >= 3 grid points");
  CertificateReport rep;
  rep.title = "pointwise viscosity conditions";
  const YoungFunction gauge = YoungFunction::m_exponential();
  const YoungFunction conj = YoungFunction::n_conjugate_of_m();

  // Growth of the stress gauge against the exponential gauge: best constant
  // C with P(z) z^2 >= C M(z) on the grid.
  double c_growth = std::numeric_limits<double>::infinity();
  double witness = 0.0;
  for (double z : z_grid) {
    if (z <= 0.0) continue;
    const double ratio = law.stress_gauge(z) / eval_young(gauge, z);
    if (ratio < c_growth) {
      c_growth = ratio;
      witness = z;
    }
  }
  rep.add(CheckEntry::make("growth_vs_exponential_gauge", c_growth, 0.0, -c_growth,
                           law.kind() == LawKind::ExponentialM ? "C=1 (identity)"
                                                               : "C estimated on grid, witness z=" + format_full(witness)));

  // Convexity of z -> P(z) z^2 by nonuniform second differences.
  double worst_second = std::numeric_limits<double>::infinity();
  double conv_witness = 0.0;
  for (std::size_t i = 1; i + 1 < z_grid.size(); ++i) {
    const double z0 = z_grid[i - 1], z1 = z_grid[i], z2 = z_grid[i + 1];
    const double g0 = law.stress_gauge(z0), g1 = law.stress_gauge(z1), g2 = law.stress_gauge(z2);
    const double d2 = 2.0 * (g0 / ((z1 - z0) * (z2 - z0)) - g1 / ((z1 - z0) * (z2 - z1)) + g2 / ((z2 - z1) * (z2 - z0)));
    const double scale = std::max(1.0, std::abs(g2));
    if (d2 / scale < worst_second) {
      worst_second = d2 / scale;
      conv_witness = z1;
    }
  }
  rep.add(CheckEntry::make("stress_gauge_convexity", worst_second, tol, -worst_second,
                           "witness z=" + format_full(conv_witness)));

  // Conjugate growth: best C with N(P(z) z) <= C (1 + M(z)).
  double c_conj = 0.0;
  double conj_witness = 0.0;
  for (double z : z_grid) {
    if (z < 0.0) continue;
    const double ratio = eval_young(conj, law.p_times_z(z)) / (1.0 + eval_young(gauge, z));
    if (ratio > c_conj) {
      c_conj = ratio;
      conj_witness = z;
    }
  }
  rep.add(CheckEntry::make("conjugate_growth_constant", c_conj, std::numeric_limits<double>::infinity(), c_conj,
                           "C estimated on grid, witness z=" + format_full(conj_witness)));

  // Stress continuity under small perturbations: |S(U - l V) - S(U)| should
  // vanish linearly in l. Fixed seeded tensors, fitted log-log slope.
  std::mt19937_64 rng(0x5eedu);
  double worst_slope = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 4; ++trial) {
    const Tensor3 u = random_symmetric(rng, -2.0, 2.0);
    const Tensor3 v = random_symmetric(rng, -2.0, 2.0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int npts = 0;
    for (double lambda : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const double err = (stress(law, u - lambda * v) - stress(law, u)).frobenius();
      if (err <= 0.0) continue;
      const double lx = std::log(lambda), ly = std::log(err);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++npts;
    }
    const double slope = npts >= 2 ? (npts * sxy - sx * sy) / (npts * sxx - sx * sx) : 1.0;
    worst_slope = std::min(worst_slope, slope);
  }
  // The continuum slope is exactly 1; 0.99 absorbs the curvature of the fit.
  rep.add(CheckEntry::make("stress_continuity_slope", worst_slope, -0.99, -worst_slope, "threshold 0.99"));
  return rep;
}

MonotonicityCertificate certify_monotonicity_exponent(const ViscosityLaw& law, double q, long n_samples,
                                                      double entry_lo, double entry_hi, std::uint64_t seed) {
  if (n_samples < 1 || !(q > 1.0)) throw std::invalid_argument("certify_monotonicity_exponent: bad arguments");
  MonotonicityCertificate cert;
  cert.c_min = std::numeric_limits<double>::infinity();
  for (long k = 0; k < n_samples; ++k) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 1));
    const Tensor3 u = random_symmetric(rng, entry_lo, entry_hi);
    const Tensor3 v = random_symmetric(rng, entry_lo, entry_hi);
    const double sep = (u - v).frobenius();
    if (sep <= 1e-9) continue;
    const double ratio = pairing(law, u, v) / std::pow(sep, q);
    ++cert.evaluated;
    if (ratio <= 0.0) ++cert.nonpositive;
    if (ratio < cert.c_min) {
      cert.c_min = ratio;
      cert.witness_u = u;
      cert.witness_v = v;
    }
  }
  if (cert.evaluated == 0) throw std::runtime_error("certify_monotonicity_exponent: degenerate sampling");
  cert.pass = cert.c_min > 0.0;
  return cert;
}

StressSlopeSplit stress_slope_split(const ViscosityLaw& law, double z) {
  if (law.kind() != LawKind::ExponentialM)
    throw std::invalid_argument("stress_slope_split: only defined for the exponential law");
  StressSlopeSplit s;
  s.quadratic_prime = 0.5 * z;
  s.tail_prime = z < kSeriesSwitch ? tail_series(z) : m_gauge(z) / z - 0.5 * z;
  return s;
}

CertificateReport certify_growth_chain(const ViscosityLaw& law, long n_samples, double entry_lo,
                                       double entry_hi, std::uint64_t seed) {
  if (!law.alpha_lower()) throw std::invalid_argument("certify_growth_chain: law has no lower growth exponent");
  const double alpha = *law.alpha_lower();
  CertificateReport rep;
  rep.title = "growth-to-coercivity chain";

  // Preconditions on P itself: non-decreasing, and bounded below by c z^alpha.
  double c_lower = std::numeric_limits<double>::infinity();
  double worst_slope = std::numeric_limits<double>::infinity();
  const double z_top = 3.0 * std::abs(entry_hi - entry_lo) * 3.0;
  for (int i = 1; i <= 400; ++i) {
    const double z = z_top * i / 400.0;
    c_lower = std::min(c_lower, law.value(z) / std::pow(z, alpha));
    worst_slope = std::min(worst_slope, law.derivative(z));
  }
  rep.add(CheckEntry::make("precheck_lower_growth", c_lower, 0.0, -c_lower,
                           "c estimated on sampled z range"));
  rep.add(CheckEntry::make("precheck_monotone_viscosity", worst_slope, 1e-12, -worst_slope, ""));
  if (!(c_lower > 0.0) || worst_slope < -1e-12) return rep;

  const double kExactTol = 1e-12;
  const double kQuadTol = 1e-8;

  double worst_identity = 0.0;            // |pairing - (I1+I2)| / scale
  double worst_chain = std::numeric_limits<double>::infinity();  // min normalized margin over all inequality links
  double worst_bound = std::numeric_limits<double>::infinity();  // (2-s)^2 envelope margin
  double worst_moment = 0.0;              // second-moment identity defect
  double worst_algebraic = std::numeric_limits<double>::infinity();
  long skipped = 0;
  std::string witness;

  const auto& gr = gauss32();

  for (long k = 0; k < n_samples; ++k) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 1));
    const Tensor3 u = random_symmetric(rng, entry_lo, entry_hi);
    const Tensor3 v = random_symmetric(rng, entry_lo, entry_hi);
    const Tensor3 d = u - v;
    const double sep = d.frobenius();
    if (sep <= 1e-9) {
      ++skipped;
      continue;
    }
    const double sep2 = sep * sep;
    const double p = pairing(law, u, v);
    auto w_at = [&](double s) { return v + s * (u - v); };

    // Location of the nearest-to-zero point of |W(s)| along the segment.
    const double s_star = std::clamp(-ddot(v, d) / sep2, 0.0, 1.0);

    const double int_p = gauss01_graded([&](double s) { return law.value(w_at(s).frobenius()); }, s_star);
    const double i1 = int_p * sep2;
    const double i2 = gauss01_graded(
        [&](double s) {
          const Tensor3 w = w_at(s);
          const double nw = w.frobenius();
          if (nw < 1e-14) return 0.0;
          const double proj = ddot(w, d);
          return law.derivative(nw) / nw * proj * proj;
        },
        s_star);
    const double scale = std::max({1.0, std::abs(p), std::abs(i1) + std::abs(i2)});
    const double identity_defect = std::abs(p - (i1 + i2)) / scale;
    if (identity_defect > worst_identity) {
      worst_identity = identity_defect;
      if (identity_defect > kQuadTol) witness = "identity at sample " + std::to_string(k);
    }
    // I2 is a sum of squares weighted by P' >= 0.
    worst_chain = std::min(worst_chain, i2 / scale + kExactTol);

    if (u.frobenius() >= sep) {
      // Monotone-rearrangement branch: shrink the argument of P three times,
      // ending at the one-dimensional integral of P.
      const double nu = u.frobenius();
      const double a1 =
          sep2 * gauss01_graded([&](double s) { return law.value(std::abs(nu - (1.0 - s) * sep)); }, 1.0 - nu / sep);
      const double a2 = sep2 * gauss_segment([&](double s) { return law.value(s * sep); }, 0.0, 1.0);
      const double a3 = c_lower * std::pow(sep, 2.0 + alpha) / (1.0 + alpha);
      worst_chain = std::min({worst_chain, (i1 - a1) / scale, (a1 - a2) / scale, (a2 - a3) / scale,
                              (p - a3) / scale});
    } else {
      // Oblique branch: envelope bound, Jensen step, and the quadratic-form
      // lower bound under 2 U:V < |V|^2.
      const double uv = ddot(u, v);
      if (!(2.0 * uv < ddot(v, v) + 1e-14)) {
        ++skipped;  // classification boundary, counted not judged
        continue;
      }
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        const double s = 0.5 + 0.5 * gr.x[i];
        const double lhs = ddot(w_at(s), w_at(s));
        const double rhs = (2.0 - s) * (2.0 - s) * sep2;
        worst_bound = std::min(worst_bound, (rhs - lhs) / std::max(1.0, rhs));
      }
      const double mid = gauss01_graded(
          [&](double s) {
            const double nw = w_at(s).frobenius();
            return law.value(nw) * nw * nw / ((2.0 - s) * (2.0 - s));
          },
          s_star);
      const double b1 = gauss01_graded(
          [&](double s) {
            const double nw = w_at(s).frobenius();
            return law.value(nw) * nw * nw;
          },
          s_star);
      const double b2 = c_lower * gauss01_graded(
                                      [&](double s) { return std::pow(w_at(s).frobenius(), 2.0 + alpha); }, s_star);
      const double second_moment = gauss_segment(
          [&](double s) {
            const Tensor3 w = w_at(s);
            return ddot(w, w);
          },
          0.0, 1.0);
      const double closed_moment = (ddot(u, u) + ddot(v, v) + uv) / 3.0;
      worst_moment = std::max(worst_moment, std::abs(second_moment - closed_moment) / std::max(1.0, closed_moment));
      const double jensen_rhs = std::pow(second_moment, 1.0 + alpha / 2.0);
      const double jensen_lhs = gauss01_graded(
          [&](double s) { return std::pow(ddot(w_at(s), w_at(s)), 1.0 + alpha / 2.0); }, s_star);
      const double algebraic_margin = (closed_moment * 3.0 - 0.1 * sep2) / std::max(1.0, sep2);
      worst_algebraic = std::min(worst_algebraic, algebraic_margin);
      const double final_lower = c_lower * std::pow(0.1 * sep2 / 3.0, 1.0 + alpha / 2.0);
      worst_chain = std::min({worst_chain, (i1 - mid) / scale, (mid - 0.25 * b1) / scale, (0.25 * b1 - 0.25 * b2) / scale,
                              (jensen_lhs - jensen_rhs) / std::max(1.0, jensen_rhs),
                              (0.25 * c_lower * jensen_lhs - 0.25 * final_lower) / scale, (p - 0.25 * final_lower) / scale});
    }
  }

  rep.add(CheckEntry::make("integral_identity_defect", worst_identity, kQuadTol, worst_identity, witness));
  rep.add(CheckEntry::make("inequality_chain_margin", worst_chain, kQuadTol, -worst_chain, ""));
  rep.add(CheckEntry::make("segment_envelope_margin", worst_bound, kExactTol, -worst_bound, ""));
  rep.add(CheckEntry::make("second_moment_identity", worst_moment, 1e-10, worst_moment, ""));
  rep.add(CheckEntry::make("quadratic_form_margin", worst_algebraic, kExactTol, -worst_algebraic, ""));
  rep.add(CheckEntry::make("boundary_pairs_skipped", static_cast<double>(skipped),
                           static_cast<double>(n_samples), static_cast<double>(skipped), "informational"));
  return rep;
}

double fit_pairing_exponent(const ViscosityLaw& law, long n_samples, double entry_lo, double entry_hi,
                            std::uint64_t seed) {
  // Lower envelope of pairing vs separation on a log-log binning; returns the
  // least-squares slope of the envelope over the small-separation bins.
  constexpr int kBins = 24;
  std::vector<double> env(kBins, std::numeric_limits<double>::infinity());
  const double lo = std::log(1e-3), hi = std::log(10.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale_dist(std::log(1e-3), std::log(1.0));
  for (long k = 0; k < n_samples; ++k) {
    Tensor3 u = random_symmetric(rng, entry_lo, entry_hi);
    Tensor3 v = random_symmetric(rng, entry_lo, entry_hi);
    // Shrink both tensors by a random factor so small separations are well
    // represented down at the scale where the coercive exponent bites.
    const double s = std::exp(scale_dist(rng));
    u = s * u;
    v = s * v;
    const double sep = (u - v).frobenius();
    if (sep <= 0.0) continue;
    const double lsep = std::log(sep);
    if (lsep < lo || lsep >= hi) continue;
    const int b = static_cast<int>(kBins * (lsep - lo) / (hi - lo));
    const double p = pairing(law, u, v);
    if (p > 0.0) env[static_cast<std::size_t>(b)] = std::min(env[static_cast<std::size_t>(b)], p);
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int npts = 0;
  for (int b = 0; b < kBins; ++b) {
    if (!std::isfinite(env[static_cast<std::size_t>(b)])) continue;
    const double x = lo + (b + 0.5) * (hi - lo) / kBins;
    const double y = std::log(env[static_cast<std::size_t>(b)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++npts;
  }
  if (npts < 3) throw std::runtime_error("fit_pairing_exponent: not enough populated bins");
  return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
}

CertificateReport certify_exponential_decomposition(const ViscosityLaw& law, double z_lo, double z_hi,
                                                    int points, double tol_scale) {
  if (law.kind() != LawKind::ExponentialM)
    throw std::invalid_argument("certify_exponential_decomposition: exponential law only");
  if (!(z_lo > 0.0 && z_hi > z_lo && points >= 3))
    throw std::invalid_argument("certify_exponential_decomposition: bad grid");
  const YoungFunction m = YoungFunction::m_exponential();

  double gauge_rel = 0.0, gauge_worst_z = z_lo;
  double decomp_abs = 0.0, decomp_worst_z = z_lo;
  long ratio_violations = 0;
  double prev_ratio = -std::numeric_limits<double>::infinity();
  const double step = std::log(z_hi / z_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double z = z_lo * std::exp(step * i);
    const double rel = std::abs(law.stress_gauge(z) - eval_young(m, z)) / eval_young(m, z);
    if (rel > gauge_rel) {
      gauge_rel = rel;
      gauge_worst_z = z;
    }
    const StressSlopeSplit split = stress_slope_split(law, z);
    const double resid = std::abs(split.quadratic_prime + split.tail_prime - law.p_times_z(z));
    if (resid > decomp_abs) {
      decomp_abs = resid;
      decomp_worst_z = z;
    }
    const double ratio = split.tail_prime / z;
    if (ratio < prev_ratio) ++ratio_violations;
    prev_ratio = ratio;
  }

  CertificateReport rep;
  rep.title = "exponential-law decomposition";
  rep.add(CheckEntry::make("stress_gauge_identity_rel", gauge_rel, 1e-12 * tol_scale, gauge_rel,
                           "worst z=" + format_full(gauge_worst_z) + " (identity)"));
  rep.add(CheckEntry::make("slope_decomposition_abs", decomp_abs, 1e-10 * tol_scale, decomp_abs,
                           "worst z=" + format_full(decomp_worst_z) + " (identity)"));
  rep.add(CheckEntry::make("tail_slope_ratio_monotone", static_cast<double>(ratio_violations), 0.0,
                           static_cast<double>(ratio_violations),
                           "violations on " + std::to_string(points) + "-point grid"));
  return rep;
}

}  // namespace nncert
