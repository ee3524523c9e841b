#include "nncert/young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nncert {

namespace {

// Series for e^z - z - 1 below the cancellation-prone range. Twelve terms keep
// the truncation error under 1e-15 at the switch point z = 1/4.
constexpr double kSeriesSwitch = 0.25;

double m_series(double z) {
  double term = z * z / 2.0;  // z^2 / 2!
  double sum = term;
  for (int i = 3; i <= 13; ++i) {
    term *= z / i;
    sum += term;
  }
  return sum;
}

}  // namespace

YoungFunction YoungFunction::m_exponential() {
  YoungFunction f;
  f.kind_ = YoungKind::MExponential;
  f.domain_max_ = 500.0;
  return f;
}

YoungFunction YoungFunction::phi_gamma(double gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("phi_gamma requires gamma > 1");
  YoungFunction f;
  f.kind_ = YoungKind::PhiGamma;
  f.gamma_ = gamma;
  f.domain_max_ = 1e12;
  return f;
}

YoungFunction YoungFunction::n_conjugate_of_m() {
  YoungFunction f;
  f.kind_ = YoungKind::NConjugateOfM;
  f.domain_max_ = 1e12;
  return f;
}

YoungFunction YoungFunction::quadratic_f() {
  YoungFunction f;
  f.kind_ = YoungKind::QuadraticF;
  f.domain_max_ = 1e150;
  return f;
}

YoungFunction YoungFunction::tabulated(std::vector<double> z, std::vector<double> value) {
  if (z.size() != value.size() || z.size() < 2) throw std::invalid_argument("tabulated: need matching data, >= 2 points");
  if (!std::is_sorted(z.begin(), z.end())) throw std::invalid_argument("tabulated: breakpoints must be sorted");
  YoungFunction f;
  f.kind_ = YoungKind::Tabulated;
  f.domain_max_ = z.back();
  f.z_ = std::move(z);
  f.val_ = std::move(value);
  return f;
}

double eval_young(const YoungFunction& f, double z) {
  if (z < 0.0) throw std::domain_error("eval_young: negative argument");
  if (z > f.domain_max_) throw std::range_error("eval_young: argument " + std::to_string(z) + " exceeds domain_max");
  switch (f.kind_) {
    case YoungKind::MExponential:
      return z < kSeriesSwitch ? m_series(z) : std::exp(z) - z - 1.0;
    case YoungKind::PhiGamma: {
      const double l = std::log1p(z);
      return (1.0 + z) * std::pow(l, f.gamma_);
    }
    case YoungKind::NConjugateOfM:
      return (1.0 + z) * std::log1p(z) - z;
    case YoungKind::QuadraticF:
      return 0.25 * z * z;
    case YoungKind::Tabulated: {
      if (z <= f.z_.front()) {
        // Linear through the origin below the first breakpoint.
        return f.z_.front() > 0.0 ? f.val_.front() * (z / f.z_.front()) : f.val_.front();
      }
      auto it = std::upper_bound(f.z_.begin(), f.z_.end(), z);
      std::size_t i = static_cast<std::size_t>(it - f.z_.begin());
      if (i >= f.z_.size()) i = f.z_.size() - 1;
      const double z0 = f.z_[i - 1], z1 = f.z_[i];
      const double w = (z - z0) / (z1 - z0);
      return (1.0 - w) * f.val_[i - 1] + w * f.val_[i];
    }
  }
  return 0.0;
}

double conjugate_numeric(const YoungFunction& f, double y, const ConjugateSearch& search) {
  if (y < 0.0) throw std::domain_error("conjugate_numeric: negative argument");
  const double z_hi = std::min(search.z_hi, f.domain_max());
  auto g = [&](double z) { return z * y - eval_young(f, z); };
  // The supremand must already be decreasing at z_hi, otherwise the bracket
  // does not contain the maximizer.
  const double dz = std::max(1e-8, 1e-10 * z_hi);
  if (g(z_hi) > g(z_hi - dz)) throw std::runtime_error("conjugate_numeric: supremand still increasing at z_hi");
  // Golden-section on the concave supremand.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = z_hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 160 && (b - a) > 1e-15 * std::max(1.0, z_hi); ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = g(d);
    }
  }
  const double best = std::max({g(0.0), gc, gd, g(0.5 * (a + b))});
  return std::max(0.0, best);
}

YoungFunction tabulate_conjugate(const YoungFunction& f, double y_lo, double y_hi, int points,
                                 const ConjugateSearch& search) {
  if (!(y_lo > 0.0 && y_hi > y_lo && points >= 2)) throw std::invalid_argument("tabulate_conjugate: bad grid");
  std::vector<double> ys(static_cast<std::size_t>(points) + 1), vs(static_cast<std::size_t>(points) + 1);
  ys[0] = 0.0;
  vs[0] = 0.0;
  const double step = std::log(y_hi / y_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double y = y_lo * std::exp(step * i);
    ys[static_cast<std::size_t>(i) + 1] = y;
    vs[static_cast<std::size_t>(i) + 1] = conjugate_numeric(f, y, search);
  }
  return YoungFunction::tabulated(std::move(ys), std::move(vs));
}

double modular(const ScalarField& v, const YoungFunction& f) {
  double s = 0.0;
  for (std::size_t c = 0; c < v.v.size(); ++c) {
    try {
      s += eval_young(f, std::abs(v.v[c]));
    } catch (const std::range_error&) {
      throw std::range_error("modular: overflow at cell " + std::to_string(c));
    }
  }
  return s * v.grid.cell_measure();
}

double luxemburg_norm(const ScalarField& v, const YoungFunction& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("luxemburg_norm: tol must be positive");
  double vmax = 0.0;
  for (double x : v.v) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) return 0.0;

  auto scaled = [&](double lambda) {
    ScalarField w = v;
    for (double& x : w.v) x = std::abs(x) / lambda;
    return w;
  };
  // modular(v/lambda) <= 1 ?  Overflow means lambda is far too small.
  auto le_one = [&](double lambda) {
    try {
      return modular(scaled(lambda), f) <= 1.0;
    } catch (const std::range_error&) {
      return false;
    }
  };

  double hi = 1.0;
  int guard = 0;
  while (!le_one(hi)) {
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("luxemburg_norm: no upper bracket");
  }
  double lo = hi / 2.0;
  guard = 0;
  while (le_one(lo)) {
    hi = lo;
    lo /= 2.0;
    if (++guard > 2000) return 0.0;  // modular vanishes for every lambda
  }
  for (int it = 0; it < 200 && (hi - lo) > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (le_one(mid) ? hi : lo) = mid;
  }
  if ((hi - lo) > tol * hi) throw std::runtime_error("luxemburg_norm: bisection stalled in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return hi;
}

Delta2Report check_delta2(const YoungFunction& f, double z_lo, double z_hi, int samples) {
  if (!(z_lo > 0.0 && z_hi > z_lo && samples >= 4)) throw std::invalid_argument("check_delta2: bad range");
  if (2.0 * z_hi > f.domain_max()) throw std::invalid_argument("check_delta2: range exceeds domain_max/2");
  Delta2Report rep;
  const double step = std::log(z_hi / z_lo) / (samples - 1);
  double ratio_top = 0.0, ratio_near_top = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = z_lo * std::exp(step * i);
    const double ratio = eval_young(f, 2.0 * z) / eval_young(f, z);
    rep.sup_ratio = std::max(rep.sup_ratio, ratio);
    if (i == samples - 1) ratio_top = ratio;
    if (i == samples - 1 - std::max(1, samples / 10)) ratio_near_top = ratio;
  }
  rep.satisfied = std::isfinite(rep.sup_ratio) && ratio_top <= ratio_near_top * (1.0 + 1e-9);
  return rep;
}

}  // namespace nncert
