#ifndef NNCERT_YOUNG_HPP
#define NNCERT_YOUNG_HPP

#include <cstdint>
#include <vector>

#include "nncert/grid.hpp"

namespace nncert {

enum class YoungKind { MExponential, PhiGamma, NConjugateOfM, QuadraticF, Tabulated };

/// Convex gauge on [0, inf) with value 0 at 0. Built-in shapes:
///   MExponential   M(z) = e^z - z - 1
///   PhiGamma       (1+z) ln^gamma(1+z), gamma > 1
///   NConjugateOfM  (1+y) ln(1+y) - y
///   QuadraticF     z^2 / 4
///   Tabulated      monotone piecewise-linear interpolation of sample data
class YoungFunction {
 public:
  static YoungFunction m_exponential();
  static YoungFunction phi_gamma(double gamma);
  static YoungFunction n_conjugate_of_m();
  static YoungFunction quadratic_f();
  static YoungFunction tabulated(std::vector<double> z, std::vector<double> value);

  YoungKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double domain_max() const { return domain_max_; }
  const std::vector<double>& breakpoints() const { return z_; }
  const std::vector<double>& values() const { return val_; }

  friend double eval_young(const YoungFunction& f, double z);

 private:
  YoungKind kind_ = YoungKind::MExponential;
  double gamma_ = 2.0;
  double domain_max_ = 500.0;
  std::vector<double> z_, val_;
};

double eval_young(const YoungFunction& f, double z);

struct ConjugateSearch {
  double z_hi = 64.0;
  double tol = 1e-12;
};

/// sup_{z in [0, z_hi]} (z*y - f(z)). Throws if the supremand is still
/// increasing at z_hi.
double conjugate_numeric(const YoungFunction& f, double y, const ConjugateSearch& search = {});

/// Tabulated conjugate on a log-spaced y grid, suitable for gauges without a
/// closed-form conjugate.
YoungFunction tabulate_conjugate(const YoungFunction& f, double y_lo, double y_hi, int points,
                                 const ConjugateSearch& search = {});

double modular(const ScalarField& v, const YoungFunction& f);

double luxemburg_norm(const ScalarField& v, const YoungFunction& f, double tol = 1e-10);

struct Delta2Report {
  double sup_ratio = 0.0;
  bool satisfied = false;
};

Delta2Report check_delta2(const YoungFunction& f, double z_lo, double z_hi, int samples);

}  // namespace nncert

#endif
