#ifndef NNCERT_VISCOSITY_HPP
#define NNCERT_VISCOSITY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nncert/report.hpp"
#include "nncert/tensor.hpp"

namespace nncert {

enum class LawKind { ExponentialM, PowerLaw, ConstantNewtonian };

/// Scalar shear viscosity P with the stress map U -> P(|U|)U.
///   ExponentialM      P(z) = (e^z - z - 1)/z^2, with P(0) = 0 by convention
///                     (removable limit 1/2)
///   PowerLaw          P(z) = c z^alpha
///   ConstantNewtonian P(z) = mu
class ViscosityLaw {
 public:
  static ViscosityLaw exponential_m();
  static ViscosityLaw power_law(double c, double alpha);
  static ViscosityLaw newtonian(double mu);

  LawKind kind() const { return kind_; }
  double coeff() const { return c_; }
  double alpha() const { return alpha_; }
  double mu() const { return mu_; }
  std::optional<double> alpha_lower() const { return alpha_lower_; }
  std::optional<double> q_claimed() const { return q_claimed_; }
  double domain_max() const { return domain_max_; }

  /// P(z) in its limit form: continuous at 0 (1/2 for the exponential law).
  double value(double z) const;
  /// P(z) z, evaluated cancellation-free.
  double p_times_z(double z) const;
  /// P(z) z^2 through the law's algebraic identity (equals the exponential
  /// gauge M exactly for ExponentialM).
  double stress_gauge(double z) const;
  /// dP/dz.
  double derivative(double z) const;

 private:
  LawKind kind_ = LawKind::ExponentialM;
  double c_ = 1.0, alpha_ = 1.0, mu_ = 1.0;
  double domain_max_ = 500.0;
  std::optional<double> alpha_lower_;
  std::optional<double> q_claimed_;
};

struct ViscosityEval {
  double value = 0.0;                    // literal convention (0 at z = 0 for ExponentialM)
  std::optional<double> removable_limit; // set at z = 0 when the 0 is a convention, not the limit
};

ViscosityEval eval_viscosity(const ViscosityLaw& law, double z);

/// P(|U|) U, continuous at U = 0 regardless of the P(0) convention.
Tensor3 stress(const ViscosityLaw& law, const Tensor3& u);

/// (P(|U|)U - P(|V|)V) : (U - V).
double pairing(const ViscosityLaw& law, const Tensor3& u, const Tensor3& v);

/// Pointwise checks on a z grid: growth against the exponential gauge,
/// convexity of P(z)z^2, conjugate growth of the stress magnitude, and the
/// small-perturbation stress continuity surrogate.
CertificateReport certify_pointwise_conditions(const ViscosityLaw& law, const std::vector<double>& z_grid,
                                               double tol);

struct MonotonicityCertificate {
  double c_min = 0.0;
  Tensor3 witness_u, witness_v;
  bool pass = false;
  long nonpositive = 0;
  long evaluated = 0;
};

/// Empirical coercivity constant of the monotonicity pairing with exponent q:
/// min over seeded random symmetric pairs of pairing / |U-V|^q. An estimator
/// on the sampled box, not a proof.
MonotonicityCertificate certify_monotonicity_exponent(const ViscosityLaw& law, double q, long n_samples,
                                                      double entry_lo, double entry_hi, std::uint64_t seed);

struct StressSlopeSplit {
  double quadratic_prime = 0.0;  // z/2
  double tail_prime = 0.0;       // P(z) z - z/2, evaluated by the tail series for small z
};

/// Exponential-law split of the stress slope P(z)z into its quadratic part and
/// the convex tail. Unsupported for other laws.
StressSlopeSplit stress_slope_split(const ViscosityLaw& law, double z);

/// Replays, on seeded random symmetric tensor pairs, the inequality chain that
/// turns a monotone lower-bounded viscosity (P' >= 0, P(z) >= c z^alpha) into
/// a coercive pairing bound with exponent 2 + alpha.
CertificateReport certify_growth_chain(const ViscosityLaw& law, long n_samples, double entry_lo,
                                       double entry_hi, std::uint64_t seed);

/// Exponential-law suite: the stress gauge P(z)z^2 against the exponential
/// Young function, the quadratic/tail slope decomposition, and monotonicity
/// of the tail slope ratio G'(z)/z on a dense grid.
CertificateReport certify_exponential_decomposition(const ViscosityLaw& law, double z_lo, double z_hi,
                                                    int points, double tol_scale = 1.0);

/// Slope of the log-log lower envelope of pairing vs |U-V| at small
/// separations, from binned seeded samples.
double fit_pairing_exponent(const ViscosityLaw& law, long n_samples, double entry_lo, double entry_hi,
                            std::uint64_t seed);

/// Random symmetric 3x3 tensor with i.i.d. uniform entries, symmetrized.
Tensor3 random_symmetric(std::mt19937_64& rng, double lo, double hi);

}  // namespace nncert

#endif
