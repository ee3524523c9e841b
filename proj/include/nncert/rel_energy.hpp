#ifndef NNCERT_REL_ENERGY_HPP
#define NNCERT_REL_ENERGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nncert/report.hpp"
#include "nncert/solver.hpp"

namespace nncert {

/// Smooth comparison pair (r, U) discretized at one time, with its time
/// derivatives and density range.
struct ReferencePair {
  ScalarField r;
  VectorField U;
  ScalarField dt_r;
  VectorField dt_U;
  double r_low = 0.0;
  double r_high = 0.0;
};

/// Closed-form comparison pair; discretizes on demand with fourth-order time
/// differences for the derivative fields.
struct ReferenceSolution {
  ScalarFn r;
  VectorFn U;
  ReferencePair at(const Grid& grid, double t, double h_t = 1e-5) const;
  static ReferenceSolution constant(double r0);
  static ReferenceSolution from_manufactured(const ManufacturedSolution& ms);
};

/// Convexity gap of rho ln rho at r: rho ln(rho/r) - (rho - r); equals r at
/// rho = 0 by the continuous extension.
double h_gap(double rho, double r);

double relative_energy(const FlowState& state, const ReferencePair& ref);

/// All five integrals of the relative-energy remainder, full velocity
/// gradient in the convective term.
double remainder_general(const FlowState& state, const ReferencePair& ref, const VectorFn& f,
                         const ViscosityLaw& law);

/// Two-term remainder valid against a strong solution with density bounded
/// away from zero.
double remainder_strong(const FlowState& state, const ReferencePair& ref, const ViscosityLaw& law);

struct EssResSplit {
  ScalarField essential;
  ScalarField residual;
  std::vector<std::uint8_t> essential_mask;
};

/// Split of a density-dependent field by whether rho lies in the window
/// (r_low/2, 2 r_high).
EssResSplit ess_res_split(const ScalarField& field, const ScalarField& rho, double r_low, double r_high);

struct CoercivityConstants {
  double c_ess = 0.0;      // h_gap >= c_ess (rho-r)^2 in the window
  double c_res_one = 0.0;  // h_gap >= c_res_one (1+rho) outside
  double c_res_abs = 0.0;  // h_gap >= c_res_abs |rho-r| outside
};

/// Scalar-minimization oracle for the coercivity constants over the window
/// geometry, with densities capped at rho_cap.
CoercivityConstants coercivity_constants(double r_low, double r_high, double rho_cap);

CertificateReport coercivity_bound(const FlowState& state, const ReferencePair& ref);

struct DissipationGap {
  double value = 0.0;  // int pairing(Du, DU)
  double qnorm = 0.0;  // int |Du - DU|^q for the law's claimed exponent
  double ratio = 0.0;  // in-situ coercivity constant value/qnorm
};

DissipationGap dissipation_gap(const VectorField& u, const VectorField& U, const ViscosityLaw& law);

struct RelEnergyRow {
  double tau = 0.0;
  double energy = 0.0;
  double gap_cum = 0.0;
  double remainder_cum = 0.0;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Discrete defect of the relative-energy inequality along a trajectory;
/// passes where residual <= bound (negative residuals comply).
std::vector<RelEnergyRow> relative_energy_residual(const Trajectory& traj, const ReferenceSolution& ref,
                                                   const VectorFn& f, const ViscosityLaw& law, double bound);

void write_certificate_csv(const std::filesystem::path& path, const std::vector<RelEnergyRow>& rows,
                           const std::string& summary);

struct ProofStepSeries {
  std::vector<double> t;
  std::vector<double> kinetic_test;      // 1/2 |U|^2 tested against the mass equation
  std::vector<double> momentum_test;     // U tested against the momentum equation
  std::vector<double> log_density_test;  // ln r tested against the mass equation
};

ProofStepSeries proof_step_identities(const Trajectory& traj, const ReferenceSolution& ref, const VectorFn& f,
                                      const ViscosityLaw& law);

struct WsuConstants {
  double grad_u_sup = 0.0;  // max cell Frobenius norm of the reference velocity gradient
  double korn_c = 0.0;
  std::string korn_provenance = "estimated";
};

/// Numerical surrogate for the Korn constant: worst ratio of int |v|^q to
/// int |Dv|^q over random admissible fields, with a safety factor.
double estimate_korn_constant(const Grid& grid, double q, int trials, std::uint64_t seed);

/// Term-by-term bounds that feed the Gronwall argument: convective term,
/// essential and residual couplings, and the dissipation absorption.
CertificateReport weak_strong_bounds(const FlowState& state, const ReferencePair& ref, const ViscosityLaw& law,
                                     const WsuConstants& constants);

enum class GronwallMode { IdenticalData, Perturbed };

struct GronwallResult {
  double lambda = 0.0;
  double max_energy = 0.0;
  bool pass = false;
};

GronwallResult gronwall_certify(const std::vector<double>& t, const std::vector<double>& energy,
                                GronwallMode mode, double e0, double tol);

}  // namespace nncert

#endif
