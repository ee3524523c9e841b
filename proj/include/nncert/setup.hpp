#ifndef NNCERT_SETUP_HPP
#define NNCERT_SETUP_HPP

#include <optional>

#include "nncert/config.hpp"
#include "nncert/rel_energy.hpp"
#include "nncert/solver.hpp"
#include "nncert/young.hpp"

namespace nncert {

ViscosityLaw law_from_config(const Config& cfg);
YoungFunction young_from_config(const Config& cfg);
Grid grid_from_config(const Config& cfg);

/// Fully assembled simulation: the SimConfig plus, when the initial data come
/// from a manufactured pair, that pair (it doubles as the strong reference).
struct SimSetup {
  SimConfig sim;
  std::optional<ManufacturedSolution> manufactured;
  double perturb = 0.0;  // initial-data perturbation amplitude, 0 = identical data
};

SimSetup sim_from_config(const Config& cfg);

}  // namespace nncert

#endif
