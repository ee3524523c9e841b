#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nncert/setup.hpp"

using namespace nncert;

TEST_CASE("config parses sections, comments, and values") {
  const Config cfg = Config::parse_string(
      "# leading comment\n"
      "[grid]\n"
      "n = 32   ; trailing comment\n"
      "dim=2\n"
      "\n"
      "[law]\n"
      "kind = exponential_m\n");
  CHECK(cfg.get_int("grid", "n") == 32);
  CHECK(cfg.get_int("grid", "dim") == 2);
  CHECK(cfg.get("law", "kind") == "exponential_m");
  CHECK(cfg.get_real_or("time", "cfl", 0.4) == 0.4);
  CHECK_FALSE(cfg.has("time", "end"));
  cfg.reject_unknown();
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(Config::parse_string("key = 1\n"), ConfigError);          // key outside section
  CHECK_THROWS_AS(Config::parse_string("[a]\nnovalue\n"), ConfigError);     // missing '='
  CHECK_THROWS_AS(Config::parse_string("[a\nk = 1\n"), ConfigError);        // malformed header
  CHECK_THROWS_AS(Config::parse_string("[a]\nk=1\nk=2\n"), ConfigError);    // duplicate key
  const Config bad = Config::parse_string("[a]\nk = abc\n");
  CHECK_THROWS_AS(bad.get_real("a", "k"), ConfigError);
  CHECK_THROWS_AS(bad.get_int("a", "k"), ConfigError);
  const Config trailing = Config::parse_string("[a]\nk = 1.5x\n");
  CHECK_THROWS_AS(trailing.get_real("a", "k"), ConfigError);
}

TEST_CASE("unknown keys are rejected after schema consumption") {
  const Config cfg = Config::parse_string("[grid]\nn = 16\nmystery = 1\n");
  CHECK(cfg.get_int("grid", "n") == 16);
  CHECK_THROWS_AS(cfg.reject_unknown(), ConfigError);
}

TEST_CASE("law and grid construction from config") {
  const Config cfg = Config::parse_string("[law]\nkind = power_law\nc = 2.0\nalpha = 1.5\n[grid]\nn = 16\nbc = no_slip\n");
  const ViscosityLaw law = law_from_config(cfg);
  CHECK(law.kind() == LawKind::PowerLaw);
  CHECK(law.coeff() == 2.0);
  CHECK(law.alpha() == 1.5);
  const Grid g = grid_from_config(cfg);
  CHECK(g.n[0] == 16);
  CHECK(g.bc == BoundaryKind::NoSlip);
  cfg.reject_unknown();

  CHECK_THROWS_AS(law_from_config(Config::parse_string("[law]\nkind = mystery\n")), ConfigError);
  CHECK_THROWS_AS(grid_from_config(Config::parse_string("[grid]\nn = 16\nbc = slippery\n")), ConfigError);
}

TEST_CASE("simulation setup from a full config") {
  const Config cfg = Config::parse_string(
      "[grid]\nn = 16\n"
      "[law]\nkind = exponential_m\n"
      "[time]\nend = 0.01\ncfl = 0.3\n"
      "[initial]\npreset = traveling_wave\namplitude = 0.2\nspeed = 1.0\n"
      "[forcing]\nkind = mms\n");
  const SimSetup setup = sim_from_config(cfg);
  cfg.reject_unknown();
  CHECK(setup.manufactured.has_value());
  CHECK(setup.sim.cfl == 0.3);
  CHECK(bool(setup.sim.forcing));
  const FlowState s0 = initial_state(setup.sim);
  CHECK(s0.rho.v[0] == doctest::Approx(1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * 0.5 / 16.0)));

  CHECK_THROWS_AS(sim_from_config(Config::parse_string(
                      "[grid]\nn = 16\n[law]\nkind = exponential_m\n[time]\nend = 0.01\n"
                      "[initial]\npreset = rest\n[forcing]\nkind = mms\n")),
                  ConfigError);
}
