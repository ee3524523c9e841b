#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nncert/young.hpp"

using namespace nncert;

namespace {
const double kE = std::numbers::e;
double n_closed(double y) { return (1.0 + y) * std::log(1.0 + y) - y; }
}  // namespace

TEST_CASE("young evaluation basics") {
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK(eval_young(m, 0.0) == 0.0);
  CHECK(eval_young(m, 1.0) == doctest::Approx(kE - 2.0).epsilon(1e-14));
  const YoungFunction phi = YoungFunction::phi_gamma(3.7);
  CHECK(eval_young(phi, kE - 1.0) == doctest::Approx(kE).epsilon(1e-13));
  CHECK(eval_young(YoungFunction::quadratic_f(), 2.0) == doctest::Approx(1.0));
  CHECK(eval_young(YoungFunction::n_conjugate_of_m(), kE - 1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("series and closed form agree at the switch point") {
  const YoungFunction m = YoungFunction::m_exponential();
  for (double z : {0.249, 0.2499999, 0.2500001, 0.251}) {
    const double closed = std::expm1(z) - z;
    CHECK(eval_young(m, z) == doctest::Approx(closed).epsilon(1e-14));
  }
}

TEST_CASE("young evaluation guards its domain") {
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK_THROWS_AS(eval_young(m, m.domain_max() + 1.0), std::range_error);
}

TEST_CASE("convexity and monotonicity on samples") {
  for (const YoungFunction& f : {YoungFunction::m_exponential(), YoungFunction::phi_gamma(2.0),
                                 YoungFunction::n_conjugate_of_m(), YoungFunction::quadratic_f()}) {
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double a = 0.1 * i, b = 0.1 * i + 3.0;
      const double mid = eval_young(f, 0.5 * (a + b));
      const double chord = 0.5 * (eval_young(f, a) + eval_young(f, b));
      CHECK(mid <= chord + 1e-12 * std::max(1.0, eval_young(f, b)));
      CHECK(eval_young(f, a) >= prev);
      prev = eval_young(f, a);
    }
  }
}

TEST_CASE("numeric conjugate of the exponential gauge matches the closed form") {
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK(conjugate_numeric(m, 0.0) == 0.0);
  CHECK(conjugate_numeric(m, kE - 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  for (int i = 0; i < 20; ++i) {
    const double y = 1e-3 * std::pow(1e6, i / 19.0);
    CHECK(conjugate_numeric(m, y) == doctest::Approx(n_closed(y)).epsilon(1e-8));
  }
}

TEST_CASE("conjugate of the quadratic gauge is y^2") {
  const YoungFunction f = YoungFunction::quadratic_f();
  for (double y : {0.5, 1.0, 2.0}) CHECK(conjugate_numeric(f, y) == doctest::Approx(y * y).epsilon(1e-9));
}

TEST_CASE("biconjugation returns the quadratic gauge") {
  const YoungFunction f = YoungFunction::quadratic_f();
  // Tabulation range keeps the inner maximizer z = 2y inside the default
  // search bracket; the interpolation error dominates the tolerance.
  const YoungFunction table = tabulate_conjugate(f, 1e-3, 20.0, 4000);
  for (double z : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(conjugate_numeric(table, z, {.z_hi = 20.0}) == doctest::Approx(z * z / 4.0).epsilon(1e-4));
  }
}

TEST_CASE("young inequality holds on sampled pairs") {
  const YoungFunction m = YoungFunction::m_exponential();
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      const double z = 0.01 * std::pow(2000.0, i / 14.0);
      const double y = 0.01 * std::pow(2000.0, j / 14.0);
      CHECK(z * y <= eval_young(m, z) + conjugate_numeric(m, y) + 1e-10);
    }
}

TEST_CASE("conjugate reports an unbracketed supremum") {
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK_THROWS(conjugate_numeric(m, 10.0, {.z_hi = 1.0}));
}

TEST_CASE("modular of constant fields") {
  const Grid g = Grid::unit(1, 16);
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK(modular(ScalarField::zeros(g), m) == 0.0);
  CHECK(modular(ScalarField::constant(g, 1.0), m) == doctest::Approx(kE - 2.0).epsilon(1e-14));
  CHECK(modular(ScalarField::constant(g, kE - 1.0), YoungFunction::phi_gamma(2.0)) ==
        doctest::Approx(kE).epsilon(1e-13));
}

TEST_CASE("luxemburg norm of a constant matches the closed form") {
  const Grid g = Grid::unit(1, 32);
  const YoungFunction m = YoungFunction::m_exponential();
  CHECK(luxemburg_norm(ScalarField::zeros(g), m) == 0.0);
  // z1 solves e^z - z - 1 = 1; bisection oracle independent of the module.
  double lo = 1.0, hi = 2.0;
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    (std::expm1(mid) - mid > 1.0 ? hi : lo) = mid;
  }
  const double z1 = 0.5 * (lo + hi);
  for (double c : {0.3, 1.0, 7.0})
    CHECK(luxemburg_norm(ScalarField::constant(g, c), m) == doctest::Approx(c / z1).epsilon(1e-8));
}

TEST_CASE("luxemburg norm homogeneity and triangle inequality") {
  const Grid g = Grid::unit(1, 64);
  const YoungFunction m = YoungFunction::m_exponential();
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    ScalarField a = random_smooth_scalar(g, seed);
    ScalarField b = random_smooth_scalar(g, seed + 100);
    ScalarField a2 = a, sum = a;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      a.v[c] = std::abs(a.v[c]);
      b.v[c] = std::abs(b.v[c]);
      a2.v[c] = 2.0 * a.v[c];
      sum.v[c] = a.v[c] + b.v[c];
    }
    const double na = luxemburg_norm(a, m), nb = luxemburg_norm(b, m);
    CHECK(luxemburg_norm(a2, m) == doctest::Approx(2.0 * na).epsilon(1e-8));
    CHECK(luxemburg_norm(sum, m) <= (na + nb) * (1.0 + 1e-8));
  }
}

TEST_CASE("delta2 probing separates polynomial from exponential growth") {
  const Delta2Report quad = check_delta2(YoungFunction::quadratic_f(), 1e-3, 50.0, 400);
  CHECK(quad.satisfied);
  CHECK(quad.sup_ratio == doctest::Approx(4.0).epsilon(1e-6));
  const Delta2Report mexp = check_delta2(YoungFunction::m_exponential(), 1e-3, 30.0, 400);
  CHECK_FALSE(mexp.satisfied);
  CHECK(mexp.sup_ratio > 1e6);
  CHECK(check_delta2(YoungFunction::phi_gamma(2.0), 1e-3, 100.0, 400).satisfied);
}

TEST_CASE("tabulated young functions interpolate monotonically") {
  const YoungFunction t = YoungFunction::tabulated({1.0, 2.0, 4.0}, {0.5, 2.0, 9.0});
  CHECK(eval_young(t, 0.0) == 0.0);
  CHECK(eval_young(t, 2.0) == doctest::Approx(2.0));
  CHECK(eval_young(t, 3.0) == doctest::Approx(5.5));
  CHECK(eval_young(t, 0.5) == doctest::Approx(0.25));
}
