#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cdst/analysis.hpp"
#include "cdst/errors.hpp"

using namespace cdst;
using namespace cdst::analysis;

namespace {

std::string domain_error(double a, double b, double c, double mu) {
  try {
    check_domain(a, b, c, mu);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("factor table") {
  CHECK(round_up(approx_factor(1.0), 5) == doctest::Approx(1.70711).epsilon(1e-12));
  CHECK(round_up(approx_factor(std::log(4.0)), 5) == doctest::Approx(2.04782).epsilon(1e-12));
  CHECK(round_up(approx_factor(1.5), 5) == doctest::Approx(2.15139).epsilon(1e-12));
  CHECK(round_up(approx_factor(2.0), 5) == doctest::Approx(2.61804).epsilon(1e-12));
  CHECK(round_up(baseline_factor(std::log(4.0)), 5) == doctest::Approx(2.38630).epsilon(1e-12));
  CHECK(round_up(baseline_factor(2.0), 5) == 3.0);
  CHECK(approx_factor(1.0) == doctest::Approx(1.0 + 1.0 / std::numbers::sqrt2).epsilon(1e-15));
  CHECK_THROWS_AS(approx_factor(0.99), ValidationError);
}

TEST_CASE("factor grows with beta and stays above it") {
  double prev = 0.0;
  for (double beta = 1.0; beta <= 10.0; beta += 0.01) {
    const double f = approx_factor(beta);
    CHECK(f > prev);
    CHECK(f > beta);
    CHECK(f < baseline_factor(beta));
    prev = f;
  }
}

TEST_CASE("f and g at the worked points") {
  CHECK(f_func(1.4, 0.5, 0.5, 1.0) == doctest::Approx(0.0));
  CHECK(f_closed(1.4, 0.5, 0.5, 1.0) == 0.0);
  CHECK(f_func(1.4, 0.5, 0.3, 1.0) == doctest::Approx(-0.2857142857142857).epsilon(1e-12));
  CHECK(f_closed(1.4, 0.5, 0.3, 1.0) == doctest::Approx(-2.0 / 7.0).epsilon(1e-15));
  const double g = g_func(1.4, 0.5, 0.3, 1.0);
  CHECK(g <= f_func(1.4, 0.5, 0.3, 1.0));
}

TEST_CASE("domain errors name the constraint") {
  CHECK(domain_error(1.4, 0.5, 0.3, 1.0).empty());
  CHECK(domain_error(0.9, 0.5, 0.3, 1.0) == "a in (mu, 2mu) violated");
  CHECK(domain_error(1.4, 1.0, 0.3, 1.0) == "b in (0, mu) violated");
  CHECK(domain_error(1.4, 0.5, 0.95, 1.0) == "c <= a - b violated");
  CHECK(domain_error(1.8, 0.5, 0.3, 1.0) == "a - b < mu violated");
  CHECK(domain_error(1.4, 0.5, 0.3, -1.0) == "mu > 0 violated");
  CHECK_THROWS_AS(f_func(2.5, 0.5, 0.3, 1.0), ValidationError);
  CHECK_THROWS_AS(h_func(0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(h_func(1.0, -1.0, 1.0), ValidationError);
}

TEST_CASE("f and g are nonpositive on sampled domains") {
  std::mt19937_64 rng(70);
  for (double mu : {0.1, 1.0, 10.0}) {
    std::uniform_real_distribution<double> ua(mu, 2 * mu), ub(0.0, mu), u(0.0, 1.0);
    int taken = 0;
    while (taken < 5000) {
      const double a = ua(rng), b = ub(rng);
      if (!(a > mu && b > 0.0 && a - b < mu)) continue;
      const double c = std::min(mu, a - b) * (1.0 - u(rng));
      if (!(c > 0.0)) continue;
      const double f = f_func(a, b, c, mu), g = g_func(a, b, c, mu);
      REQUIRE(f <= 1e-12 * mu);
      REQUIRE(g <= f + 1e-12 * mu);
      REQUIRE(std::abs(f - f_closed(a, b, c, mu)) <= 1e-9 * std::max(1e-3, std::abs(f)));
      ++taken;
    }
  }
}

TEST_CASE("h") {
  for (double beta : {1.0, 1.5, 3.0}) CHECK(h_func(1.0, 0.0, beta) == beta);
  CHECK(h_func(1.0, 1.0, 1.0) == doctest::Approx(approx_factor(1.0)).epsilon(1e-15));
  CHECK(h_maximizer_ratio(1.0) == doctest::Approx(1.0));
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double beta = 1.0 + 4.0 * u(rng);
    const double x = std::exp(8.0 * (u(rng) - 0.5)), y = std::exp(8.0 * (u(rng) - 0.5));
    REQUIRE(h_func(x, y, beta) <= approx_factor(beta) + 1e-12);
  }
  for (double beta : {1.0, std::log(4.0), 2.0, 7.0}) {
    const double y = 1.0, x = h_maximizer_ratio(beta) * y;
    CHECK(std::abs(h_func(x, y, beta) - approx_factor(beta)) < 1e-9);
  }
}

TEST_CASE("gap formulas") {
  const auto k4 = gap_formulas(4, 0.01);
  CHECK(k4.lower_bound == doctest::Approx(7.65685).epsilon(1e-6));
  CHECK(k4.optimum == doctest::Approx(11.61685).epsilon(1e-6));
  const auto k1 = gap_formulas(1, 0.5);
  CHECK(k1.lower_bound == 2.0 + std::numbers::sqrt2);
  CHECK(k1.optimum == 3.0 + std::numbers::sqrt2 - 0.5);
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double r = gap_formulas(k, 0.0).ratio();
    CHECK(r > prev);
    CHECK(r < 1.0 + 1.0 / std::numbers::sqrt2);
    prev = r;
  }
  CHECK(prev > 1.706);
  CHECK_THROWS_AS(gap_formulas(0, 0.1), ValidationError);
  CHECK_THROWS_AS(gap_formulas(4, 0.25), ValidationError);
}
