#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dissectree/crt_reference.hpp"
#include "oracles.hpp"

using namespace dissectree;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("density series values") {
  // Reference values from 30-digit evaluation of the same series.
  CHECK(diameter_density(3.0) == Approx(0.000575097980390737).epsilon(1e-10));
  CHECK(diameter_density(5.0) == Approx(0.148962883405914).epsilon(1e-10));
  CHECK(diameter_density(10.0) == Approx(-0.0230172454949643).epsilon(1e-9));
  CHECK(std::abs(diameter_density(0.05)) < 1e-300);
  CHECK(std::abs(diameter_density(1.0)) < 1e-50);
  CHECK_THROWS_AS(diameter_density(0.0), std::domain_error);
  CHECK(diameter_density_cutoff() > 20.0);
}

TEST_CASE("density moments") {
  CHECK(std::abs(diam_moment(1.0) - 2.0 * std::sqrt(2.0 * kPi) / 3.0) < 1e-9);
  // Zeroth and second moments of the series, from 30-digit quadrature.
  CHECK(diam_moment(0.0) == Approx(0.353553390593274).epsilon(1e-9));
  CHECK(diam_moment(2.0) == Approx(6.43913710451896).epsilon(1e-9));
  CHECK_THROWS_AS(diam_moment(-1.0), std::domain_error);
  // Against an independent Simpson rule.
  const double s = oracle::simpson([](double x) { return x <= 0 ? 0.0 : x * diameter_density(x); }, 0.0, 40.0, 8000);
  CHECK(diam_moment(1.0) == Approx(s).epsilon(1e-9));
}

TEST_CASE("radius moments") {
  CHECK(std::abs(radius_moment(1.0) - std::sqrt(kPi / 2.0)) < 1e-12);
  // 2^{-1} * 2 * 1 * Gamma(1) * zeta(2) = zeta(2).
  CHECK(radius_moment(2.0) == Approx(kPi * kPi / 6.0).epsilon(1e-12));
  CHECK(std::abs(radius_moment(1.0 + 1e-8) - radius_moment(1.0)) < 1e-6);
  CHECK(std::abs(radius_moment(1.0 - 1e-7) - radius_moment(1.0)) < 1e-6);
  CHECK(std::abs(radius_moment(1.0 + 2e-6) - radius_moment(1.0 - 2e-6)) < 1e-5);
  CHECK_THROWS_AS(radius_moment(0.0), std::domain_error);
}

TEST_CASE("height of a uniform point") {
  CHECK(height_u_moment(1.0) == Approx(0.5 * std::sqrt(kPi / 2.0)).epsilon(1e-14));
  CHECK(std::abs(height_u_moment(2.0) - 0.5) < 1e-12);
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    // x = t^2 keeps the integrand smooth at 0 for fractional p.
    const double q = oracle::simpson(
        [p](double t) { return std::pow(t, 2.0 * p) * 8.0 * t * t * t * std::exp(-2.0 * t * t * t * t); }, 0.0, 3.5,
        20000);
    CHECK(std::abs(height_u_moment(p) - q) < 1e-10);
  }
  CHECK_THROWS_AS(height_u_moment(-2.0), std::domain_error);
}

TEST_CASE("radius and height moments are positive, radius increasing on [1, 4]") {
  double prev = 0.0;
  for (double p = 1.0; p <= 4.0; p += 0.5) {
    const double r = radius_moment(p);
    CHECK_MESSAGE(r > prev, "p = " << p);
    CHECK(height_u_moment(p) > 0.0);
    prev = r;
  }
}

// The series changes sign near x = 9, so high moments pick up its negative lobe.
TEST_CASE("diameter moments are positive and increasing on [1, 4]") {
  double prev = 0.0;
  for (double p = 1.0; p <= 4.0; p += 0.5) {
    const double d = diam_moment(p);
    CHECK_MESSAGE(d > prev, "p = " << p << ", moment " << d);
    prev = d;
  }
}

TEST_CASE("predictions") {
  const double sqrt2 = std::numbers::sqrt2;
  CHECK(*predict(uniform_dissection(), Statistic::diameter) ==
        Approx((3.0 + sqrt2) * std::pow(2.0, 2.25) * std::sqrt(kPi) / 21.0).epsilon(1e-9));
  CHECK(*predict(uniform_dissection(), Statistic::diameter) == Approx(1.7723).epsilon(1e-4));
  CHECK(*predict(p_angulation(3), Statistic::radius) == Approx(2.0 * sqrt2 / 3.0 * std::sqrt(kPi / 2.0)).epsilon(1e-12));
  CHECK(*predict(p_angulation(3), Statistic::loop_diameter) == Approx(2.0 * 2.0 * std::sqrt(2.0 * kPi) / 3.0).epsilon(1e-9));
  CHECK_FALSE(predict(p_angulation(3), Statistic::distance_slack).has_value());
  CHECK(parse_statistic("loopbar_diameter") == Statistic::loopbar_diameter);
  CHECK(statistic_name(Statistic::height_u) == "height_u");
  CHECK_THROWS_AS(parse_statistic("girth"), std::invalid_argument);
}

// A probability density integrates to 1 and vanishes at both ends. The
// series as written integrates to 1/(2 sqrt 2) and is still -0.023 at x = 10.
TEST_CASE("density normalization and decay") {
  CHECK_MESSAGE(std::abs(diam_moment(0.0) - 1.0) < 1e-8, "integral " << diam_moment(0.0));
  CHECK(std::abs(diameter_density(0.05)) < 1e-6);
  CHECK_MESSAGE(std::abs(diameter_density(10.0)) < 1e-6, "f(10) = " << diameter_density(10.0));
}
