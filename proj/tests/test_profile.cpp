#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "subfinsler/profile.hpp"

using namespace subfinsler;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("profile derivatives match hand values") {
  const auto flat = evaluate_profile(IndicatrixProfile::flat(), 1.3);
  CHECK(flat.r == 1.0);
  CHECK(flat.r1 == 0.0);
  CHECK(flat.r2 == 0.0);
  CHECK(flat.r3 == 0.0);

  const auto randers = evaluate_profile(IndicatrixProfile::randers(0.5), 0.0);
  CHECK(randers.r == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(randers.r1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(randers.r2 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(randers.r3 == doctest::Approx(0.0).epsilon(1e-15));

  // r = 1/(3 + cos t) at t = pi: r = 1/2, r' = 0, r''' = 0 and
  // r'' = (-cos t (3 + cos t) + 2 sin^2 t)/(3 + cos t)^3 = 2/8 = ... with
  // sign: r'' = -1/4 (quotient rule, oracle-checked by finite differences)
  const auto lim = evaluate_profile(IndicatrixProfile::limacon(), kPi);
  CHECK(lim.r == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lim.r1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lim.r2 == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(lim.r3 == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("finite differences confirm the analytic derivatives") {
  const IndicatrixProfile profiles[] = {
      IndicatrixProfile::flat(), IndicatrixProfile::randers(0.5),
      IndicatrixProfile::limacon(),
      IndicatrixProfile::fourier({1.0, 0.05, 0.02}, {0.03, 0.01})};
  const double h = 1e-5;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (const auto& profile : profiles) {
    for (int i = 0; i < 50; ++i) {
      const double t = angle(rng);
      const auto mid = evaluate_profile(profile, t);
      const auto hi = evaluate_profile(profile, t + h);
      const auto lo = evaluate_profile(profile, t - h);
      const double fd1 = (hi.r - lo.r) / (2.0 * h);
      const double fd2 = (hi.r - 2.0 * mid.r + lo.r) / (h * h);
      CHECK(fd1 == doctest::Approx(mid.r1).epsilon(1e-6).scale(1.0));
      CHECK(fd2 == doctest::Approx(mid.r2).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("higher-order derivative ladder is self-consistent") {
  // order k+1 must be the derivative of order k, by central differences
  const IndicatrixProfile profile = IndicatrixProfile::limacon();
  const double h = 1e-4;
  for (double t : {0.3, 1.7, 2.9, 4.4, 6.0}) {
    double mid[6], hi[6], lo[6];
    profile_derivatives(profile, t, mid);
    profile_derivatives(profile, t + h, hi);
    profile_derivatives(profile, t - h, lo);
    for (int k = 0; k + 1 < 6; ++k) {
      const double fd = (hi[k] - lo[k]) / (2.0 * h);
      CHECK(fd == doctest::Approx(mid[k + 1]).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("strong convexity report") {
  const auto flat = check_strong_convexity(IndicatrixProfile::flat(), 16);
  CHECK(flat.ok);
  CHECK(flat.min_value == doctest::Approx(1.0).epsilon(1e-15));

  // randers: r + r'' = 1, so the product reduces to r with minimum 1 - B
  for (double B : {0.1, 0.25, 0.5, 0.9, 0.99}) {
    const auto report =
        check_strong_convexity(IndicatrixProfile::randers(B), 1024);
    CHECK(report.ok);
    CHECK(report.min_value == doctest::Approx(1.0 - B).epsilon(1e-14));
    CHECK(report.argmin == doctest::Approx(kPi).epsilon(1e-12));
  }

  CHECK(check_strong_convexity(IndicatrixProfile::limacon(), 1024).ok);

  // r = 1 + cos 2t vanishes at t = pi/2, violating convexity
  const auto bad = check_strong_convexity(
      IndicatrixProfile::fourier({1.0, 0.0, 1.0}, {}), 1024);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("fiber average of the fundamental invariant vanishes") {
  CHECK(std::abs(rund_average(IndicatrixProfile::flat())) < 1e-12);
  for (double B : {0.25, 0.5, 0.9})
    CHECK(std::abs(rund_average(IndicatrixProfile::randers(B))) < 1e-10);
  CHECK(std::abs(rund_average(IndicatrixProfile::limacon())) < 1e-10);
  CHECK(std::abs(rund_average(IndicatrixProfile::fourier(
            {1.0, 0.05, 0.02}, {0.03, 0.01}))) < 1e-9);
}
