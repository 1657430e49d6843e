#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <numbers>
#include <random>
#include <vector>

#include "subfinsler/dido.hpp"
#include "subfinsler/geodesic.hpp"
#include "subfinsler/invariants.hpp"
#include "subfinsler/profile.hpp"

using namespace subfinsler;

TEST_CASE("batch residual kernel is identical in serial and parallel") {
  const auto profile = IndicatrixProfile::randers(0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<std::array<double, 4>> points(200);
  for (auto& p : points) p = {unit(rng), unit(rng), unit(rng), angle(rng)};

  const auto coframe = [&](const std::array<double, 4>& p) {
    return heisenberg_coframe(profile, p);
  };
  const auto table = [&](const std::array<double, 4>& p) {
    return heisenberg_table(profile, p[3]);
  };
  const auto serial =
      structure_residual_batch(coframe, table, points, 1e-5, false);
  const auto parallel =
      structure_residual_batch(coframe, table, points, 1e-5, true);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    CHECK(serial[i] == parallel[i]);
}

TEST_CASE("stationarity trials are deterministic across thread counts") {
  const auto profile = IndicatrixProfile::flat();
  GeodesicState initial;
  initial.lambda = 1.0;
  IntegratorSettings settings;
  settings.max_arclength = 8.0;
  const auto trace = integrate(profile, initial, settings);
  const auto a = dido_stationarity(profile, trace, 20, 1e-3, 9, true);
  const auto b = dido_stationarity(profile, trace, 20, 1e-3, 9, false);
  CHECK(a.max_first_order_defect == b.max_first_order_defect);
}
