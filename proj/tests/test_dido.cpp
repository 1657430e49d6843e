#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "subfinsler/dido.hpp"
#include "subfinsler/errors.hpp"
#include "subfinsler/geodesic.hpp"
#include "subfinsler/profile.hpp"

using namespace subfinsler;

namespace {

constexpr double kPi = std::numbers::pi;

GeodesicTrace make_trace(const IndicatrixProfile& profile, double lambda0,
                         double theta0, double length) {
  GeodesicState initial;
  initial.theta = theta0;
  initial.lambda = lambda0;
  IntegratorSettings settings;
  settings.max_arclength = length;
  return integrate(profile, initial, settings);
}

DiscreteHorizontalPath ellipse(double a, double b, int n) {
  DiscreteHorizontalPath path;
  path.closed = true;
  path.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    path.nodes[i] = {a * std::cos(t), b * std::sin(t)};
  }
  return path;
}

}  // namespace

TEST_CASE("polygon length in reference cases") {
  DiscreteHorizontalPath square;
  square.nodes = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(finsler_length(IndicatrixProfile::flat(), square) ==
        doctest::Approx(4.0).epsilon(1e-14));

  const auto randers = IndicatrixProfile::randers(0.5);
  DiscreteHorizontalPath forward;
  forward.closed = false;
  forward.nodes = {{0, 0}, {1, 0}};
  CHECK(finsler_length(randers, forward) == doctest::Approx(1.5));
  DiscreteHorizontalPath backward;
  backward.closed = false;
  backward.nodes = {{0, 0}, {-1, 0}};
  CHECK(finsler_length(randers, backward) == doctest::Approx(0.5));

  DiscreteHorizontalPath degenerate;
  degenerate.closed = false;
  degenerate.nodes = {{0, 0}, {0, 0}, {1, 0}};
  CHECK_THROWS_AS(finsler_length(randers, degenerate), DegenerateSegment);
}

TEST_CASE("length is invariant under re-noding") {
  const auto profile = IndicatrixProfile::limacon();
  DiscreteHorizontalPath path = ellipse(2.0, 1.0, 64);
  const double before = finsler_length(profile, path);
  // split every segment at its midpoint
  DiscreteHorizontalPath split;
  split.closed = true;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    const auto& p = path.nodes[i];
    const auto& q = path.nodes[(i + 1) % path.nodes.size()];
    split.nodes.push_back(p);
    split.nodes.push_back({0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])});
  }
  CHECK(finsler_length(profile, split) ==
        doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("lift height equals minus the signed area") {
  const auto loop = ellipse(2.0, 1.0, 256);
  CHECK(loop.signed_area() > 0.0);
  CHECK(loop.z_lift() == doctest::Approx(-loop.signed_area()).epsilon(1e-14));
}

TEST_CASE("polygon length converges to the trace arc length") {
  const auto profile = IndicatrixProfile::randers(0.5);
  const auto trace = make_trace(profile, 0.3, 0.0, 30.0);
  const auto closure = projection_closure(trace);
  REQUIRE(closure.closes);

  double prev_err = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    const int nodes = 64 << pass;
    const auto loop = closed_projection_polygon(trace, nodes);
    const double err =
        std::abs(finsler_length(profile, loop) - closure.period_arclength);
    if (pass > 0) CHECK(err < 0.3 * prev_err);  // observed order >= 2
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("geodesic projections are stationary for the length") {
  const auto flat = IndicatrixProfile::flat();
  const auto flat_report = dido_stationarity(
      flat, make_trace(flat, 1.0, 0.0, 8.0), 20, 1e-3, 42);
  CHECK(flat_report.max_first_order_defect < 1e-3);

  const auto randers = IndicatrixProfile::randers(0.5);
  const auto randers_report = dido_stationarity(
      randers, make_trace(randers, 0.3, 0.0, 30.0), 20, 1e-3, 42);
  CHECK(randers_report.max_first_order_defect < 1e-3);
}

TEST_CASE("non-geodesic control loop is far from stationary") {
  const auto report = dido_stationarity(IndicatrixProfile::flat(),
                                        ellipse(2.0, 1.0, 1024), 20, 1e-3, 7);
  CHECK(report.max_first_order_defect > 1e-2);
}

TEST_CASE("stationarity requires a closing trace") {
  const auto flat = IndicatrixProfile::flat();
  const auto short_trace = make_trace(flat, 1.0, 0.0, 3.0);
  CHECK_THROWS_AS(dido_stationarity(flat, short_trace, 5, 1e-3, 1),
                  DomainError);
}

TEST_CASE("direct search recovers the flat circle") {
  const auto result =
      dido_direct_search(IndicatrixProfile::flat(), kPi, 128, 2000);
  CHECK(std::abs(result.length - 2.0 * kPi) < 1e-3);
  const auto circle = ellipse(1.0, 1.0, 256);
  CHECK(centered_hausdorff(result.path, circle) < 5e-3);
}

TEST_CASE("direct search matches the geodesic projection length") {
  const auto randers = IndicatrixProfile::randers(0.5);
  const auto trace = make_trace(randers, 0.3, 0.0, 30.0);
  const auto loop = closed_projection_polygon(trace, 128);
  const double area = std::abs(loop.signed_area());
  const double geodesic_length = finsler_length(randers, loop);
  const auto result = dido_direct_search(randers, area, 128, 4000);
  CHECK(std::abs(result.length - geodesic_length) / geodesic_length < 1e-2);
}

TEST_CASE("direct search reproduces the limacon projection shape") {
  const auto profile = IndicatrixProfile::limacon();
  const auto trace = make_trace(profile, 1.0, 0.0, 30.0);
  auto loop = closed_projection_polygon(trace, 256);
  const double area = loop.signed_area();
  REQUIRE(area < 0.0);  // projection runs clockwise
  // reflect to positive orientation; the profile is even, so the length
  // is unchanged and the optimizer's counterclockwise result must match
  for (auto& p : loop.nodes) p[1] = -p[1];

  const auto result = dido_direct_search(profile, -area, 128, 20000);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : loop.nodes) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double diameter = std::hypot(xmax - xmin, ymax - ymin);
  CHECK(centered_hausdorff(result.path, loop) < 1e-2 * diameter);
}
