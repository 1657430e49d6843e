#include "subfinsler/dido.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "subfinsler/errors.hpp"

namespace subfinsler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double segment_length(const IndicatrixProfile& profile,
                      const std::array<double, 2>& p,
                      const std::array<double, 2>& q) {
  const double dx = q[0] - p[0], dy = q[1] - p[1];
  const double len = std::hypot(dx, dy);
  if (len == 0.0)
    throw DegenerateSegment("repeated node in discrete horizontal path");
  return len * evaluate_profile(profile, std::atan2(dy, dx)).r;
}

std::array<double, 2> centroid(const std::vector<std::array<double, 2>>& v) {
  double cx = 0.0, cy = 0.0;
  for (const auto& p : v) {
    cx += p[0];
    cy += p[1];
  }
  return {cx / v.size(), cy / v.size()};
}

// Rescale a closed polygon about its centroid so the enclosed area becomes
// target (sign preserved).
void restore_area(std::vector<std::array<double, 2>>& nodes, double target) {
  DiscreteHorizontalPath tmp{nodes, true};
  const double area = tmp.signed_area();
  const double factor = std::sqrt(target / area);
  const auto c = centroid(nodes);
  for (auto& p : nodes) {
    p[0] = c[0] + factor * (p[0] - c[0]);
    p[1] = c[1] + factor * (p[1] - c[1]);
  }
}

// Gradient of the signed shoelace area with respect to the nodes.
std::vector<std::array<double, 2>> area_gradient(
    const std::vector<std::array<double, 2>>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::array<double, 2>> grad(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = nodes[(i + n - 1) % n];
    const auto& next = nodes[(i + 1) % n];
    grad[i] = {0.5 * (next[1] - prev[1]), 0.5 * (prev[0] - next[0])};
  }
  return grad;
}

}  // namespace

double DiscreteHorizontalPath::signed_area() const {
  double twice = 0.0;
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = nodes[i];
    const auto& q = nodes[(i + 1) % n];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * twice;
}

double DiscreteHorizontalPath::z_lift() const {
  double twice = 0.0;
  const std::size_t n = nodes.size();
  const std::size_t segments = closed ? n : n - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    const auto& p = nodes[i];
    const auto& q = nodes[(i + 1) % n];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return -0.5 * twice;
}

std::string DiscreteHorizontalPath::to_csv() const {
  std::ostringstream os;
  os << "x,y\n";
  char buf[96];
  for (const auto& p : nodes) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", p[0], p[1]);
    os << buf;
  }
  return os.str();
}

double finsler_length(const IndicatrixProfile& profile,
                      const DiscreteHorizontalPath& path) {
  const std::size_t n = path.nodes.size();
  if (n < 2) throw DegenerateSegment("path needs at least two nodes");
  double total = 0.0;
  const std::size_t segments = path.closed ? n : n - 1;
  for (std::size_t i = 0; i < segments; ++i)
    total += segment_length(profile, path.nodes[i], path.nodes[(i + 1) % n]);
  return total;
}

DiscreteHorizontalPath closed_projection_polygon(const GeodesicTrace& trace,
                                                 int node_count) {
  const ClosureReport closure = projection_closure(trace);
  if (!closure.closes)
    throw NotClosed("trace projection does not close within tolerance");
  DiscreteHorizontalPath path;
  path.closed = true;
  path.nodes.resize(node_count);
  const double s0 = trace.samples.front().s;
  for (int i = 0; i < node_count; ++i) {
    const GeodesicState st = interpolate_state(
        trace, s0 + closure.period_arclength * i / node_count);
    path.nodes[i] = {st.x, st.y};
  }
  return path;
}

StationarityReport dido_stationarity(const IndicatrixProfile& profile,
                                     const DiscreteHorizontalPath& loop,
                                     int perturbation_count, double epsilon,
                                     std::uint64_t seed, bool parallel) {
  const std::size_t n = loop.nodes.size();
  if (n < 8) throw std::invalid_argument("loop too coarse for perturbations");
  const double base_length = finsler_length(profile, loop);
  const double base_area = loop.signed_area();
  const auto agrad = area_gradient(loop.nodes);

  // outward node normals from the central-difference tangent
  std::vector<std::array<double, 2>> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = loop.nodes[(i + n - 1) % n];
    const auto& next = loop.nodes[(i + 1) % n];
    const double tx = next[0] - prev[0], ty = next[1] - prev[1];
    const double len = std::hypot(tx, ty);
    normals[i] = {-ty / len, tx / len};
  }

  std::vector<double> defects(perturbation_count, 0.0);
  auto run_trial = [&](int trial) {
    std::mt19937_64 rng(seed + 1000003ull * static_cast<std::uint64_t>(trial));
    std::normal_distribution<double> gauss(0.0, 1.0);
    // smooth low-frequency scalar field on the loop parameter
    std::array<double, 4> ak{}, bk{};
    for (int k = 0; k < 4; ++k) {
      ak[k] = gauss(rng);
      bk[k] = gauss(rng);
    }
    std::vector<std::array<double, 2>> disp(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = kTwoPi * static_cast<double>(i) / n;
      double f = 0.0;
      for (int k = 0; k < 4; ++k)
        f += ak[k] * std::cos((k + 2) * tau) + bk[k] * std::sin((k + 2) * tau);
      disp[i] = {f * normals[i][0], f * normals[i][1]};
    }
    // project out the first-order area change
    double dg = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dg += disp[i][0] * agrad[i][0] + disp[i][1] * agrad[i][1];
      gg += agrad[i][0] * agrad[i][0] + agrad[i][1] * agrad[i][1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      disp[i][0] -= dg / gg * agrad[i][0];
      disp[i][1] -= dg / gg * agrad[i][1];
    }
    // normalize in the discrete H1 seminorm with respect to arc length
    double h1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = loop.nodes[i];
      const auto& q = loop.nodes[(i + 1) % n];
      const double ds = std::hypot(q[0] - p[0], q[1] - p[1]);
      const double ddx = disp[(i + 1) % n][0] - disp[i][0];
      const double ddy = disp[(i + 1) % n][1] - disp[i][1];
      h1 += (ddx * ddx + ddy * ddy) / ds;
    }
    const double scale = epsilon / std::sqrt(h1);
    std::vector<std::array<double, 2>> perturbed(n);
    for (std::size_t i = 0; i < n; ++i)
      perturbed[i] = {loop.nodes[i][0] + scale * disp[i][0],
                      loop.nodes[i][1] + scale * disp[i][1]};
    restore_area(perturbed, base_area);
    const double len =
        finsler_length(profile, DiscreteHorizontalPath{perturbed, true});
    defects[trial] = std::abs(len - base_length) / epsilon;
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < perturbation_count; ++t) run_trial(t);
  } else {
    for (int t = 0; t < perturbation_count; ++t) run_trial(t);
  }
  StationarityReport report;
  report.max_first_order_defect =
      *std::max_element(defects.begin(), defects.end());
  return report;
}

StationarityReport dido_stationarity(const IndicatrixProfile& profile,
                                     const GeodesicTrace& trace,
                                     int perturbation_count, double epsilon,
                                     std::uint64_t seed, bool parallel) {
  return dido_stationarity(profile, closed_projection_polygon(trace, 1024),
                           perturbation_count, epsilon, seed, parallel);
}

DirectSearchResult dido_direct_search(const IndicatrixProfile& profile,
                                      double target_area, int node_count,
                                      int max_iterations) {
  if (target_area <= 0.0)
    throw std::invalid_argument("target area must be positive");
  if (node_count < 32)
    throw std::invalid_argument("direct search needs at least 32 nodes");

  DirectSearchResult result;
  auto& nodes = result.path.nodes;
  result.path.closed = true;
  nodes.resize(node_count);
  const double radius = std::sqrt(target_area / std::numbers::pi);
  for (int i = 0; i < node_count; ++i) {
    const double tau = kTwoPi * i / node_count;
    nodes[i] = {radius * std::cos(tau), radius * std::sin(tau)};
  }
  restore_area(nodes, target_area);

  auto length_of = [&](const std::vector<std::array<double, 2>>& v) {
    return finsler_length(profile, DiscreteHorizontalPath{v, true});
  };

  const double fd = 1e-6;
  double alpha = 1e-2 * radius;
  double length = length_of(nodes);
  const std::size_t n = nodes.size();
  std::vector<std::array<double, 2>> grad(n);

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    // local finite-difference gradient: node i touches two segments
    const auto fill_grad = [&](std::size_t i) {
      const auto& prev = nodes[(i + n - 1) % n];
      const auto& next = nodes[(i + 1) % n];
      for (int c = 0; c < 2; ++c) {
        auto hi = nodes[i], lo = nodes[i];
        hi[c] += fd;
        lo[c] -= fd;
        const double fplus =
            segment_length(profile, prev, hi) + segment_length(profile, hi, next);
        const double fminus =
            segment_length(profile, prev, lo) + segment_length(profile, lo, next);
        grad[i][c] = (fplus - fminus) / (2.0 * fd);
      }
    };
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i)
      fill_grad(static_cast<std::size_t>(i));

    // project onto the area-constraint tangent space
    const auto agrad = area_gradient(nodes);
    double dg = 0.0, gg = 0.0, gnorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dg += grad[i][0] * agrad[i][0] + grad[i][1] * agrad[i][1];
      gg += agrad[i][0] * agrad[i][0] + agrad[i][1] * agrad[i][1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      grad[i][0] -= dg / gg * agrad[i][0];
      grad[i][1] -= dg / gg * agrad[i][1];
      gnorm2 += grad[i][0] * grad[i][0] + grad[i][1] * grad[i][1];
    }
    if (std::sqrt(gnorm2) < 1e-10 * std::max(1.0, length)) {
      result.converged = true;
      break;
    }

    // backtracking line search with exact area restoration
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<std::array<double, 2>> trial(n);
      for (std::size_t i = 0; i < n; ++i)
        trial[i] = {nodes[i][0] - alpha * grad[i][0],
                    nodes[i][1] - alpha * grad[i][1]};
      restore_area(trial, target_area);
      const double trial_length = length_of(trial);
      if (trial_length < length - 1e-4 * alpha * gnorm2) {
        nodes = std::move(trial);
        length = trial_length;
        alpha *= 1.25;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      result.converged = true;  // no descent direction at line-search floor
      break;
    }
  }
  result.length = length;
  result.iterations = iter;
  return result;
}

double centered_hausdorff(const DiscreteHorizontalPath& a,
                          const DiscreteHorizontalPath& b) {
  // center on the area centroid so the comparison does not depend on how
  // nodes happen to be distributed along each loop
  auto center = [](const DiscreteHorizontalPath& p) {
    auto v = p.nodes;
    const std::size_t n = v.size();
    double area2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = v[i];
      const auto& w = v[(i + 1) % n];
      const double cross = u[0] * w[1] - w[0] * u[1];
      area2 += cross;
      cx += (u[0] + w[0]) * cross;
      cy += (u[1] + w[1]) * cross;
    }
    std::array<double, 2> c = centroid(v);
    if (std::abs(area2) > 0.0) c = {cx / (3.0 * area2), cy / (3.0 * area2)};
    for (auto& q : v) {
      q[0] -= c[0];
      q[1] -= c[1];
    }
    return v;
  };
  const auto va = center(a);
  const auto vb = center(b);
  auto point_to_polygon = [](const std::array<double, 2>& p,
                             const std::vector<std::array<double, 2>>& poly) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = poly[i];
      const auto& v = poly[(i + 1) % n];
      const double dx = v[0] - u[0], dy = v[1] - u[1];
      const double len2 = dx * dx + dy * dy;
      double t = len2 > 0.0
                     ? ((p[0] - u[0]) * dx + (p[1] - u[1]) * dy) / len2
                     : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best,
                      std::hypot(p[0] - (u[0] + t * dx), p[1] - (u[1] + t * dy)));
    }
    return best;
  };
  double h = 0.0;
  for (const auto& p : va) h = std::max(h, point_to_polygon(p, vb));
  for (const auto& p : vb) h = std::max(h, point_to_polygon(p, va));
  return h;
}

}  // namespace subfinsler
