#include "subfinsler/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "subfinsler/errors.hpp"
#include "subfinsler/invariants.hpp"
#include "subfinsler/ode.hpp"

namespace subfinsler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<double, 5> rhs_vector(const IndicatrixProfile& profile, double s,
                                 const std::array<double, 5>& y) {
  GeodesicState state{s, y[0], y[1], y[2], y[3], y[4]};
  return geodesic_rhs(profile, state);
}

GeodesicState to_state(double s, const std::array<double, 5>& y) {
  return {s, y[0], y[1], y[2], y[3], y[4]};
}

std::array<double, 5> to_vector(const GeodesicState& st) {
  return {st.x, st.y, st.z, st.theta, st.lambda};
}

}  // namespace

std::array<double, 5> geodesic_rhs(const IndicatrixProfile& profile,
                                   const GeodesicState& state) {
  const auto d = evaluate_profile(profile, state.theta);
  if (d.r * (d.r + d.r2) <= 0.0)
    throw ConvexityViolation(state.theta,
                             "r(r + r'') <= 0 along trajectory at theta=" +
                                 std::to_string(state.theta));
  const double c = std::cos(state.theta), sn = std::sin(state.theta);
  const double I = heisenberg_I(profile, state.theta);
  return {c / d.r, -sn / d.r, (state.x * sn + state.y * c) / (2.0 * d.r),
          std::sqrt(d.r / (d.r + d.r2)) * state.lambda,
          I * state.lambda * state.lambda};
}

double conserved_quantity(const IndicatrixProfile& profile,
                          const GeodesicState& state) {
  const auto d = evaluate_profile(profile, state.theta);
  return state.lambda * d.r * std::sqrt(d.r * (d.r + d.r2));
}

GeodesicTrace integrate(const IndicatrixProfile& profile,
                        const GeodesicState& initial,
                        const IntegratorSettings& settings) {
  if (settings.tolerance &&
      (*settings.tolerance <= 0.0 || *settings.tolerance > 1e-3))
    throw std::invalid_argument("adaptive tolerance must lie in (0, 1e-3]");
  if (!settings.tolerance && settings.step <= 0.0)
    throw std::invalid_argument("fixed step must be positive");

  GeodesicTrace trace;
  trace.profile = profile;
  trace.initial = initial;
  trace.samples.push_back(initial);

  const double c0 = conserved_quantity(profile, initial);
  const double cscale = std::max(std::abs(c0), 1e-300);
  const double s_end = initial.s + settings.max_arclength;
  auto f = [&](double s, const std::array<double, 5>& y) {
    return rhs_vector(profile, s, y);
  };

  double s = initial.s;
  auto y = to_vector(initial);
  if (!settings.tolerance) {
    const double h = settings.step;
    while (s < s_end - 1e-12) {
      const double step = std::min(h, s_end - s);
      y = rk4_step<5>(f, s, y, step);
      s += step;
      trace.samples.push_back(to_state(s, y));
      if (c0 != 0.0)
        trace.conserved_drift =
            std::max(trace.conserved_drift,
                     std::abs(conserved_quantity(profile, trace.samples.back()) -
                              c0) /
                         cscale);
    }
  } else {
    const double tol = *settings.tolerance;
    double h = std::min(settings.step, s_end - s);
    while (s < s_end - 1e-12) {
      h = std::min(h, s_end - s);
      double error = 0.0;
      const auto candidate = dopri5_step<5>(f, s, y, h, &error);
      if (error <= tol) {
        s += h;
        y = candidate;
        trace.samples.push_back(to_state(s, y));
        if (c0 != 0.0)
          trace.conserved_drift = std::max(
              trace.conserved_drift,
              std::abs(conserved_quantity(profile, trace.samples.back()) - c0) /
                  cscale);
      }
      const double safety =
          0.9 * std::pow(tol / std::max(error, 1e-300), 0.2);
      h *= std::clamp(safety, 0.2, 5.0);
      if (h < 1e-13 * std::max(1.0, std::abs(s)))
        throw StepUnderflow("adaptive step size underflow at s=" +
                            std::to_string(s));
    }
  }
  return trace;
}

std::array<double, 3> randers_closed_form(double B,
                                          const std::array<double, 5>& initial,
                                          double theta) {
  const double x0 = initial[0], y0 = initial[1], z0 = initial[2];
  const double theta0 = initial[3], lambda0 = initial[4];
  if (lambda0 == 0.0)
    throw ZeroMultiplier("randers closed form requires lambda0 != 0");
  const double r0 = 1.0 + B * std::cos(theta0);
  const double k = lambda0 * std::sqrt(r0 * r0 * r0);
  const double dsin = std::sin(theta) - std::sin(theta0);
  const double dcos = std::cos(theta) - std::cos(theta0);
  const double x = x0 + dsin / k;
  const double y = y0 + dcos / k;
  const double z = z0 +
                   (theta - theta0 - std::sin(theta - theta0)) / (2.0 * k * k) +
                   (y0 * dsin - x0 * dcos) / (2.0 * k);
  return {x, y, z};
}

std::array<double, 2> limacon_closed_form(const std::array<double, 4>& initial,
                                          double theta) {
  const double x0 = initial[0], y0 = initial[1];
  const double theta0 = initial[2], lambda0 = initial[3];
  if (lambda0 == 0.0)
    throw ZeroMultiplier("limacon closed form requires lambda0 != 0");
  const double R0 = 3.0 + std::cos(theta0);
  const double L = lambda0 * std::sqrt(9.0 * std::cos(theta0) + 11.0) /
                   (R0 * R0 * R0);
  auto hx = [](double t) {
    const double R = 3.0 + std::cos(t);
    return std::sin(t) * (4.0 * std::cos(t) + 6.0) / (R * R);
  };
  auto hy = [](double t) {
    const double R = 3.0 + std::cos(t);
    return (9.0 * std::cos(t) + 19.0) / (R * R);
  };
  return {x0 + (hx(theta) - hx(theta0)) / (2.0 * L),
          y0 - (hy(theta) - hy(theta0)) / L};
}

GeodesicState interpolate_state(const GeodesicTrace& trace, double s) {
  const auto& samples = trace.samples;
  if (samples.empty()) throw InsufficientTrace("empty trace");
  if (s <= samples.front().s) return samples.front();
  if (s >= samples.back().s) return samples.back();
  auto it = std::lower_bound(
      samples.begin(), samples.end(), s,
      [](const GeodesicState& st, double value) { return st.s < value; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double h = hi.s - lo.s;
  const double t = (s - lo.s) / h;
  const auto dlo = geodesic_rhs(trace.profile, lo);
  const auto dhi = geodesic_rhs(trace.profile, hi);
  const auto ylo = to_vector(lo);
  const auto yhi = to_vector(hi);
  // cubic Hermite basis
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  std::array<double, 5> y;
  for (int i = 0; i < 5; ++i)
    y[i] = h00 * ylo[i] + h10 * h * dlo[i] + h01 * yhi[i] + h11 * h * dhi[i];
  return to_state(s, y);
}

ClosureReport projection_closure(const GeodesicTrace& trace) {
  if (trace.samples.size() < 2)
    throw InsufficientTrace("trace has fewer than two samples");
  const GeodesicState& start = trace.samples.front();
  if (start.lambda == 0.0)
    throw InsufficientTrace("lambda0 = 0: theta is constant along the trace");
  const double direction = start.lambda > 0.0 ? 1.0 : -1.0;
  const double target = start.theta + direction * kTwoPi;
  if (direction * (trace.samples.back().theta - target) < 0.0)
    throw InsufficientTrace("trace spans less than one theta-period");

  // first sample past the target; theta is strictly monotone
  auto it = std::find_if(trace.samples.begin(), trace.samples.end(),
                         [&](const GeodesicState& st) {
                           return direction * (st.theta - target) >= 0.0;
                         });
  // bisection on the Hermite interpolant of theta(s); theta is monotone
  double s_lo = (it - 1)->s, s_hi = it->s;
  for (int iter = 0; iter < 80 && s_hi - s_lo > 1e-15 * (1.0 + s_hi); ++iter) {
    const double mid = 0.5 * (s_lo + s_hi);
    const double fval =
        direction * (interpolate_state(trace, mid).theta - target);
    (fval < 0.0 ? s_lo : s_hi) = mid;
  }
  const double s_star = 0.5 * (s_lo + s_hi);
  const GeodesicState end = interpolate_state(trace, s_star);

  ClosureReport report;
  report.period_arclength = s_star - start.s;
  report.z_gain = end.z - start.z;
  report.closure_gap = std::hypot(end.x - start.x, end.y - start.y);

  // shoelace area over the interpolated closed polygon
  double area = 0.0;
  double xmin = start.x, xmax = start.x, ymin = start.y, ymax = start.y;
  const GeodesicState* prev = &start;
  for (auto jt = trace.samples.begin() + 1; jt != it; ++jt) {
    area += prev->x * jt->y - jt->x * prev->y;
    xmin = std::min(xmin, jt->x);
    xmax = std::max(xmax, jt->x);
    ymin = std::min(ymin, jt->y);
    ymax = std::max(ymax, jt->y);
    prev = &*jt;
  }
  area += prev->x * end.y - end.x * prev->y;
  area += end.x * start.y - start.x * end.y;
  report.enclosed_area = 0.5 * area;

  const double diameter = std::hypot(xmax - xmin, ymax - ymin);
  report.closes = report.closure_gap < 1e-6 * std::max(diameter, 1e-300);
  return report;
}

std::string trace_to_csv(const GeodesicTrace& trace) {
  std::ostringstream os;
  os << "s,x,y,z,theta,lambda,conserved\n";
  char buf[256];
  for (const auto& st : trace.samples) {
    std::snprintf(buf, sizeof(buf),
                  "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", st.s, st.x,
                  st.y, st.z, st.theta, st.lambda,
                  conserved_quantity(trace.profile, st));
    os << buf;
  }
  return os.str();
}

}  // namespace subfinsler
