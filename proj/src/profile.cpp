#include "subfinsler/profile.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "subfinsler/errors.hpp"
#include "subfinsler/invariants.hpp"

namespace subfinsler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Derivatives of c*cos(k t + phase): the n-th derivative cycles with period 4.
void trig_derivatives(double amplitude, double k, double angle, bool is_sin,
                      std::span<double> out) {
  // sin = cos shifted by -pi/2
  double phase = is_sin ? angle - std::numbers::pi / 2.0 : angle;
  double scale = amplitude;
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] += scale * std::cos(phase);
    phase += std::numbers::pi / 2.0;
    scale *= k;
  }
}

// r = 1/R from derivatives of R, via n-fold differentiation of r*R = 1:
//   sum_k C(n,k) r^(k) R^(n-k) = 0  for n >= 1.
void reciprocal_derivatives(std::span<const double> R, std::span<double> r) {
  const std::size_t n = r.size();
  r[0] = 1.0 / R[0];
  std::array<std::array<double, 16>, 16> binom{};
  for (std::size_t i = 0; i < 16; ++i) {
    binom[i][0] = 1.0;
    for (std::size_t j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j < i ? binom[i - 1][j] : 0.0);
  }
  for (std::size_t m = 1; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      acc += binom[m][k] * r[k] * R[m - k];
    r[m] = -acc / R[0];
  }
}

}  // namespace

IndicatrixProfile IndicatrixProfile::flat() { return {}; }

IndicatrixProfile IndicatrixProfile::randers(double B) {
  if (B < 0.0 || B >= 1.0)
    throw std::invalid_argument("randers profile requires 0 <= B < 1");
  IndicatrixProfile p;
  p.kind = ProfileKind::randers;
  p.B = B;
  return p;
}

IndicatrixProfile IndicatrixProfile::limacon() {
  IndicatrixProfile p;
  p.kind = ProfileKind::limacon;
  return p;
}

IndicatrixProfile IndicatrixProfile::fourier(std::vector<double> cos_coeffs,
                                             std::vector<double> sin_coeffs) {
  if (cos_coeffs.empty())
    throw std::invalid_argument("fourier profile needs at least a_0");
  IndicatrixProfile p;
  p.kind = ProfileKind::fourier;
  p.cos_coeffs = std::move(cos_coeffs);
  p.sin_coeffs = std::move(sin_coeffs);
  return p;
}

std::string IndicatrixProfile::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ProfileKind::flat:
      os << "flat";
      break;
    case ProfileKind::randers:
      os << "randers(B=" << B << ")";
      break;
    case ProfileKind::limacon:
      os << "limacon";
      break;
    case ProfileKind::fourier:
      os << "fourier(a=[";
      for (std::size_t i = 0; i < cos_coeffs.size(); ++i)
        os << (i ? "," : "") << cos_coeffs[i];
      os << "],b=[";
      for (std::size_t i = 0; i < sin_coeffs.size(); ++i)
        os << (i ? "," : "") << sin_coeffs[i];
      os << "])";
      break;
  }
  return os.str();
}

void profile_derivatives(const IndicatrixProfile& profile, double theta,
                         std::span<double> out) {
  assert(out.size() >= 1 && out.size() <= 8);
  std::fill(out.begin(), out.end(), 0.0);
  switch (profile.kind) {
    case ProfileKind::flat:
      out[0] = 1.0;
      break;
    case ProfileKind::randers:
      out[0] = 1.0;
      trig_derivatives(profile.B, 1.0, theta, false, out);
      break;
    case ProfileKind::limacon: {
      // r = 1/R with R = 3 + cos(theta)
      std::array<double, 8> R{};
      auto Rspan = std::span<double>(R.data(), out.size());
      R[0] = 3.0;
      trig_derivatives(1.0, 1.0, theta, false, Rspan);
      reciprocal_derivatives(Rspan, out);
      break;
    }
    case ProfileKind::fourier: {
      out[0] = profile.cos_coeffs[0];
      for (std::size_t k = 1; k < profile.cos_coeffs.size(); ++k)
        trig_derivatives(profile.cos_coeffs[k], static_cast<double>(k),
                         k * theta, false, out);
      for (std::size_t k = 1; k <= profile.sin_coeffs.size(); ++k)
        trig_derivatives(profile.sin_coeffs[k - 1], static_cast<double>(k),
                         k * theta, true, out);
      break;
    }
  }
}

ProfileDerivatives evaluate_profile(const IndicatrixProfile& profile,
                                    double theta) {
  std::array<double, 4> d{};
  profile_derivatives(profile, theta, d);
  return {d[0], d[1], d[2], d[3]};
}

ConvexityReport check_strong_convexity(const IndicatrixProfile& profile,
                                       int grid_size) {
  if (grid_size < 16)
    throw std::invalid_argument("convexity grid must have at least 16 points");
  ConvexityReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  auto probe = [&](double theta) {
    const auto d = evaluate_profile(profile, theta);
    const double value = d.r * (d.r + d.r2);
    if (value < report.min_value) {
      report.min_value = value;
      report.argmin = theta;
    }
  };
  for (int i = 0; i < grid_size; ++i) probe(kTwoPi * i / grid_size);
  // The built-in kinds are even in theta, so r(r + r'') is critical at the
  // symmetry angles; probing them makes the reported minimum exact there.
  if (profile.kind != ProfileKind::fourier) {
    probe(0.0);
    probe(std::numbers::pi);
  }
  report.ok = report.min_value > 0.0;
  return report;
}

namespace {

// Integrand of the Rund average: I * sqrt((r + r'')/r).
double rund_integrand(const IndicatrixProfile& profile, double theta) {
  const auto d = evaluate_profile(profile, theta);
  const double prod = d.r * (d.r + d.r2);
  if (prod <= 0.0)
    throw ConvexityViolation(theta, "r(r + r'') <= 0 at theta=" +
                                        std::to_string(theta));
  return heisenberg_I(profile, theta) * std::sqrt((d.r + d.r2) / d.r);
}

double adaptive_simpson(const IndicatrixProfile& p, double a, double b,
                        double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = rund_integrand(p, lm), frm = rund_integrand(p, rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(p, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(p, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double rund_average(const IndicatrixProfile& profile) {
  // Split the period into a few panels so the adaptive rule sees the
  // oscillation of the integrand.
  const int panels = 8;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = kTwoPi * i / panels;
    const double b = kTwoPi * (i + 1) / panels;
    const double m = 0.5 * (a + b);
    const double fa = rund_integrand(profile, a);
    const double fm = rund_integrand(profile, m);
    const double fb = rund_integrand(profile, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(profile, a, b, fa, fm, fb, whole, 1e-13, 40);
  }
  return total;
}

}  // namespace subfinsler
