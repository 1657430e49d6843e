#pragma once

#include <span>
#include <string>
#include <vector>

namespace subfinsler {

enum class ProfileKind { flat, randers, limacon, fourier };

/// Scaling function r(theta) of a homogeneous metric on the Heisenberg
/// group.  r is 2-pi periodic by construction for every kind; the metric
/// is admissible when r > 0 and r(r + r'') > 0 everywhere.
struct IndicatrixProfile {
  ProfileKind kind = ProfileKind::flat;
  double B = 0.0;                        // randers parameter, 0 <= B < 1
  std::vector<double> cos_coeffs;        // fourier: a_0 .. a_N
  std::vector<double> sin_coeffs;        // fourier: b_1 .. b_N

  static IndicatrixProfile flat();
  static IndicatrixProfile randers(double B);
  static IndicatrixProfile limacon();
  static IndicatrixProfile fourier(std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs);

  bool operator==(const IndicatrixProfile&) const = default;

  std::string describe() const;
};

/// r and its first three theta-derivatives at a point.
struct ProfileDerivatives {
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

/// Analytic r, r', r'', r''' for the given kind.
ProfileDerivatives evaluate_profile(const IndicatrixProfile& profile,
                                    double theta);

/// Analytic derivatives of r of orders 0 .. out.size()-1 (up to 8).
/// Higher orders feed the invariant derivatives I_4 and I_44.
void profile_derivatives(const IndicatrixProfile& profile, double theta,
                         std::span<double> out);

struct ConvexityReport {
  bool ok = false;
  double min_value = 0.0;
  double argmin = 0.0;
};

/// Samples r(r + r'') at grid_size uniform points; ok iff the minimum is
/// strictly positive.  grid_size must be >= 16.
ConvexityReport check_strong_convexity(const IndicatrixProfile& profile,
                                       int grid_size);

/// Integral of I over the indicatrix against the canonical fiber measure
/// sqrt((r + r'')/r) dtheta.  Zero for any closed strongly convex
/// indicatrix (Rund's obstruction).  Adaptive Simpson quadrature.
double rund_average(const IndicatrixProfile& profile);

}  // namespace subfinsler
