#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "subfinsler/geodesic.hpp"
#include "subfinsler/invariants.hpp"
#include "subfinsler/profile.hpp"

namespace subfinsler {

/// Coefficient of the velocity term of the fourth-order second-variation
/// operator, evaluated from a full invariant table at multiplier lambda.
double eval_P(const InvariantTable& table, double lambda);

/// Coefficient of the zeroth-order term; the complete general expression
/// is transcribed once and exercised through the homogeneous reductions.
double eval_Q(const InvariantTable& table, double lambda);

/// Scalar coefficients P(s), Q(s) of the Jacobi operator along a fixed
/// geodesic trace.
class JacobiCoefficients {
 public:
  JacobiCoefficients(IndicatrixProfile profile, GeodesicTrace trace);

  double P(double s) const;
  double Q(double s) const;
  /// dP/ds by the chain rule along the trace (homogeneous table:
  /// dI/ds = I_4 lambda, dI_4/ds = I_44 lambda, dlambda/ds = I lambda^2).
  double Pdot(double s) const;

  /// Pointwise evaluation from a geodesic state (theta, lambda).
  double P_at(const GeodesicState& state) const;
  double Q_at(const GeodesicState& state) const;
  double Pdot_at(const GeodesicState& state) const;

  const IndicatrixProfile& profile() const { return profile_; }
  const GeodesicTrace& trace() const { return trace_; }

 private:
  IndicatrixProfile profile_;
  GeodesicTrace trace_;
};

/// Throws ProfileMismatch when the trace was integrated for a different
/// profile.
JacobiCoefficients jacobi_coefficients(const IndicatrixProfile& profile,
                                       const GeodesicTrace& trace);

/// J(u) = u'''' + P u'' + Pdot u' + Q u at arc length s; u holds the value
/// and derivatives of u up to fourth order at s.
double jacobi_apply(const JacobiCoefficients& coeffs,
                    const std::array<double, 5>& u, double s);

struct ConjugatePoint {
  double c = 0.0;
  int multiplicity = 1;
};

/// Conjugate points in (0, length): roots of the Wronskian
/// W(c) = det [[u_a, u_b], [u_a', u_b']] of the two solutions of J(u) = 0
/// with u(0) = u'(0) = 0 and (u''(0), u'''(0)) = (1,0), (0,1).
std::vector<ConjugatePoint> conjugate_points(const JacobiCoefficients& coeffs,
                                             double length);

/// Multiplicity-weighted count of conjugate points strictly inside
/// (0, length); equals the index of the second-variation form.
int conjugate_index(const JacobiCoefficients& coeffs, double length);

/// CSV `c,multiplicity`.
std::string conjugate_points_to_csv(const std::vector<ConjugatePoint>& points);

struct VariationField {
  std::vector<double> s;
  std::vector<double> V1, V2, V3, V4, V5;
};

/// v3 and its first three s-derivatives at arc length s.
using V3Fn = std::function<std::array<double, 4>(double)>;

/// Rebuilds the full five-component variation field from its V3 component
/// along the trace (homogeneous reduction: only I and I_4 survive).
VariationField reconstruct_variation(const IndicatrixProfile& profile,
                                     const GeodesicTrace& trace,
                                     const V3Fn& v3);

}  // namespace subfinsler
