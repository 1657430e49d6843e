#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subfinsler/profile.hpp"

namespace subfinsler {

/// Point of the extended bundle carrying the geodesic flow.
struct GeodesicState {
  double s = 0.0;       // arc length
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double theta = 0.0;   // fiber angle
  double lambda = 0.0;  // multiplier
};

struct IntegratorSettings {
  double step = 1e-3;                 // fixed RK4 step
  std::optional<double> tolerance;    // adaptive mode when set, in (0, 1e-3]
  double max_arclength = 10.0;
};

struct GeodesicTrace {
  std::vector<GeodesicState> samples;  // strictly increasing in s
  IndicatrixProfile profile;
  GeodesicState initial;
  double conserved_drift = 0.0;  // max relative drift seen while integrating
};

/// Right-hand side (dx, dy, dz, dtheta, dlambda)/ds of the geodesic system.
std::array<double, 5> geodesic_rhs(const IndicatrixProfile& profile,
                                   const GeodesicState& state);

/// lambda r sqrt(r(r + r'')), constant along geodesics.
double conserved_quantity(const IndicatrixProfile& profile,
                          const GeodesicState& state);

GeodesicTrace integrate(const IndicatrixProfile& profile,
                        const GeodesicState& initial,
                        const IntegratorSettings& settings);

/// Closed-form Randers geodesic (B in [0,1), lambda0 != 0), evaluated at
/// fiber angle theta; returns (x, y, z).
std::array<double, 3> randers_closed_form(double B,
                                          const std::array<double, 5>& initial,
                                          double theta);

/// Closed-form xy-projection of a limacon-metric geodesic
/// (initial = (x0, y0, theta0, lambda0), lambda0 != 0).
std::array<double, 2> limacon_closed_form(const std::array<double, 4>& initial,
                                          double theta);

struct ClosureReport {
  bool closes = false;
  double period_arclength = 0.0;
  double enclosed_area = 0.0;  // signed shoelace area of one period
  double closure_gap = 0.0;    // xy distance between start and period end
  double z_gain = 0.0;         // z increment over one period; equals
                               // -enclosed_area along horizontal lifts
};

/// Locates the first arc length where theta has advanced by a full period
/// and reports closure of the xy-projection.
ClosureReport projection_closure(const GeodesicTrace& trace);

/// State at arc length s by cubic Hermite interpolation between samples.
GeodesicState interpolate_state(const GeodesicTrace& trace, double s);

/// CSV serialization: header `s,x,y,z,theta,lambda,conserved`, one row per
/// sample, 10 significant digits.
std::string trace_to_csv(const GeodesicTrace& trace);

}  // namespace subfinsler
