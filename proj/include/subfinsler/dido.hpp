#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "subfinsler/geodesic.hpp"
#include "subfinsler/profile.hpp"

namespace subfinsler {

/// Polygonal horizontal path in the xy-plane; the z-lift is determined by
/// the contact form, so over a closed loop the z increment equals minus
/// the signed shoelace area.
struct DiscreteHorizontalPath {
  std::vector<std::array<double, 2>> nodes;
  bool closed = true;

  double signed_area() const;  // shoelace, closed paths only
  double z_lift() const;       // total z increment along the path
  std::string to_csv() const;  // `x,y` rows
};

/// Finsler length of the polygon: per segment |dp| * r(angle of dp).
/// Exact for polygonal paths; even-profile direction convention.
double finsler_length(const IndicatrixProfile& profile,
                      const DiscreteHorizontalPath& path);

struct StationarityReport {
  double max_first_order_defect = 0.0;  // max |dLength| / epsilon
};

/// First-order length defect of a closed loop under random smooth
/// area-preserving normal perturbations of amplitude epsilon (amplitude
/// measured in the H1 seminorm of the displacement field, so a stationary
/// loop yields a defect of order epsilon).
StationarityReport dido_stationarity(const IndicatrixProfile& profile,
                                     const DiscreteHorizontalPath& loop,
                                     int perturbation_count, double epsilon,
                                     std::uint64_t seed, bool parallel = true);

/// Convenience overload: one closed period of the trace's xy-projection,
/// resampled to a uniform-arclength polygon.  Throws NotClosed when the
/// projection does not close.
StationarityReport dido_stationarity(const IndicatrixProfile& profile,
                                     const GeodesicTrace& trace,
                                     int perturbation_count, double epsilon,
                                     std::uint64_t seed, bool parallel = true);

/// One closed period of the trace projection as a polygon with node_count
/// uniformly spaced (in arc length) nodes.
DiscreteHorizontalPath closed_projection_polygon(const GeodesicTrace& trace,
                                                 int node_count);

struct DirectSearchResult {
  DiscreteHorizontalPath path;
  double length = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Minimizes the Finsler length over closed polygons of fixed enclosed
/// area by projected gradient descent from a circle.  Finite-difference
/// gradients (step 1e-6), backtracking line search; the area constraint is
/// restored exactly after every step by scaling about the centroid.
DirectSearchResult dido_direct_search(const IndicatrixProfile& profile,
                                      double target_area, int node_count,
                                      int max_iterations = 20000);

/// Symmetric Hausdorff distance between two node sets, after translating
/// both to their centroids.
double centered_hausdorff(const DiscreteHorizontalPath& a,
                          const DiscreteHorizontalPath& b);

}  // namespace subfinsler
