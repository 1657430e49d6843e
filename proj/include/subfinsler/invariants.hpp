#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "subfinsler/profile.hpp"

namespace subfinsler {

/// Torsion functions of the canonical coframing together with every
/// coframe-directional derivative that enters the Jacobi coefficients.
/// Subscript convention: _1.._3 are the eta-directions, _4 is the
/// phi-direction; repeated subscripts iterate the derivative.
struct InvariantTable {
  double I = 0, K = 0, A1 = 0, A2 = 0, J1 = 0, J2 = 0, S0 = 0, S1 = 0, S2 = 0;

  double I_4 = 0, I_41 = 0, I_411 = 0, I_3 = 0, I_44 = 0;

  double J1_4 = 0, J2_4 = 0, J1_41 = 0, J2_41 = 0;
  double A1_1 = 0, A1_4 = 0, A1_41 = 0, A1_11 = 0;
  double A2_1 = 0, A2_3 = 0, A2_4 = 0, A2_41 = 0, A2_11 = 0;
  double K_1 = 0, K_3 = 0, K_11 = 0;
  double S0_1 = 0, S0_4 = 0;
  double S2_1 = 0, S2_4 = 0;
};

/// Four 1-forms sampled at a point of the indicatrix bundle.
/// forms[i][a] is the component of the i-th form (eta1, eta2, eta3, phi)
/// in the coordinate cobasis (dx, dy, dz, dtheta).
struct CoframeSample {
  std::array<double, 4> point{};
  std::array<std::array<double, 4>, 4> forms{};
};

/// Fundamental invariant of the homogeneous metric defined by the profile:
///   I = -1/2 (r r''' + 3 r' r'' + 4 r r') / (sqrt(r) (r + r'')^{3/2}).
/// I vanishes identically exactly when the metric is sub-Riemannian.
double heisenberg_I(const IndicatrixProfile& profile, double theta);

/// Full invariant table for the homogeneous metric: I, I_4 and I_44 are
/// computed analytically, every other entry is zero.
InvariantTable heisenberg_table(const IndicatrixProfile& profile,
                                double theta);

/// The adapted coframe of the homogeneous metric at (x, y, z, theta).
CoframeSample heisenberg_coframe(const IndicatrixProfile& profile,
                                 const std::array<double, 4>& point);

enum class ConstantICase {
  hyperbolic,       // I^2 > 4
  oscillatory,      // I^2 < 4
  parabolic_plus,   // I = 2
  parabolic_minus,  // I = -2
};

/// Explicit micro-local coframe with constant invariant I (integration
/// constants fixed to 1).  Throws CaseMismatch when I violates the case's
/// defining inequality.
CoframeSample constant_I_coframe(double I, ConstantICase icase,
                                 const std::array<double, 4>& point);

using CoframeFn = std::function<CoframeSample(const std::array<double, 4>&)>;
using TableFn = std::function<InvariantTable(const std::array<double, 4>&)>;

/// Maximum absolute residual of the four structure equations at the point:
/// each d(eta^i) is formed by central finite differences of the coframe
/// components and compared slot by slot against the invariant-weighted
/// wedge products on the right-hand side.
double structure_residual(const CoframeFn& coframe, const TableFn& table,
                          const std::array<double, 4>& point, double fd_step);

/// structure_residual over many points.  The parallel path distributes
/// points across OpenMP threads; results are identical to the serial path.
std::vector<double> structure_residual_batch(
    const CoframeFn& coframe, const TableFn& table,
    std::span<const std::array<double, 4>> points, double fd_step,
    bool parallel);

}  // namespace subfinsler
