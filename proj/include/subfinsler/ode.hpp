#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace subfinsler {

/// One classical RK4 step of y' = f(s, y).
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(const Rhs& f, double s,
                               const std::array<double, N>& y, double h) {
  const auto k1 = f(s, y);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const auto k2 = f(s + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const auto k3 = f(s + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  const auto k4 = f(s + h, tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

/// Dormand-Prince 5(4) embedded step; returns the 5th-order solution and
/// writes the local error estimate.
template <std::size_t N, typename Rhs>
std::array<double, N> dopri5_step(const Rhs& f, double s,
                                  const std::array<double, N>& y, double h,
                                  double* error) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto k1 = f(s, y);
  std::array<double, N> t;
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
  const auto k2 = f(s + c2 * h, t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const auto k3 = f(s + c3 * h, t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  const auto k4 = f(s + c4 * h, t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  const auto k5 = f(s + c5 * h, t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  const auto k6 = f(s + h, t);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                         b6 * k6[i]);
  const auto k7 = f(s + h, out);
  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
    err = std::max(err, std::abs(e));
  }
  *error = err;
  return out;
}

}  // namespace subfinsler
