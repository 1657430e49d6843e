#pragma once

#include <cmath>

namespace subfinsler {

/// Truncated Taylor scalar carrying a value and its first two derivatives
/// with respect to a single curve parameter.  Used to propagate exact
/// derivatives through the invariant formulas without hand-expanding them.
struct Jet2 {
  double v = 0.0;   // f
  double d1 = 0.0;  // f'
  double d2 = 0.0;  // f''

  constexpr Jet2() = default;
  constexpr Jet2(double v_, double d1_, double d2_) : v(v_), d1(d1_), d2(d2_) {}

  /// Constant (all derivatives zero).
  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
};

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
constexpr Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
constexpr Jet2 operator*(double c, const Jet2& a) {
  return {c * a.v, c * a.d1, c * a.d2};
}
constexpr Jet2 operator*(const Jet2& a, double c) { return c * a; }

inline Jet2 inv(const Jet2& a) {
  const double iv = 1.0 / a.v;
  const double iv2 = iv * iv;
  return {iv, -a.d1 * iv2, (2.0 * a.d1 * a.d1 * iv - a.d2) * iv2};
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }

inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d1 / (2.0 * s),
          a.d2 / (2.0 * s) - a.d1 * a.d1 / (4.0 * s * s * s)};
}

}  // namespace subfinsler
