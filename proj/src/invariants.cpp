#include "subfinsler/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subfinsler/errors.hpp"
#include "subfinsler/jet.hpp"

namespace subfinsler {

namespace {

void require_convex(double r, double r2, double theta) {
  if (r * (r + r2) <= 0.0)
    throw ConvexityViolation(
        theta, "r(r + r'') <= 0 at theta=" + std::to_string(theta));
}

// I as a 2-jet in theta.  Needs r through its fifth derivative.
Jet2 invariant_jet(const IndicatrixProfile& profile, double theta) {
  std::array<double, 6> d{};
  profile_derivatives(profile, theta, d);
  require_convex(d[0], d[2], theta);
  const Jet2 r{d[0], d[1], d[2]};
  const Jet2 r1{d[1], d[2], d[3]};
  const Jet2 r2{d[2], d[3], d[4]};
  const Jet2 r3{d[3], d[4], d[5]};
  const Jet2 num = r * r3 + 3.0 * (r1 * r2) + 4.0 * (r * r1);
  const Jet2 sum = r + r2;
  const Jet2 den = sqrt(r) * (sum * sqrt(sum));
  return -0.5 * (num / den);
}

}  // namespace

double heisenberg_I(const IndicatrixProfile& profile, double theta) {
  const auto d = evaluate_profile(profile, theta);
  require_convex(d.r, d.r2, theta);
  const double num = d.r * d.r3 + 3.0 * d.r1 * d.r2 + 4.0 * d.r * d.r1;
  const double sum = d.r + d.r2;
  return -0.5 * num / (std::sqrt(d.r) * sum * std::sqrt(sum));
}

InvariantTable heisenberg_table(const IndicatrixProfile& profile,
                                double theta) {
  std::array<double, 5> d{};
  profile_derivatives(profile, theta, d);
  require_convex(d[0], d[2], theta);

  const Jet2 Ij = invariant_jet(profile, theta);
  // g = sqrt(r/(r + r'')) converts d/dtheta into the phi-direction.
  const Jet2 r{d[0], d[1], d[2]};
  const Jet2 r2{d[2], d[3], d[4]};
  const Jet2 g = sqrt(r / (r + r2));

  InvariantTable table;
  table.I = Ij.v;
  table.I_4 = g.v * Ij.d1;
  // I_44 = g d/dtheta (g I') = g (g' I' + g I'')
  table.I_44 = g.v * (g.d1 * Ij.d1 + g.v * Ij.d2);
  return table;
}

CoframeSample heisenberg_coframe(const IndicatrixProfile& profile,
                                 const std::array<double, 4>& point) {
  const double x = point[0], y = point[1], theta = point[3];
  const auto d = evaluate_profile(profile, theta);
  require_convex(d.r, d.r2, theta);
  const double c = std::cos(theta), s = std::sin(theta);
  const double root = std::sqrt(d.r * (d.r + d.r2));

  CoframeSample sample;
  sample.point = point;
  // eta1 = (r cos - r' sin) dx - (r sin + r' cos) dy
  sample.forms[0] = {d.r * c - d.r1 * s, -(d.r * s + d.r1 * c), 0.0, 0.0};
  // eta2 = sqrt(r(r + r'')) (sin dx + cos dy)
  sample.forms[1] = {root * s, root * c, 0.0, 0.0};
  // eta3 = r^{3/2} sqrt(r + r'') (dz + 1/2 (x dy - y dx))
  const double a3 = d.r * root;
  sample.forms[2] = {-0.5 * a3 * y, 0.5 * a3 * x, a3, 0.0};
  // phi = sqrt((r + r'')/r) dtheta
  sample.forms[3] = {0.0, 0.0, 0.0, std::sqrt((d.r + d.r2) / d.r)};
  return sample;
}

CoframeSample constant_I_coframe(double I, ConstantICase icase,
                                 const std::array<double, 4>& point) {
  const double x = point[0], y = point[1], theta = point[3];
  CoframeSample sample;
  sample.point = point;
  auto contact = [&](double factor) -> std::array<double, 4> {
    return {-0.5 * factor * y, 0.5 * factor * x, factor, 0.0};
  };
  sample.forms[3] = {0.0, 0.0, 0.0, 1.0};  // phi = dtheta in all cases

  switch (icase) {
    case ConstantICase::hyperbolic: {
      if (I * I <= 4.0)
        throw CaseMismatch("hyperbolic case requires I^2 > 4");
      const double disc = std::sqrt(I * I - 4.0);
      const double rho1 = 0.5 * (-I + disc), rho2 = 0.5 * (-I - disc);
      const double e1 = std::exp(rho1 * theta), e2 = std::exp(rho2 * theta);
      sample.forms[0] = {e1, e2, 0.0, 0.0};
      sample.forms[1] = {-rho1 * e1, -rho2 * e2, 0.0, 0.0};
      sample.forms[2] = contact(std::exp(-I * theta) * disc);
      break;
    }
    case ConstantICase::oscillatory: {
      if (I * I >= 4.0)
        throw CaseMismatch("oscillatory case requires I^2 < 4");
      const double rho = 0.5 * std::sqrt(4.0 - I * I);
      const double e = std::exp(-0.5 * I * theta);
      const double cr = std::cos(rho * theta), sr = std::sin(rho * theta);
      sample.forms[0] = {e * cr, e * sr, 0.0, 0.0};
      sample.forms[1] = {e * (0.5 * I * cr + rho * sr),
                         e * (0.5 * I * sr - rho * cr), 0.0, 0.0};
      sample.forms[2] = contact(-rho * std::exp(-I * theta));
      break;
    }
    case ConstantICase::parabolic_plus: {
      if (I != 2.0) throw CaseMismatch("parabolic_plus case requires I = 2");
      const double e = std::exp(-theta);
      sample.forms[0] = {e * (1.0 + theta), -e * theta, 0.0, 0.0};
      sample.forms[1] = {e * theta, e * (1.0 - theta), 0.0, 0.0};
      sample.forms[2] = contact(std::exp(-2.0 * theta));
      break;
    }
    case ConstantICase::parabolic_minus: {
      if (I != -2.0) throw CaseMismatch("parabolic_minus case requires I = -2");
      const double e = std::exp(theta);
      sample.forms[0] = {e * (1.0 - theta), -e * theta, 0.0, 0.0};
      sample.forms[1] = {e * theta, e * (1.0 + theta), 0.0, 0.0};
      sample.forms[2] = contact(std::exp(2.0 * theta));
      break;
    }
  }
  return sample;
}

namespace {

double det4(const std::array<std::array<double, 4>, 4>& m) {
  double det = 0.0;
  for (int c0 = 0; c0 < 4; ++c0) {
    double sub[3][3];
    for (int i = 1; i < 4; ++i) {
      int cc = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == c0) continue;
        sub[i - 1][cc++] = m[i][j];
      }
    }
    const double minor = sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
                         sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
                         sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
    det += ((c0 % 2) ? -1.0 : 1.0) * m[0][c0] * minor;
  }
  return det;
}

// Wedge product of two sampled 1-forms; w[a][b] with a < b meaningful.
using TwoForm = std::array<std::array<double, 4>, 4>;

TwoForm wedge(const std::array<double, 4>& u, const std::array<double, 4>& v) {
  TwoForm w{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) w[a][b] = u[a] * v[b] - u[b] * v[a];
  return w;
}

void accumulate(TwoForm& acc, double coeff, const TwoForm& w) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) acc[a][b] += coeff * w[a][b];
}

}  // namespace

double structure_residual(const CoframeFn& coframe, const TableFn& table,
                          const std::array<double, 4>& point, double fd_step) {
  if (fd_step < 1e-7 || fd_step > 1e-3)
    throw std::invalid_argument("fd_step must lie in [1e-7, 1e-3]");

  const CoframeSample center = coframe(point);
  // Hadamard ratio |det| / prod(row norms): invariant under row scaling,
  // so exponentially small but well-conditioned coframes pass.
  double row_norm_product = 1.0;
  for (const auto& form : center.forms) {
    double norm2 = 0.0;
    for (double v : form) norm2 += v * v;
    row_norm_product *= std::sqrt(norm2);
  }
  if (std::abs(det4(center.forms)) < 1e-12 * row_norm_product)
    throw SingularCoframe("coframe component matrix is singular");

  // d(eta^i)_{ab} = d_a(eta^i_b) - d_b(eta^i_a), central differences.
  std::array<CoframeSample, 4> plus, minus;
  for (int a = 0; a < 4; ++a) {
    auto p = point;
    p[a] += fd_step;
    plus[a] = coframe(p);
    p[a] -= 2.0 * fd_step;
    minus[a] = coframe(p);
  }
  std::array<TwoForm, 4> d{};
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        d[i][a][b] = (plus[a].forms[i][b] - minus[a].forms[i][b]) /
                         (2.0 * fd_step) -
                     (plus[b].forms[i][a] - minus[b].forms[i][a]) /
                         (2.0 * fd_step);

  const InvariantTable t = table(point);
  const auto& e1 = center.forms[0];
  const auto& e2 = center.forms[1];
  const auto& e3 = center.forms[2];
  const auto& ph = center.forms[3];

  std::array<TwoForm, 4> rhs{};
  // d eta1 = eta2^phi + A1 eta2^eta3 + (A2 + IK/2) eta3^eta1 + J1 eta3^phi
  accumulate(rhs[0], 1.0, wedge(e2, ph));
  accumulate(rhs[0], t.A1, wedge(e2, e3));
  accumulate(rhs[0], t.A2 + 0.5 * t.I * t.K, wedge(e3, e1));
  accumulate(rhs[0], t.J1, wedge(e3, ph));
  // d eta2 = -eta1^phi + (A2 - IK/2) eta2^eta3 - A1 eta3^eta1
  //          + J2 eta3^phi + I eta2^phi
  accumulate(rhs[1], -1.0, wedge(e1, ph));
  accumulate(rhs[1], t.A2 - 0.5 * t.I * t.K, wedge(e2, e3));
  accumulate(rhs[1], -t.A1, wedge(e3, e1));
  accumulate(rhs[1], t.J2, wedge(e3, ph));
  accumulate(rhs[1], t.I, wedge(e2, ph));
  // d eta3 = eta1^eta2 + I eta3^phi
  accumulate(rhs[2], 1.0, wedge(e1, e2));
  accumulate(rhs[2], t.I, wedge(e3, ph));
  // d phi = S0 eta3^phi + S1 eta2^eta3 + S2 eta3^eta1 - J1 eta1^phi
  //         - 2 J2 eta2^phi + K eta1^eta2
  accumulate(rhs[3], t.S0, wedge(e3, ph));
  accumulate(rhs[3], t.S1, wedge(e2, e3));
  accumulate(rhs[3], t.S2, wedge(e3, e1));
  accumulate(rhs[3], -t.J1, wedge(e1, ph));
  accumulate(rhs[3], -2.0 * t.J2, wedge(e2, ph));
  accumulate(rhs[3], t.K, wedge(e1, e2));

  double residual = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        residual = std::max(residual, std::abs(d[i][a][b] - rhs[i][a][b]));
  return residual;
}

std::vector<double> structure_residual_batch(
    const CoframeFn& coframe, const TableFn& table,
    std::span<const std::array<double, 4>> points, double fd_step,
    bool parallel) {
  std::vector<double> out(points.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(points.size()); ++i)
      out[i] = structure_residual(coframe, table, points[i], fd_step);
  } else {
    for (std::size_t i = 0; i < points.size(); ++i)
      out[i] = structure_residual(coframe, table, points[i], fd_step);
  }
  return out;
}

}  // namespace subfinsler
