#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "subfinsler/errors.hpp"
#include "subfinsler/invariants.hpp"
#include "subfinsler/profile.hpp"

using namespace subfinsler;

namespace {

constexpr double kPi = std::numbers::pi;

double randers_I(double B, double theta) {
  return 3.0 * B * std::sin(theta) / (2.0 * std::sqrt(1.0 + B * std::cos(theta)));
}

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
    const double minor =
        sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
        sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
        sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
    det += ((c0 % 2) ? -1.0 : 1.0) * m[0][c0] * minor;
  }
  return det;
}

}  // namespace

TEST_CASE("fundamental invariant values") {
  for (double t : {0.0, 0.7, 2.0, 5.1})
    CHECK(heisenberg_I(IndicatrixProfile::flat(), t) == 0.0);

  CHECK(heisenberg_I(IndicatrixProfile::randers(0.5), kPi / 2.0) ==
        doctest::Approx(0.75).epsilon(1e-14));
  for (double t : {0.0, 0.4, 1.3, 3.0, 4.9})
    CHECK(heisenberg_I(IndicatrixProfile::randers(0.5), t) ==
          doctest::Approx(randers_I(0.5, t)).epsilon(1e-13));

  CHECK(std::abs(heisenberg_I(IndicatrixProfile::limacon(), 0.0)) < 1e-14);
}

TEST_CASE("sub-Riemannian detection on the invariant grid") {
  double max_flat = 0.0, max_randers = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double t = 2.0 * kPi * i / 1024;
    max_flat = std::max(max_flat,
                        std::abs(heisenberg_I(IndicatrixProfile::flat(), t)));
    max_randers = std::max(
        max_randers, std::abs(heisenberg_I(IndicatrixProfile::randers(0.3), t)));
  }
  CHECK(max_flat == 0.0);
  CHECK(max_randers > 0.0);
}

TEST_CASE("invariant table derivatives") {
  const auto flat = heisenberg_table(IndicatrixProfile::flat(), 0.0);
  CHECK(flat.I == 0.0);
  CHECK(flat.I_4 == 0.0);
  CHECK(flat.I_44 == 0.0);
  CHECK(flat.K == 0.0);
  CHECK(flat.S2_4 == 0.0);

  const auto randers = heisenberg_table(IndicatrixProfile::randers(0.5), 0.0);
  CHECK(randers.I == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(randers.I_4 == doctest::Approx(0.75).epsilon(1e-13));

  // I_4 and I_44 against finite differences through the fiber coordinate:
  // d/dphi = sqrt(r/(r + r'')) d/dtheta
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const IndicatrixProfile profiles[] = {IndicatrixProfile::randers(0.5),
                                        IndicatrixProfile::limacon()};
  const double h = 1e-6;
  for (const auto& profile : profiles) {
    for (int i = 0; i < 100; ++i) {
      const double t = angle(rng);
      const auto table = heisenberg_table(profile, t);
      const auto d = evaluate_profile(profile, t);
      const double g = std::sqrt(d.r / (d.r + d.r2));
      const double fd_I = g *
                          (heisenberg_I(profile, t + h) -
                           heisenberg_I(profile, t - h)) /
                          (2.0 * h);
      CHECK(table.I_4 == doctest::Approx(fd_I).epsilon(1e-7).scale(1.0));
      const double fd_I4 = g *
                           (heisenberg_table(profile, t + h).I_4 -
                            heisenberg_table(profile, t - h).I_4) /
                           (2.0 * h);
      CHECK(table.I_44 == doctest::Approx(fd_I4).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("adapted coframe at reference points") {
  const auto flat = heisenberg_coframe(IndicatrixProfile::flat(),
                                       {0.0, 0.0, 0.0, 0.0});
  CHECK(flat.forms[0] == std::array<double, 4>{1, 0, 0, 0});
  CHECK(flat.forms[1] == std::array<double, 4>{0, 1, 0, 0});
  CHECK(flat.forms[2] == std::array<double, 4>{0, 0, 1, 0});
  CHECK(flat.forms[3] == std::array<double, 4>{0, 0, 0, 1});

  const auto randers = heisenberg_coframe(IndicatrixProfile::randers(0.5),
                                          {0.0, 0.0, 0.0, 0.0});
  CHECK(randers.forms[0][0] == doctest::Approx(1.5));
  CHECK(randers.forms[0][1] == doctest::Approx(0.0));
  CHECK(randers.forms[1][1] == doctest::Approx(std::sqrt(1.5)));
  CHECK(randers.forms[2][2] == doctest::Approx(std::pow(1.5, 1.5)));
  CHECK(randers.forms[3][3] == doctest::Approx(1.0 / std::sqrt(1.5)));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const auto sample = heisenberg_coframe(
        IndicatrixProfile::limacon(),
        {unit(rng), unit(rng), unit(rng), angle(rng)});
    CHECK(std::abs(det4(sample.forms)) > 1e-6);
  }
}

TEST_CASE("constant-invariant coframes at the origin") {
  const auto hyp = constant_I_coframe(3.0, ConstantICase::hyperbolic,
                                      {0.0, 0.0, 0.0, 0.0});
  const double disc = std::sqrt(5.0);
  const double r1 = 0.5 * (-3.0 + disc), r2 = 0.5 * (-3.0 - disc);
  CHECK(hyp.forms[0][0] == doctest::Approx(1.0));
  CHECK(hyp.forms[0][1] == doctest::Approx(1.0));
  CHECK(hyp.forms[1][0] == doctest::Approx(-r1));
  CHECK(hyp.forms[1][1] == doctest::Approx(-r2));
  CHECK(hyp.forms[2][2] == doctest::Approx(disc));
  CHECK(hyp.forms[3][3] == doctest::Approx(1.0));

  const auto osc = constant_I_coframe(0.0, ConstantICase::oscillatory,
                                      {0.0, 0.0, 0.0, 0.0});
  CHECK(osc.forms[0][0] == doctest::Approx(1.0));
  CHECK(osc.forms[0][1] == doctest::Approx(0.0));
  CHECK(osc.forms[1][1] == doctest::Approx(-1.0));
  CHECK(osc.forms[2][2] == doctest::Approx(-1.0));

  const auto par = constant_I_coframe(2.0, ConstantICase::parabolic_plus,
                                      {0.0, 0.0, 0.0, 0.0});
  CHECK(par.forms[0][0] == doctest::Approx(1.0));
  CHECK(par.forms[1][1] == doctest::Approx(1.0));
  CHECK(par.forms[2][2] == doctest::Approx(1.0));

  CHECK_THROWS_AS(constant_I_coframe(1.0, ConstantICase::hyperbolic,
                                     {0, 0, 0, 0}),
                  CaseMismatch);
  CHECK_THROWS_AS(constant_I_coframe(3.0, ConstantICase::oscillatory,
                                     {0, 0, 0, 0}),
                  CaseMismatch);
  CHECK_THROWS_AS(constant_I_coframe(1.5, ConstantICase::parabolic_plus,
                                     {0, 0, 0, 0}),
                  CaseMismatch);
}

TEST_CASE("structure equation residuals") {
  const std::array<double, 4> fixed{0.3, -0.2, 0.1, 0.7};
  const auto flat_res = structure_residual(
      [](const std::array<double, 4>& p) {
        return heisenberg_coframe(IndicatrixProfile::flat(), p);
      },
      [](const std::array<double, 4>&) { return InvariantTable{}; }, fixed,
      1e-5);
  CHECK(flat_res < 1e-8);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  const IndicatrixProfile profiles[] = {
      IndicatrixProfile::flat(), IndicatrixProfile::randers(0.5),
      IndicatrixProfile::limacon(),
      IndicatrixProfile::fourier({1.0, 0.05, 0.02}, {0.03, 0.01})};
  for (const auto& profile : profiles) {
    for (int i = 0; i < 50; ++i) {
      const std::array<double, 4> point{unit(rng), unit(rng), unit(rng),
                                        angle(rng)};
      const double res = structure_residual(
          [&](const std::array<double, 4>& p) {
            return heisenberg_coframe(profile, p);
          },
          [&](const std::array<double, 4>& p) {
            return heisenberg_table(profile, p[3]);
          },
          point, 1e-5);
      CHECK(res < 1e-6);
    }
  }
}

TEST_CASE("constant-invariant coframes satisfy the structure equations") {
  struct Entry {
    double I;
    ConstantICase icase;
  };
  const Entry entries[] = {{3.0, ConstantICase::hyperbolic},
                           {-3.0, ConstantICase::hyperbolic},
                           {1.0, ConstantICase::oscillatory},
                           {-1.0, ConstantICase::oscillatory},
                           {0.5, ConstantICase::oscillatory},
                           {2.0, ConstantICase::parabolic_plus},
                           {-2.0, ConstantICase::parabolic_minus}};
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const auto& entry : entries) {
    InvariantTable table;
    table.I = entry.I;
    for (int i = 0; i < 20; ++i) {
      // theta stays local: the normal-form components grow like
      // e^{|I| theta}, so wide sampling only amplifies round-off
      const std::array<double, 4> point{unit(rng), unit(rng), unit(rng),
                                        unit(rng)};
      const double res = structure_residual(
          [&](const std::array<double, 4>& p) {
            return constant_I_coframe(entry.I, entry.icase, p);
          },
          [&](const std::array<double, 4>&) { return table; }, point, 1e-5);
      CHECK(res < 1e-6);
    }
  }
}

TEST_CASE("degenerate coframes are rejected") {
  const auto degenerate = [](const std::array<double, 4>& p) {
    CoframeSample sample;
    sample.point = p;
    sample.forms[0] = {1, 0, 0, 0};
    sample.forms[1] = {1, 0, 0, 0};  // repeated row
    sample.forms[2] = {0, 0, 1, 0};
    sample.forms[3] = {0, 0, 0, 1};
    return sample;
  };
  CHECK_THROWS_AS(
      structure_residual(degenerate,
                         [](const std::array<double, 4>&) {
                           return InvariantTable{};
                         },
                         {0, 0, 0, 0}, 1e-5),
      SingularCoframe);
}
