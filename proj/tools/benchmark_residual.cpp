// Timing comparison of the serial and OpenMP structure-residual batch
// kernels on random points of the indicatrix bundle.

#include <array>
#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "subfinsler/invariants.hpp"
#include "subfinsler/profile.hpp"

using namespace subfinsler;

int main(int argc, char** argv) {
  const int count = argc > 1 ? std::atoi(argv[1]) : 2000;
  const IndicatrixProfile profile = IndicatrixProfile::randers(0.5);

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<std::array<double, 4>> points(count);
  for (auto& p : points) p = {unit(rng), unit(rng), unit(rng), angle(rng)};

  const auto coframe = [&](const std::array<double, 4>& p) {
    return heisenberg_coframe(profile, p);
  };
  const auto table = [&](const std::array<double, 4>& p) {
    return heisenberg_table(profile, p[3]);
  };

  auto time_run = [&](bool parallel) {
    const auto start = std::chrono::steady_clock::now();
    const auto residuals =
        structure_residual_batch(coframe, table, points, 1e-5, parallel);
    const auto stop = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    std::printf("%-8s %8.1f ms  max residual %.3e\n",
                parallel ? "openmp" : "serial", ms, worst);
    return ms;
  };

  std::printf("structure residual batch, %d points\n", count);
  const double serial_ms = time_run(false);
  const double parallel_ms = time_run(true);
  std::printf("speedup: %.2fx\n", serial_ms / parallel_ms);
  return 0;
}
