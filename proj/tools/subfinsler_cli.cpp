// Command-line driver: invariants, geodesics, conjugate points and the
// isoperimetric (Dido) checks for homogeneous sub-Finsler metrics on the
// Heisenberg group.  Exit codes: 0 ok, 1 usage, 2 domain error,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subfinsler/config.hpp"
#include "subfinsler/dido.hpp"
#include "subfinsler/errors.hpp"
#include "subfinsler/geodesic.hpp"
#include "subfinsler/invariants.hpp"
#include "subfinsler/jacobi.hpp"
#include "subfinsler/profile.hpp"
#include "subfinsler/svg.hpp"

namespace fs = std::filesystem;
using namespace subfinsler;

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  bool svg = false;
  std::optional<std::uint64_t> seed;
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  std::ofstream out(path);
  out << content;
}

std::uint64_t effective_seed(const Options& opt, const RunConfig& cfg) {
  return opt.seed ? *opt.seed : cfg.seed;
}

int cmd_invariants(const Options& opt, const RunConfig& cfg) {
  const int grid = cfg.invariants ? cfg.invariants->grid : 64;
  const auto convexity = check_strong_convexity(cfg.metric, std::max(grid, 16));
  if (!convexity.ok) {
    std::fprintf(stderr,
                 "convexity failure: r(r + r'') = %.6g at theta = %.6g\n",
                 convexity.min_value, convexity.argmin);
    return 2;
  }
  std::string csv = "theta,I,I4\n";
  char buf[128];
  std::printf("%12s %14s %14s\n", "theta", "I", "I4");
  for (int i = 0; i < grid; ++i) {
    const double theta = 2.0 * kPi * i / grid;
    const InvariantTable table = heisenberg_table(cfg.metric, theta);
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", theta, table.I,
                  table.I_4);
    csv += buf;
    std::printf("%12.6f %14.6g %14.6g\n", theta, table.I, table.I_4);
  }
  std::printf("convexity: ok, min r(r+r'') = %.10g at theta = %.6f\n",
              convexity.min_value, convexity.argmin);
  std::printf("fiber average of I: %.3e\n", rund_average(cfg.metric));
  write_file(fs::path(opt.out_dir) / "invariants.csv", csv);
  return 0;
}

int cmd_geodesic(const Options& opt, const RunConfig& cfg) {
  if (!cfg.geodesic) {
    std::fprintf(stderr, "config has no \"geodesic\" section\n");
    return 1;
  }
  const auto& sec = *cfg.geodesic;
  IntegratorSettings settings;
  settings.step = sec.step;
  settings.tolerance = sec.tolerance;
  settings.max_arclength = sec.length;
  const GeodesicTrace trace = integrate(cfg.metric, sec.initial, settings);
  write_file(fs::path(opt.out_dir) / "trace.csv", trace_to_csv(trace));
  std::printf("integrated %zu samples over arc length %.6g\n",
              trace.samples.size(), sec.length);
  std::printf("conserved drift: %.3e\n", trace.conserved_drift);
  if (opt.svg) {
    std::vector<std::array<double, 2>> xy, axo;
    xy.reserve(trace.samples.size());
    for (const auto& st : trace.samples) {
      xy.push_back({st.x, st.y});
      axo.push_back(axonometric_project({st.x, st.y, st.z}));
    }
    write_file(fs::path(opt.out_dir) / "geodesic_xy.svg", polyline_svg({xy}));
    write_file(fs::path(opt.out_dir) / "geodesic_xyz.svg",
               polyline_svg({axo}));
  }
  return 0;
}

int cmd_conjugate(const Options& opt, const RunConfig& cfg) {
  if (!cfg.conjugate) {
    std::fprintf(stderr, "config has no \"conjugate\" section\n");
    return 1;
  }
  const auto& sec = *cfg.conjugate;
  IntegratorSettings settings;
  settings.step = sec.step;
  settings.max_arclength = sec.length;
  const GeodesicTrace trace = integrate(cfg.metric, sec.initial, settings);
  const JacobiCoefficients coeffs = jacobi_coefficients(cfg.metric, trace);
  const auto points = conjugate_points(coeffs, sec.length);
  for (const auto& p : points)
    std::printf("conjugate point c = %.10g, multiplicity %d\n", p.c,
                p.multiplicity);
  int index = 0;
  for (const auto& p : points) index += p.multiplicity;
  std::printf("index over (0, %.6g): %d\n", sec.length, index);
  write_file(fs::path(opt.out_dir) / "conjugate.csv",
             conjugate_points_to_csv(points));
  return 0;
}

ConstantICase parse_case(const std::string& name) {
  if (name == "hyperbolic") return ConstantICase::hyperbolic;
  if (name == "oscillatory") return ConstantICase::oscillatory;
  if (name == "parabolic_plus") return ConstantICase::parabolic_plus;
  if (name == "parabolic_minus") return ConstantICase::parabolic_minus;
  throw ConfigError("unknown coframe case \"" + name + "\"");
}

int verify_structure(const RunConfig& cfg, const VerifySection& sec,
                     std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  double worst = 0.0;
  for (int i = 0; i < sec.points; ++i) {
    const std::array<double, 4> point{unit(rng), unit(rng), unit(rng),
                                      angle(rng)};
    const double res_h = structure_residual(
        [&](const std::array<double, 4>& p) {
          return heisenberg_coframe(cfg.metric, p);
        },
        [&](const std::array<double, 4>& p) {
          return heisenberg_table(cfg.metric, p[3]);
        },
        point, sec.fd_step);
    const ConstantICase icase = parse_case(sec.coframe_case);
    InvariantTable const_table;
    const_table.I = sec.constant_I;
    // the constant-I coframes are micro-local normal forms whose
    // components grow like e^{|I| theta}; sample them on a local window
    const std::array<double, 4> local{point[0], point[1], point[2],
                                      unit(rng)};
    const double res_c = structure_residual(
        [&](const std::array<double, 4>& p) {
          return constant_I_coframe(sec.constant_I, icase, p);
        },
        [&](const std::array<double, 4>&) { return const_table; }, local,
        sec.fd_step);
    worst = std::max({worst, res_h, res_c});
  }
  std::printf("structure residual max over %d points: %.3e (tol %.1e)\n",
              sec.points, worst, tol);
  return worst < tol ? 0 : 3;
}

int verify_conserved(const RunConfig& cfg, const VerifySection& sec,
                     std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> mult(0.1, 1.0);
  double worst = 0.0;
  IntegratorSettings settings;
  settings.step = 1e-3;
  settings.max_arclength = 20.0;
  for (int i = 0; i < std::max(1, sec.points / 10); ++i) {
    GeodesicState initial;
    initial.theta = angle(rng);
    initial.lambda = mult(rng);
    worst = std::max(worst,
                     integrate(cfg.metric, initial, settings).conserved_drift);
  }
  std::printf("max conserved-quantity drift: %.3e (tol %.1e)\n", worst, tol);
  return worst < tol ? 0 : 3;
}

int verify_oracle(const RunConfig& cfg, const VerifySection& sec, double tol) {
  // closed-form projections against direct integration, reparametrized by
  // the fiber angle
  double worst = 0.0;
  const bool limacon = cfg.metric.kind == ProfileKind::limacon;
  const double lambda0 = limacon ? 1.0 : 0.3;
  for (const double theta0 : {0.0, kPi / 2.0, kPi}) {
    GeodesicState initial;
    initial.theta = theta0;
    initial.lambda = lambda0;
    IntegratorSettings settings;
    settings.step = 1e-3;
    settings.max_arclength = 30.0;
    const GeodesicTrace trace = integrate(cfg.metric, initial, settings);
    for (const auto& st : trace.samples) {
      if (st.theta > theta0 + 2.0 * kPi) break;
      if (limacon) {
        const auto xy = limacon_closed_form({0, 0, theta0, lambda0}, st.theta);
        worst = std::max({worst, std::abs(st.x - xy[0]), std::abs(st.y - xy[1])});
      } else {
        const auto xyz = randers_closed_form(cfg.metric.B,
                                             {0, 0, 0, theta0, lambda0},
                                             st.theta);
        worst = std::max({worst, std::abs(st.x - xyz[0]),
                          std::abs(st.y - xyz[1]), std::abs(st.z - xyz[2])});
      }
    }
  }
  (void)sec;
  std::printf("closed form vs integration max deviation: %.3e (tol %.1e)\n",
              worst, tol);
  return worst < tol ? 0 : 3;
}

int verify_dido(const RunConfig& cfg, std::uint64_t seed, double tol) {
  if (!cfg.dido) {
    std::fprintf(stderr, "dido suite needs a \"dido\" section\n");
    return 1;
  }
  const auto& d = *cfg.dido;
  IntegratorSettings settings;
  settings.step = 1e-3;
  settings.max_arclength = d.length;
  const GeodesicTrace trace = integrate(cfg.metric, d.initial, settings);
  const auto report =
      dido_stationarity(cfg.metric, trace, d.perturbations, d.epsilon, seed);
  std::printf("max first-order length defect: %.3e (tol %.1e)\n",
              report.max_first_order_defect, tol);
  return report.max_first_order_defect < tol ? 0 : 3;
}

int cmd_verify(const Options& opt, const RunConfig& cfg) {
  if (!cfg.verify) {
    std::fprintf(stderr, "config has no \"verify\" section\n");
    return 1;
  }
  const auto& sec = *cfg.verify;
  const std::uint64_t seed = effective_seed(opt, cfg);
  if (sec.suite == "structure")
    return verify_structure(cfg, sec,
                            seed, sec.tolerance > 0 ? sec.tolerance : 1e-6);
  if (sec.suite == "conserved")
    return verify_conserved(cfg, sec, seed,
                            sec.tolerance > 0 ? sec.tolerance : 1e-8);
  if (sec.suite == "oracle")
    return verify_oracle(cfg, sec, sec.tolerance > 0 ? sec.tolerance : 1e-6);
  if (sec.suite == "dido")
    return verify_dido(cfg, seed, sec.tolerance > 0 ? sec.tolerance : 1e-3);
  std::fprintf(stderr, "unknown verify suite \"%s\"\n", sec.suite.c_str());
  return 1;
}

int cmd_dido(const Options& opt, const RunConfig& cfg) {
  if (!cfg.dido) {
    std::fprintf(stderr, "config has no \"dido\" section\n");
    return 1;
  }
  const auto& d = *cfg.dido;
  const std::uint64_t seed = effective_seed(opt, cfg);
  if (d.mode == "stationarity") {
    IntegratorSettings settings;
    settings.step = 1e-3;
    settings.max_arclength = d.length;
    const GeodesicTrace trace = integrate(cfg.metric, d.initial, settings);
    const auto loop = closed_projection_polygon(trace, d.nodes);
    const auto report =
        dido_stationarity(cfg.metric, loop, d.perturbations, d.epsilon, seed);
    std::printf("loop area %.10g, length %.10g\n", loop.signed_area(),
                finsler_length(cfg.metric, loop));
    std::printf("max first-order length defect: %.3e\n",
                report.max_first_order_defect);
    write_file(fs::path(opt.out_dir) / "loop.csv", loop.to_csv());
    if (opt.svg)
      write_file(fs::path(opt.out_dir) / "loop.svg", polyline_svg({loop.nodes}));
    return 0;
  }
  if (d.mode == "search") {
    if (d.area <= 0.0) {
      std::fprintf(stderr, "search mode requires a positive \"area\"\n");
      return 1;
    }
    const auto result =
        dido_direct_search(cfg.metric, d.area, d.nodes, d.max_iterations);
    std::printf("optimized length %.10g after %d iterations (%s)\n",
                result.length, result.iterations,
                result.converged ? "converged" : "iteration cap");
    write_file(fs::path(opt.out_dir) / "loop.csv", result.path.to_csv());
    if (opt.svg)
      write_file(fs::path(opt.out_dir) / "loop.svg",
                 polyline_svg({result.path.nodes}));
    return 0;
  }
  std::fprintf(stderr, "unknown dido mode \"%s\"\n", d.mode.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Finsler geometry engine for the Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;
  app.add_option("--config", opt.config_path, "JSON config path")
      ->required();
  app.add_flag("--svg", opt.svg, "emit SVG plots next to the CSV output");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--seed", seed_flag, "override the config RNG seed")
      ->each([&](const std::string&) { seed_given = true; });

  auto* sub_inv = app.add_subcommand("invariants", "invariant report");
  auto* sub_geo = app.add_subcommand("geodesic", "integrate a geodesic");
  auto* sub_con = app.add_subcommand("conjugate", "conjugate points, index");
  auto* sub_ver = app.add_subcommand("verify", "run a check suite");
  auto* sub_did = app.add_subcommand("dido", "isoperimetric checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }
  if (seed_given) opt.seed = seed_flag;

  try {
    const RunConfig cfg = load_config(opt.config_path);
    if (sub_inv->parsed()) return cmd_invariants(opt, cfg);
    if (sub_geo->parsed()) return cmd_geodesic(opt, cfg);
    if (sub_con->parsed()) return cmd_conjugate(opt, cfg);
    if (sub_ver->parsed()) return cmd_verify(opt, cfg);
    if (sub_did->parsed()) return cmd_dido(opt, cfg);
    return 1;
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return 1;
  } catch (const DomainError& err) {
    std::fprintf(stderr, "domain error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
}
