#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "subfinsler/geodesic.hpp"
#include "subfinsler/profile.hpp"

namespace subfinsler {

/// Thrown for malformed configs (missing keys, unknown keys, bad types);
/// maps to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeodesicSection {
  GeodesicState initial{};
  double step = 1e-3;
  std::optional<double> tolerance;
  double length = 10.0;
};

struct ConjugateSection {
  GeodesicState initial{};
  double step = 1e-3;
  double length = 10.0;
};

struct InvariantsSection {
  int grid = 64;
};

struct VerifySection {
  std::string suite;  // structure | conserved | oracle | dido
  int points = 50;
  double fd_step = 1e-5;
  double tolerance = 0.0;  // 0 means the per-suite default
  double constant_I = 3.0;           // structure suite, constant-I coframe
  std::string coframe_case = "hyperbolic";
};

struct DidoSection {
  std::string mode = "stationarity";  // stationarity | search
  GeodesicState initial{};
  double length = 30.0;
  int perturbations = 20;
  double epsilon = 1e-3;
  double area = 0.0;    // search mode target area
  int nodes = 128;
  int max_iterations = 20000;
};

/// Parsed JSON run configuration.  Every section is optional; commands
/// that need parameters fail with a usage error when their section is
/// missing.  Unknown keys are rejected at every nesting level.
struct RunConfig {
  IndicatrixProfile metric;
  std::uint64_t seed = 0;
  std::optional<GeodesicSection> geodesic;
  std::optional<ConjugateSection> conjugate;
  std::optional<InvariantsSection> invariants;
  std::optional<VerifySection> verify;
  std::optional<DidoSection> dido;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace subfinsler
