#pragma once

#include <array>
#include <string>
#include <vector>

namespace subfinsler {

struct SvgOptions {
  double width = 640.0;
  double height = 480.0;
  double margin = 40.0;
};

/// Standalone SVG document with one polyline per input curve, scaled
/// uniformly into the viewport.  Coordinates are rounded to 1e-4 of a
/// viewport unit, so rendering is a pure function of the input data.
std::string polyline_svg(
    const std::vector<std::vector<std::array<double, 2>>>& curves,
    const SvgOptions& options = {});

/// Orthographic axonometric projection with fixed view direction
/// (azimuth 30 degrees, elevation 20 degrees).
std::array<double, 2> axonometric_project(const std::array<double, 3>& p);

}  // namespace subfinsler
