#include "subfinsler/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace subfinsler {

namespace {

const char* kStrokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#8c564b", "#e377c2"};

double round4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace

std::string polyline_svg(
    const std::vector<std::vector<std::array<double, 2>>>& curves,
    const SvgOptions& options) {
  if (curves.empty()) throw std::invalid_argument("no curves to plot");

  double xmin = curves[0][0][0], xmax = xmin;
  double ymin = curves[0][0][1], ymax = ymin;
  for (const auto& curve : curves)
    for (const auto& p : curve) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = std::min(options.width - 2.0 * options.margin,
                                options.height - 2.0 * options.margin) /
                       span;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);

  std::ostringstream os;
  char buf[128];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
     << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
     << options.width << " " << options.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    os << "<polyline fill=\"none\" stroke=\"" << kStrokes[k % 6]
       << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& p : curves[k]) {
      const double u = round4(0.5 * options.width + (p[0] - cx) * scale);
      const double v = round4(0.5 * options.height - (p[1] - cy) * scale);
      std::snprintf(buf, sizeof(buf), "%.4f,%.4f ", u, v);
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::array<double, 2> axonometric_project(const std::array<double, 3>& p) {
  constexpr double az = 30.0 * std::numbers::pi / 180.0;
  constexpr double el = 20.0 * std::numbers::pi / 180.0;
  const double u = -p[0] * std::sin(az) + p[1] * std::cos(az);
  const double v =
      -(p[0] * std::cos(az) + p[1] * std::sin(az)) * std::sin(el) +
      p[2] * std::cos(el);
  return {u, v};
}

}  // namespace subfinsler
