#ifndef QOBJEX_SVG_HPP
#define QOBJEX_SVG_HPP

// Minimal self-contained SVG line charts.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qobjex {

struct SvgSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;  // (x, y), x sorted
};

struct SvgMarker {
  double x;
  std::string color;
};

struct SvgChart {
  std::string title;
  std::string x_label = "f";
  std::string y_label;
  double x_max = 1.0;
  double y_max = 1.0;
  std::optional<double> threshold;  // horizontal rule
  std::vector<SvgSeries> series;
  std::vector<SvgMarker> markers;   // vertical bars
};

std::string render_svg(const SvgChart& chart);

/// Distinct colours for series i = 0, 1, ...
std::string palette_color(std::size_t i);

}  // namespace qobjex

#endif  // QOBJEX_SVG_HPP
