#include "qobjex/svg.hpp"

#include <sstream>

#include "qobjex/serialize.hpp"

namespace qobjex {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string palette_color(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

std::string render_svg(const SvgChart& chart) {
  constexpr double width = 640, height = 420, left = 64, right = 170, top = 40, bottom = 56;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto sx = [&](double x) { return left + pw * x / chart.x_max; };
  auto sy = [&](double y) { return top + ph * (1.0 - y / chart.y_max); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(chart.title) << "</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = chart.x_max * t / 4.0;
    const double yv = chart.y_max * t / 4.0;
    out << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(sx(xv)) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(left + pw) << "\" y2=\""
        << num(sy(yv)) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 16) << "\" text-anchor=\"middle\">"
        << format_real(xv) << "</text>\n";
    out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
        << format_real(yv) << "</text>\n";
  }
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 16) << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(top + ph / 2) << ")\">" << escape(chart.y_label) << "</text>\n";

  if (chart.threshold) {
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(*chart.threshold)) << "\" x2=\"" << num(left + pw)
        << "\" y2=\"" << num(sy(*chart.threshold)) << "\" stroke=\"black\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (const auto& mk : chart.markers) {
    out << "<line x1=\"" << num(sx(mk.x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(sx(mk.x)) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"" << escape(mk.color) << "\" stroke-width=\"1.5\" opacity=\"0.7\"/>\n";
  }
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    out << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6,3\"";
    out << " points=\"";
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      if (j) out << ' ';
      out << num(sx(s.points[j].first)) << ',' << num(sy(s.points[j].second));
    }
    out << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + pw + 36)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6,3\"";
    out << "/>\n";
    out << "<text x=\"" << num(left + pw + 42) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qobjex
