#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace ogfcli {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;  // skipped where not finite or not positive
};

// Minimal log-log polyline chart (SVG 1.1): two axes, tick labels at the
// corners, one polyline per series.
inline std::string svg_loglog(const std::vector<PlotSeries>& series, const std::string& x_label,
                              const std::string& y_label) {
  const double width = 800, height = 600, ml = 80, mr = 30, mt = 40, mb = 60;
  double x_min = HUGE_VAL, x_max = -HUGE_VAL, y_min = HUGE_VAL, y_max = -HUGE_VAL;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      x_min = std::min(x_min, std::log10(s.x[i]));
      x_max = std::max(x_max, std::log10(s.x[i]));
      y_min = std::min(y_min, std::log10(s.y[i]));
      y_max = std::max(y_max, std::log10(s.y[i]));
    }
  if (!(x_min <= x_max)) { x_min = 0; x_max = 1; }
  if (!(y_min <= y_max)) { y_min = 0; y_max = 1; }
  if (x_max - x_min < 1e-12) x_max = x_min + 1;
  if (y_max - y_min < 1e-12) y_max = y_min + 1;

  auto px = [&](double lx) { return ml + (lx - x_min) / (x_max - x_min) * (width - ml - mr); };
  auto py = [&](double ly) { return height - mb - (ly - y_min) / (y_max - y_min) * (height - mt - mb); };

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << " (log10)</text>\n";
  out << "  <text x=\"20\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
      << (mt + height - mb) / 2 << ")\">" << y_label << " (log10)</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x_min);
  out << "  <text x=\"" << ml << "\" y=\"" << height - mb + 20 << "\" font-size=\"12\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.3g", x_max);
  out << "  <text x=\"" << width - mr - 30 << "\" y=\"" << height - mb + 20
      << "\" font-size=\"12\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.3g", y_min);
  out << "  <text x=\"" << ml - 70 << "\" y=\"" << height - mb << "\" font-size=\"12\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.3g", y_max);
  out << "  <text x=\"" << ml - 70 << "\" y=\"" << mt + 10 << "\" font-size=\"12\">" << buf
      << "</text>\n";

  int ci = 0;
  double ly_label = mt + 10;
  for (const auto& s : series) {
    const char* color = colors[ci % 4];
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      if (!first) out << ' ';
      first = false;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f", px(std::log10(s.x[i])), py(std::log10(s.y[i])));
      out << buf;
    }
    out << "\"/>\n";
    out << "  <text x=\"" << width - mr - 180 << "\" y=\"" << ly_label << "\" fill=\"" << color
        << "\" font-size=\"13\">" << s.label << "</text>\n";
    ly_label += 18;
    ++ci;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ogfcli
