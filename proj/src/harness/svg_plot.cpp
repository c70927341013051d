#include "mhduq/harness/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mhduq::harness {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

std::string line_chart_svg(const std::vector<Series>& series, const PlotOptions& o) {
  auto tx = [&](double x) { return o.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return o.log_y ? std::log10(y) : y; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series '" + s.name + "' has mismatched x/y");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((o.log_x && s.x[i] <= 0) || (o.log_y && s.y[i] <= 0) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-300) x1 = x0 + 1;
  if (y1 - y0 < 1e-14 * std::max(1.0, std::abs(y0))) {
    const double pad = std::max(1e-12, 0.05 * std::abs(y0));
    y0 -= pad;
    y1 += pad;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double left = 80, right = 20 + 150, top = 40, bottom = 60;
  const double pw = o.width - left - right, ph = o.height - top - bottom;
  auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.width) + "\" height=\"" +
                    std::to_string(o.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(o.title) + "</text>\n";
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double fx = x0 + (x1 - x0) * k / 5.0, fy = y0 + (y1 - y0) * k / 5.0;
    const double sx = left + pw * k / 5.0, sy = top + ph * (1.0 - k / 5.0);
    const double vx = o.log_x ? std::pow(10.0, fx) : fx, vy = o.log_y ? std::pow(10.0, fy) : fy;
    svg += "<line x1=\"" + num(sx) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(sx) + "\" y2=\"" + num(top + ph + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(sx) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" + num(vx) + "</text>\n";
    svg += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(sy) + "\" x2=\"" + num(left) + "\" y2=\"" + num(sy) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy + 4) + "\" text-anchor=\"end\">" + num(vy) + "</text>\n";
  }
  svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(o.height - 15) + "\" text-anchor=\"middle\">" +
         escape(o.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(o.y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % (sizeof kColors / sizeof *kColors)];
    std::string pts;
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if ((o.log_x && s.x[k] <= 0) || (o.log_y && s.y[k] <= 0) || !std::isfinite(s.y[k])) continue;
      pts += num(px(s.x[k])) + "," + num(py(s.y[k])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = top + 10 + 18.0 * i;
    svg += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + pw + 32) + "\" y2=\"" +
           num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(left + pw + 38) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_line_chart(const std::filesystem::path& path, const std::vector<Series>& series, const PlotOptions& options) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << line_chart_svg(series, options);
}

}  // namespace mhduq::harness
