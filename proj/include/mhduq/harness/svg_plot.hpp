#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mhduq::harness {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 440;
};

/// Static SVG line chart with axes, ticks and a legend.
std::string line_chart_svg(const std::vector<Series>& series, const PlotOptions& options);
void write_line_chart(const std::filesystem::path& path, const std::vector<Series>& series, const PlotOptions& options);

}  // namespace mhduq::harness
