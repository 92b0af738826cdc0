// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace destwalk::plot {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  // Dashed reference line with this slope in plot coordinates (log10 space
  // on log axes), anchored at the median point of the first series.
  std::optional<double> reference_slope;
};

// Renders the series as an SVG line chart. Points with non-positive
// coordinates are dropped on log axes.
void write_svg(const std::filesystem::path& path, const Axes& axes,
               const std::vector<Series>& series);

}  // namespace destwalk::plot
