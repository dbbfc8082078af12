#pragma once

#include <string>
#include <vector>

namespace bgl {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Standalone SVG line plot with linear axes, tick labels and a legend.
/// Non-finite points are skipped.
std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::vector<PlotSeries>& series, int width = 640, int height = 400);

}  // namespace bgl
