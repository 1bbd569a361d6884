#pragma once

#include <string>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;
};

// Minimal self-contained line plot: axes, decade or nice-step ticks,
// legend, one polyline per series.  Non-finite points break the line.
void write_svg_lineplot(const std::string& path, const SvgPlotSpec& spec);

}  // namespace casimir
