#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "microgrid/simulation.hpp"

namespace microgrid {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct LineChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<double> reference_y;  // horizontal rule, e.g. the capacity
  std::string reference_label;
};

/// Standalone SVG 1.1 line chart: one polyline per series, linear axes with
/// tick labels, a legend of the series names, and an optional horizontal
/// reference line. Throws ArgumentError when no points are given.
std::string render_line_chart(const std::vector<Series>& series,
                              const LineChartOptions& options = {});

/// Bar chart used for the per-building cut-down view; one rect per value.
std::string render_bar_chart(const std::vector<std::string>& labels,
                             const std::vector<double>& values,
                             const std::string& title = {},
                             const std::string& y_label = {});

enum class ChartKind { demands, prices, totals, cutdown };

/// Chart of one CSV kind built from a record.
std::string render_svg(ChartKind kind, const SimulationRecord& record);

}  // namespace microgrid
