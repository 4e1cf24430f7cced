#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rheaom {

// Self-contained SVG line plot: one polyline per series, each scaled to its
// own min/max with the range shown in the legend.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace rheaom
