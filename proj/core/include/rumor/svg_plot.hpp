#pragma once

#include <string>
#include <vector>

namespace rumor {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool markers = false;
};

/// Self-contained SVG line chart with axes, ticks and a legend. Non-finite
/// points are skipped. Output depends only on the input.
std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace rumor
