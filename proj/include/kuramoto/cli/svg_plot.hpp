#pragma once

#include "kuramoto/analysis.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kuramoto::cli {

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string y_label;
    bool log_y = false;
    std::vector<double> x;
    std::vector<PlotSeries> series;
    std::optional<TimeWindow> window;  ///< restrict to begin <= x <= end
    std::size_t width = 800;
    std::size_t height = 480;
};

/// Static line plot. Long series are decimated to a min/max pair per pixel column,
/// so spikes survive. On a log axis non-positive values break the line.
[[nodiscard]] std::string render_svg(const PlotSpec& spec);

}  // namespace kuramoto::cli
