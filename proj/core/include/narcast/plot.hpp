#pragma once

#include "narcast/metrics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace narcast {

/// One polyline on a chart. `x_offset` shifts the series along the
/// shared x axis (used to start a forecast where the observations end).
struct PlotSeries {
    std::string label;
    std::string color; // CSS color
    std::size_t x_offset = 0;
    std::vector<double> values;
};

/// Line chart over a shared categorical x axis (one slot per index).
struct LineChart {
    std::string title;
    std::string y_label;
    std::vector<std::string> x_tick_labels; // one per x slot; renderer thins them
    std::vector<PlotSeries> series;
};

/// Deterministic standalone SVG document: identical charts render to
/// byte-identical text.
std::string render_line_chart(const LineChart& chart);

/// Stem plot of autocorrelation coefficients with the +-confidence
/// bound drawn as dashed lines.
std::string render_acf_chart(const AcfReport& acf, const std::string& title);

} // namespace narcast
