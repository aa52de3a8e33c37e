#include "narcast/plot.hpp"

#include "narcast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace narcast {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 86.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 64.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Largest {1,2,5}*10^k step that yields at most `max_ticks` intervals.
double nice_step(double range, int max_ticks) {
    if (range <= 0.0) return 1.0;
    const double rough = range / max_ticks;
    const double magnitude = std::pow(10.0, std::floor(std::log10(rough)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * magnitude >= rough) return m * magnitude;
    }
    return 10.0 * magnitude;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1; // plot area in SVG coordinates
    double ymin, ymax;
    std::size_t slots;

    double x_at(double index) const {
        if (slots <= 1) return (x0 + x1) / 2.0;
        return x0 + (x1 - x0) * index / static_cast<double>(slots - 1);
    }
    double y_at(double value) const {
        return y1 - (y1 - y0) * (value - ymin) / (ymax - ymin);
    }
};

void open_svg(std::string& svg, const std::string& title) {
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_tick(kWidth) +
           "\" height=\"" + fmt_tick(kHeight) + "\" viewBox=\"0 0 " + fmt_tick(kWidth) + " " +
           fmt_tick(kHeight) + "\">\n";
    svg += "<rect width=\"" + fmt_tick(kWidth) + "\" height=\"" + fmt_tick(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) +
           "\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">" +
           escape_xml(title) + "</text>\n";
}

void draw_axes(std::string& svg, const Frame& f, const std::string& y_label) {
    // y grid lines and tick labels
    const double step = nice_step(f.ymax - f.ymin, 6);
    const double first = std::ceil(f.ymin / step) * step;
    for (double v = first; v <= f.ymax + 1e-9 * step; v += step) {
        const double y = f.y_at(v);
        svg += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(f.x1) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(f.x0 - 8) + "\" y=\"" + fmt(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
               fmt_tick(v) + "</text>\n";
    }
    // axes
    svg += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(f.y0) + "\" x2=\"" + fmt(f.x0) +
           "\" y2=\"" + fmt(f.y1) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(f.y1) + "\" x2=\"" + fmt(f.x1) +
           "\" y2=\"" + fmt(f.y1) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    if (!y_label.empty()) {
        svg += "<text x=\"20\" y=\"" + fmt((f.y0 + f.y1) / 2) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 20 " +
               fmt((f.y0 + f.y1) / 2) + ")\">" + escape_xml(y_label) + "</text>\n";
    }
}

void draw_x_ticks(std::string& svg, const Frame& f, const std::vector<std::string>& labels) {
    if (labels.empty()) return;
    const std::size_t max_labels = 10;
    const std::size_t stride = std::max<std::size_t>(1, (labels.size() + max_labels - 1) / max_labels);
    for (std::size_t i = 0; i < labels.size(); i += stride) {
        const double x = f.x_at(static_cast<double>(i));
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(f.y1) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(f.y1 + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(f.y1 + 20) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               escape_xml(labels[i]) + "</text>\n";
    }
}

} // namespace

std::string render_line_chart(const LineChart& chart) {
    std::size_t slots = chart.x_tick_labels.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const PlotSeries& s : chart.series) {
        slots = std::max(slots, s.x_offset + s.values.size());
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (slots == 0 || !std::isfinite(lo)) {
        throw InputError("cannot render an empty chart");
    }
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);

    Frame f{kMarginLeft, kWidth - kMarginRight, kMarginTop, kHeight - kMarginBottom,
            lo - pad, hi + pad, slots};
    std::string svg;
    open_svg(svg, chart.title);
    draw_axes(svg, f, chart.y_label);
    draw_x_ticks(svg, f, chart.x_tick_labels);

    double legend_x = f.x0 + 12;
    for (const PlotSeries& s : chart.series) {
        if (s.values.empty()) continue;
        std::string points;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            points += fmt(f.x_at(static_cast<double>(s.x_offset + i))) + "," +
                      fmt(f.y_at(s.values[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
        // legend entry
        svg += "<line x1=\"" + fmt(legend_x) + "\" y1=\"" + fmt(f.y0 - 10) + "\" x2=\"" +
               fmt(legend_x + 22) + "\" y2=\"" + fmt(f.y0 - 10) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"3\"/>\n";
        svg += "<text x=\"" + fmt(legend_x + 28) + "\" y=\"" + fmt(f.y0 - 6) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(s.label) +
               "</text>\n";
        legend_x += 34 + 7.2 * static_cast<double>(s.label.size());
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_acf_chart(const AcfReport& acf, const std::string& title) {
    if (acf.coefficients.empty()) {
        throw InputError("cannot render an empty autocorrelation report");
    }
    double lo = std::min(0.0, -acf.confidence_bound);
    double hi = std::max(1.0, acf.confidence_bound);
    for (double c : acf.coefficients) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const double pad = 0.08 * (hi - lo);
    Frame f{kMarginLeft, kWidth - kMarginRight, kMarginTop, kHeight - kMarginBottom,
            lo - pad, hi + pad, acf.coefficients.size()};

    std::string svg;
    open_svg(svg, title);
    draw_axes(svg, f, "autocorrelation");
    std::vector<std::string> labels;
    labels.reserve(acf.coefficients.size());
    for (std::size_t k = 0; k < acf.coefficients.size(); ++k) {
        labels.push_back(std::to_string(k));
    }
    draw_x_ticks(svg, f, labels);

    const double zero_y = f.y_at(0.0);
    svg += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(zero_y) + "\" x2=\"" + fmt(f.x1) +
           "\" y2=\"" + fmt(zero_y) + "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    for (double bound : {acf.confidence_bound, -acf.confidence_bound}) {
        const double y = f.y_at(bound);
        svg += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(f.x1) +
               "\" y2=\"" + fmt(y) +
               "\" stroke=\"#cc4444\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (std::size_t k = 0; k < acf.coefficients.size(); ++k) {
        const double x = f.x_at(static_cast<double>(k));
        const double y = f.y_at(acf.coefficients[k]);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(zero_y) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#1f5fa8\" stroke-width=\"2\"/>\n";
        svg += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
               "\" r=\"3\" fill=\"#1f5fa8\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace narcast
