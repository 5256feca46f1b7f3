#include "kuramoto/cli/svg_plot.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace kuramoto::cli {

namespace {

constexpr double kLeft = 80.0, kRight = 160.0, kTop = 40.0, kBottom = 50.0;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Point {
    double x, y;
};

/// Splits into drawable runs, then keeps first/min/max/last per pixel column.
std::vector<std::vector<Point>> decimate(const std::vector<Point>& pts, double x0, double x1, std::size_t columns) {
    std::vector<std::vector<Point>> runs;
    std::vector<Point> run;
    std::vector<Point> bucket;
    long current = -1;

    const auto flush_bucket = [&] {
        if (bucket.empty()) return;
        const auto [lo, hi] = std::minmax_element(bucket.begin(), bucket.end(),
                                                  [](const Point& a, const Point& b) { return a.y < b.y; });
        std::vector<Point> keep{bucket.front(), *lo, *hi, bucket.back()};
        std::sort(keep.begin(), keep.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
        keep.erase(std::unique(keep.begin(), keep.end(),
                               [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
                   keep.end());
        run.insert(run.end(), keep.begin(), keep.end());
        bucket.clear();
    };
    const auto flush_run = [&] {
        flush_bucket();
        if (!run.empty()) runs.push_back(std::move(run));
        run.clear();
        current = -1;
    };

    const double span = x1 > x0 ? x1 - x0 : 1.0;
    for (const Point& p : pts) {
        if (!std::isfinite(p.y)) {
            flush_run();
            continue;
        }
        const long col = static_cast<long>((p.x - x0) / span * static_cast<double>(columns));
        if (col != current) {
            flush_bucket();
            current = col;
        }
        bucket.push_back(p);
    }
    flush_run();
    return runs;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    for (const auto& s : spec.series) {
        if (s.y.size() != spec.x.size()) throw ArgumentError("series '" + s.label + "' length differs from x");
    }
    const double w = static_cast<double>(spec.width), h = static_cast<double>(spec.height);
    const double plot_w = w - kLeft - kRight, plot_h = h - kTop - kBottom;

    // Visible index range and value transform.
    std::size_t first = 0, last = spec.x.size();
    if (spec.window) {
        first = static_cast<std::size_t>(std::lower_bound(spec.x.begin(), spec.x.end(), spec.window->begin) -
                                         spec.x.begin());
        last = static_cast<std::size_t>(std::upper_bound(spec.x.begin(), spec.x.end(), spec.window->end) -
                                        spec.x.begin());
    }
    const auto transform = [&](double v) {
        if (!spec.log_y) return v;
        return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (std::size_t k = first; k < last; ++k) {
        x0 = std::min(x0, spec.x[k]);
        x1 = std::max(x1, spec.x[k]);
        for (const auto& s : spec.series) {
            const double v = transform(s.y[k]);
            if (std::isfinite(v)) {
                y0 = std::min(y0, v);
                y1 = std::max(y1, v);
            }
        }
    }
    const bool has_data = std::isfinite(y0) && std::isfinite(x0);
    if (has_data) {
        if (x1 <= x0) x1 = x0 + 1.0;
        if (y1 - y0 < 1e-300 || y1 <= y0) {
            y0 -= 0.5;
            y1 += 0.5;
        } else {
            const double pad = 0.04 * (y1 - y0);
            y0 -= pad;
            y1 += pad;
        }
    }
    const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
    const auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
           std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(spec.title) + "</text>\n";
    svg += "<rect x=\"" + fmt("%.1f", kLeft) + "\" y=\"" + fmt("%.1f", kTop) + "\" width=\"" + fmt("%.1f", plot_w) +
           "\" height=\"" + fmt("%.1f", plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.1f", h - 12) +
           "\" text-anchor=\"middle\">t</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt("%.1f", kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt("%.1f", kTop + plot_h / 2) + ")\">" + escape(spec.y_label + (spec.log_y ? " (log10)" : "")) +
           "</text>\n";

    if (!has_data) {
        svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.1f", kTop + plot_h / 2) +
               "\" text-anchor=\"middle\">no plottable data</text>\n</svg>\n";
        return svg;
    }

    for (int i = 0; i <= 5; ++i) {
        const double fx = x0 + (x1 - x0) * i / 5.0;
        const double fy = y0 + (y1 - y0) * i / 5.0;
        svg += "<text x=\"" + fmt("%.1f", px(fx)) + "\" y=\"" + fmt("%.1f", kTop + plot_h + 18) +
               "\" text-anchor=\"middle\">" + fmt("%.4g", fx) + "</text>\n";
        const std::string label = spec.log_y ? "1e" + fmt("%.2f", fy) : fmt("%.4g", fy);
        svg += "<text x=\"" + fmt("%.1f", kLeft - 6) + "\" y=\"" + fmt("%.1f", py(fy) + 4) +
               "\" text-anchor=\"end\">" + label + "</text>\n";
        svg += "<line x1=\"" + fmt("%.1f", kLeft) + "\" x2=\"" + fmt("%.1f", kLeft + plot_w) + "\" y1=\"" +
               fmt("%.1f", py(fy)) + "\" y2=\"" + fmt("%.1f", py(fy)) + "\" stroke=\"#e0e0e0\"/>\n";
    }

    const auto columns = static_cast<std::size_t>(plot_w);
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* colour = kPalette[si % kPalette.size()];
        std::vector<Point> pts;
        pts.reserve(last - first);
        for (std::size_t k = first; k < last; ++k) pts.push_back({spec.x[k], transform(s.y[k])});
        for (const auto& run : decimate(pts, x0, x1, columns)) {
            svg += "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"";
            svg += colour;
            svg += "\" points=\"";
            for (const Point& p : run) svg += fmt("%.2f", px(p.x)) + "," + fmt("%.2f", py(p.y)) + " ";
            svg += "\"/>\n";
        }
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(si);
        svg += "<line x1=\"" + fmt("%.1f", kLeft + plot_w + 10) + "\" x2=\"" + fmt("%.1f", kLeft + plot_w + 30) +
               "\" y1=\"" + fmt("%.1f", ly - 4) + "\" y2=\"" + fmt("%.1f", ly - 4) + "\" stroke=\"" + colour +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w + 36) + "\" y=\"" + fmt("%.1f", ly) + "\">" +
               escape(s.label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace kuramoto::cli
