#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rndkit/io.hpp"

namespace rndkit::io {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 200.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 48.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string coord(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

std::string number_label(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

std::string escape_text(const std::string& text) {
    std::string out;
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

} // namespace

std::string plot_to_svg(std::span<const std::pair<TimeSeries, TrendResult>> series) {
    if (series.empty()) {
        throw EmptyInput("nothing to plot: no series given");
    }
    for (const auto& [s, trend] : series) {
        validate_series(s);
        if (s.points.size() < 2) {
            throw TooFewPoints("series '" + s.label + "': need at least 2 points to plot");
        }
    }

    double x_lo = series.front().first.points.front().period;
    double x_hi = x_lo;
    double y_lo = series.front().first.points.front().value;
    double y_hi = y_lo;
    for (const auto& [s, trend] : series) {
        for (const TimePoint& pt : s.points) {
            x_lo = std::min(x_lo, static_cast<double>(pt.period));
            x_hi = std::max(x_hi, static_cast<double>(pt.period));
            y_lo = std::min(y_lo, pt.value);
            y_hi = std::max(y_hi, pt.value);
        }
    }
    for (const auto& [s, trend] : series) {
        // Trend endpoints participate in the value range so fitted lines
        // never leave the canvas.
        y_lo = std::min(y_lo, std::min(trend.slope * x_lo + trend.intercept,
                                       trend.slope * x_hi + trend.intercept));
        y_hi = std::max(y_hi, std::max(trend.slope * x_lo + trend.intercept,
                                       trend.slope * x_hi + trend.intercept));
    }
    if (y_hi == y_lo) {
        y_lo -= 1.0;
        y_hi += 1.0;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto map_x = [&](double x) {
        return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w;
    };
    const auto map_y = [&](double y) {
        return kMarginTop + (y_hi - y) / (y_hi - y_lo) * plot_h;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
           "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
           coord(kHeight) + "\">\n";
    svg += "<rect width=\"" + coord(kWidth) + "\" height=\"" + coord(kHeight) +
           "\" fill=\"#ffffff\"/>\n";

    // Axes.
    svg += "<line class=\"axis\" x1=\"" + coord(kMarginLeft) + "\" y1=\"" +
           coord(kMarginTop + plot_h) + "\" x2=\"" + coord(kMarginLeft + plot_w) +
           "\" y2=\"" + coord(kMarginTop + plot_h) + "\" stroke=\"#333333\"/>\n";
    svg += "<line class=\"axis\" x1=\"" + coord(kMarginLeft) + "\" y1=\"" +
           coord(kMarginTop) + "\" x2=\"" + coord(kMarginLeft) + "\" y2=\"" +
           coord(kMarginTop + plot_h) + "\" stroke=\"#333333\"/>\n";

    // Period ticks: every distinct period when few, else an even subsample.
    std::vector<int> periods;
    for (const auto& [s, trend] : series) {
        for (const TimePoint& pt : s.points) periods.push_back(pt.period);
    }
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
    std::vector<int> ticks;
    if (periods.size() <= 12) {
        ticks = periods;
    } else {
        const std::size_t step = (periods.size() + 7) / 8;
        for (std::size_t i = 0; i < periods.size(); i += step) ticks.push_back(periods[i]);
        if (ticks.back() != periods.back()) ticks.push_back(periods.back());
    }
    for (int tick : ticks) {
        const double x = map_x(tick);
        svg += "<line class=\"tick\" x1=\"" + coord(x) + "\" y1=\"" +
               coord(kMarginTop + plot_h) + "\" x2=\"" + coord(x) + "\" y2=\"" +
               coord(kMarginTop + plot_h + 5.0) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + coord(x) + "\" y=\"" + coord(kMarginTop + plot_h + 20.0) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(tick) +
               "</text>\n";
    }

    // Value ticks.
    for (int i = 0; i <= 5; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / 5.0;
        const double y = map_y(v);
        svg += "<line class=\"tick\" x1=\"" + coord(kMarginLeft - 5.0) + "\" y1=\"" +
               coord(y) + "\" x2=\"" + coord(kMarginLeft) + "\" y2=\"" + coord(y) +
               "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + coord(kMarginLeft - 9.0) + "\" y=\"" + coord(y + 4.0) +
               "\" font-size=\"11\" text-anchor=\"end\">" + number_label(v) + "</text>\n";
    }

    svg += "<text x=\"" + coord(kMarginLeft + plot_w / 2.0) + "\" y=\"" +
           coord(kHeight - 10.0) + "\" font-size=\"12\" text-anchor=\"middle\">period"
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + coord(kMarginTop + plot_h / 2.0) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           coord(kMarginTop + plot_h / 2.0) + ")\">value</text>\n";

    std::size_t color = 0;
    for (const auto& [s, trend] : series) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];

        std::string points;
        for (const TimePoint& pt : s.points) {
            if (!points.empty()) points += ' ';
            points += coord(map_x(pt.period)) + "," + coord(map_y(pt.value));
        }
        svg += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(stroke) +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";

        svg += "<line class=\"trend\" stroke=\"" + std::string(stroke) +
               "\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\" x1=\"" + coord(map_x(x_lo)) +
               "\" y1=\"" + coord(map_y(trend.slope * x_lo + trend.intercept)) + "\" x2=\"" +
               coord(map_x(x_hi)) + "\" y2=\"" +
               coord(map_y(trend.slope * x_hi + trend.intercept)) + "\"/>\n";

        const double legend_y = kMarginTop + 16.0 * static_cast<double>(color);
        svg += "<rect x=\"" + coord(kMarginLeft + plot_w + 16.0) + "\" y=\"" +
               coord(legend_y) + "\" width=\"12\" height=\"12\" fill=\"" +
               std::string(stroke) + "\"/>\n";
        svg += "<text x=\"" + coord(kMarginLeft + plot_w + 34.0) + "\" y=\"" +
               coord(legend_y + 10.0) + "\" font-size=\"12\">" + escape_text(s.label) +
               "</text>\n";
        ++color;
    }

    svg += "</svg>\n";
    return svg;
}

void emit_plot(std::span<const std::pair<TimeSeries, TrendResult>> series,
               const std::filesystem::path& path) {
    write_file(path, plot_to_svg(series));
}

} // namespace rndkit::io
