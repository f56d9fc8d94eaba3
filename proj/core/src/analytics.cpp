#include "rndkit/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace rndkit {

void validate_series(const TimeSeries& series) {
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        if (series.points[i].period <= series.points[i - 1].period) {
            throw NonMonotonePeriods("series '" + series.label +
                                     "': periods must be strictly increasing (period " +
                                     std::to_string(series.points[i].period) + ")");
        }
    }
    for (const TimePoint& pt : series.points) {
        if (!std::isfinite(pt.value)) {
            throw ValidationError("series '" + series.label + "': values must be finite");
        }
    }
}

TimeSeries min_max_normalize(const TimeSeries& series) {
    validate_series(series);
    if (series.points.size() < 2) {
        throw DegenerateRange("series '" + series.label +
                              "': need at least 2 points to normalize");
    }
    double lo = series.points.front().value;
    double hi = lo;
    for (const TimePoint& pt : series.points) {
        lo = std::min(lo, pt.value);
        hi = std::max(hi, pt.value);
    }
    if (!(hi > lo)) {
        throw DegenerateRange("series '" + series.label +
                              "': constant values cannot be range-normalized");
    }
    TimeSeries out;
    out.label = series.label;
    out.points.reserve(series.points.size());
    for (const TimePoint& pt : series.points) {
        out.points.push_back(TimePoint{pt.period, (pt.value - lo) / (hi - lo)});
    }
    return out;
}

TrendResult linear_trend(const TimeSeries& series) {
    validate_series(series);
    const std::size_t n = series.points.size();
    if (n < 2) {
        throw TooFewPoints("series '" + series.label + "': need at least 2 points, got " +
                           std::to_string(n));
    }

    // Centered normal equations keep the fit accurate for period values far
    // from zero (calendar years).
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const TimePoint& pt : series.points) {
        mean_x += static_cast<double>(pt.period);
        mean_y += pt.value;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (const TimePoint& pt : series.points) {
        const double dx = static_cast<double>(pt.period) - mean_x;
        const double dy = pt.value - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
    }

    TrendResult trend;
    trend.slope = sxy / sxx;
    trend.intercept = mean_y - trend.slope * mean_x;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (const TimePoint& pt : series.points) {
        const double dx = static_cast<double>(pt.period) - mean_x;
        const double dy = pt.value - mean_y;
        const double residual = dy - trend.slope * dx;
        ss_res += residual * residual;
        ss_tot += dy * dy;
    }
    trend.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    trend.r_squared = std::clamp(trend.r_squared, 0.0, 1.0);
    return trend;
}

std::vector<std::pair<std::string, TrendResult>> growth_report(
    std::span<const TimeSeries> table) {
    std::vector<std::pair<std::string, TrendResult>> rows;
    rows.reserve(table.size());
    for (const TimeSeries& series : table) {
        rows.emplace_back(series.label, linear_trend(series));
    }
    return rows;
}

} // namespace rndkit
