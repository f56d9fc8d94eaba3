#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rndkit/errors.hpp"

namespace rndkit {

struct TimePoint {
    int period = 0;
    double value = 0.0;

    bool operator==(const TimePoint&) const = default;
};

/// Observations over strictly increasing periods.
struct TimeSeries {
    std::string label;
    std::vector<TimePoint> points;

    bool operator==(const TimeSeries&) const = default;
};

void validate_series(const TimeSeries& series);

struct TrendResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;

    bool operator==(const TrendResult&) const = default;
};

/// Rescales values to [0,1] by the series range; the minimum maps to 0 and
/// the maximum to 1. Throws DegenerateRange for a constant (zero-range)
/// series.
TimeSeries min_max_normalize(const TimeSeries& series);

/// Ordinary least squares fit value = slope * period + intercept, with the
/// coefficient of determination. A perfectly fit constant series reports
/// r_squared = 1.
TrendResult linear_trend(const TimeSeries& series);

/// One (label, trend) row per series, input order preserved.
std::vector<std::pair<std::string, TrendResult>> growth_report(
    std::span<const TimeSeries> table);

} // namespace rndkit
