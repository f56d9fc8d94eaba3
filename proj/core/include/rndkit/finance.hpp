#pragma once

#include <vector>

#include "rndkit/errors.hpp"

namespace rndkit {

/// Effects R_i and capital investments K_i over periods 0..T. Period 0 is
/// undiscounted.
struct CashFlowSeries {
    std::vector<double> effects;
    std::vector<double> investments;

    int period_count() const { return static_cast<int>(effects.size()) - 1; }

    bool operator==(const CashFlowSeries&) const = default;
};

void validate_cash_flow(const CashFlowSeries& series);

struct IrrResult {
    double rate = 0.0;
    double residual_npv = 0.0;
    int iterations = 0;

    bool operator==(const IrrResult&) const = default;
};

struct RateBracket {
    double lo = -0.99;
    double hi = 10.0;
};

/// Discounted effects minus discounted investments at the given rate.
/// Throws RateOutOfDomain for rate <= -1.
double npv(const CashFlowSeries& series, double rate);

/// Internal rate of return: the discount rate equalizing discounted effects
/// and investments. Finds the leftmost sign change of npv on the bracket and
/// refines it by bisection with secant acceleration until |npv| <= tolerance.
///
/// Series with multiple sign changes may have several roots; only the
/// leftmost root inside the bracket is reported, without detection of the
/// others.
IrrResult irr(const CashFlowSeries& series, RateBracket bracket = {},
              double tolerance = 1e-10);

} // namespace rndkit
