#include "rndkit/finance.hpp"

#include <cmath>

namespace rndkit {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kScanCells = 256;

} // namespace

void validate_cash_flow(const CashFlowSeries& series) {
    if (series.effects.empty() || series.effects.size() != series.investments.size()) {
        throw ValidationError("cash flow needs effects and investments of equal length >= 1");
    }
    for (double v : series.effects) {
        if (!std::isfinite(v)) throw ValidationError("cash flow effects must be finite");
    }
    for (double v : series.investments) {
        if (!std::isfinite(v)) throw ValidationError("cash flow investments must be finite");
    }
}

double npv(const CashFlowSeries& series, double rate) {
    validate_cash_flow(series);
    if (!(rate > -1.0)) {
        throw RateOutOfDomain("discount rate must be > -1, got " + std::to_string(rate));
    }
    double value = 0.0;
    double factor = 1.0;
    for (std::size_t i = 0; i < series.effects.size(); ++i) {
        value += (series.effects[i] - series.investments[i]) / factor;
        factor *= 1.0 + rate;
    }
    return value;
}

IrrResult irr(const CashFlowSeries& series, RateBracket bracket, double tolerance) {
    validate_cash_flow(series);
    if (!(bracket.lo > -1.0) || !(bracket.hi > bracket.lo)) {
        throw ValidationError("irr bracket must satisfy -1 < lo < hi");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("irr tolerance must be > 0");
    }

    const auto f = [&](double rate) { return npv(series, rate); };

    // Scan for the leftmost sign change so multi-root series resolve
    // deterministically to the first root in the bracket.
    double a = bracket.lo;
    double fa = f(a);
    if (std::fabs(fa) <= tolerance) return IrrResult{a, fa, 0};
    double b = a;
    double fb = fa;
    bool bracketed = false;
    for (int cell = 1; cell <= kScanCells; ++cell) {
        b = bracket.lo + (bracket.hi - bracket.lo) * cell / kScanCells;
        fb = f(b);
        if (std::fabs(fb) <= tolerance) return IrrResult{b, fb, 0};
        if ((fa < 0.0) != (fb < 0.0)) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!bracketed) {
        throw NoRoot("npv has no sign change on the bracket [" + std::to_string(bracket.lo) +
                     ", " + std::to_string(bracket.hi) + "]");
    }

    // Bisection keeps the bracket valid; a secant step replaces the midpoint
    // whenever it lands strictly inside.
    for (int iteration = 1; iteration <= kMaxIterations; ++iteration) {
        double x = 0.5 * (a + b);
        if (fb != fa) {
            const double secant = b - fb * (b - a) / (fb - fa);
            if (secant > a && secant < b) x = secant;
        }
        const double fx = f(x);
        if (std::fabs(fx) <= tolerance) {
            return IrrResult{x, fx, iteration};
        }
        if ((fa < 0.0) != (fx < 0.0)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        if (b - a <= 1e-16 * std::max(1.0, std::fabs(a))) {
            // Interval exhausted; report the better endpoint if it qualifies.
            const double best = std::fabs(fa) < std::fabs(fb) ? a : b;
            const double fbest = std::fabs(fa) < std::fabs(fb) ? fa : fb;
            if (std::fabs(fbest) <= tolerance) return IrrResult{best, fbest, iteration};
            break;
        }
    }
    throw IterationLimit("irr did not converge to |npv| <= " + std::to_string(tolerance) +
                         " within " + std::to_string(kMaxIterations) + " iterations");
}

} // namespace rndkit
