#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "rndkit/finance.hpp"

using namespace rndkit;

namespace {

/// Monotone-case series: one up-front investment, nonnegative effects
/// afterwards, total effects above the investment. npv is then strictly
/// decreasing with a unique root.
CashFlowSeries random_monotone_series(std::mt19937& rng) {
    std::uniform_int_distribution<int> period_dist(1, 6);
    std::uniform_real_distribution<double> investment_dist(50.0, 200.0);
    const int periods = period_dist(rng);
    const double investment = investment_dist(rng);

    CashFlowSeries series;
    series.effects.assign(static_cast<std::size_t>(periods) + 1, 0.0);
    series.investments.assign(static_cast<std::size_t>(periods) + 1, 0.0);
    series.investments[0] = investment;

    std::uniform_real_distribution<double> effect_dist(1.0, 80.0);
    double total = 0.0;
    for (int i = 1; i <= periods; ++i) {
        series.effects[static_cast<std::size_t>(i)] = effect_dist(rng);
        total += series.effects[static_cast<std::size_t>(i)];
    }
    // Keep the root comfortably inside the default bracket.
    const double target = investment * std::uniform_real_distribution<double>(1.1, 3.0)(rng);
    for (int i = 1; i <= periods; ++i) {
        series.effects[static_cast<std::size_t>(i)] *= target / total;
    }
    return series;
}

} // namespace

TEST_CASE("undiscounted npv is the plain sum", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    CHECK(npv(series, 0.0) == 10.0);
}

TEST_CASE("single-period npv vanishes at the known rate", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    CHECK(npv(series, 0.10) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("two-period npv matches the hand evaluation", "[finance]") {
    const CashFlowSeries series{{0.0, 60.0, 60.0}, {100.0, 0.0, 0.0}};
    CHECK(npv(series, 0.05) == Catch::Approx(11.564626).margin(1e-6));
}

TEST_CASE("npv rejects rates at or below -1", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    CHECK_THROWS_AS(npv(series, -1.0), RateOutOfDomain);
    CHECK_THROWS_AS(npv(series, -1.5), RateOutOfDomain);
}

TEST_CASE("npv validates series shape", "[finance]") {
    CHECK_THROWS_AS(npv(CashFlowSeries{{1.0}, {}}, 0.0), ValidationError);
    CHECK_THROWS_AS(npv(CashFlowSeries{{}, {}}, 0.0), ValidationError);
}

TEST_CASE("irr solves the single-period case exactly", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    const IrrResult result = irr(series);
    CHECK(result.rate == Catch::Approx(0.10).margin(1e-9));
    CHECK(std::fabs(result.residual_npv) <= 1e-10);
}

TEST_CASE("irr matches the quadratic closed form", "[finance]") {
    const CashFlowSeries series{{0.0, 60.0, 60.0}, {100.0, 0.0, 0.0}};
    // 60x^2 + 60x - 100 = 0 with x = 1/(1+d).
    const double x = (-60.0 + std::sqrt(60.0 * 60.0 + 4.0 * 60.0 * 100.0)) / (2.0 * 60.0);
    const double expected = 1.0 / x - 1.0;
    CHECK(expected == Catch::Approx(0.130662).margin(1e-6));
    const IrrResult result = irr(series);
    CHECK(result.rate == Catch::Approx(expected).margin(1e-6));
}

TEST_CASE("irr reports NoRoot when npv never changes sign", "[finance]") {
    const CashFlowSeries series{{0.0, 0.0, 0.0}, {100.0, 0.0, 0.0}};
    CHECK_THROWS_AS(irr(series), NoRoot);
}

TEST_CASE("irr root property holds on random monotone series", "[finance]") {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 200; ++trial) {
        const CashFlowSeries series = random_monotone_series(rng);
        const IrrResult result = irr(series);
        CHECK(std::fabs(npv(series, result.rate)) <= 1e-8);
        CHECK(result.rate > -1.0);
    }
}

TEST_CASE("irr bounds the acceptable income rate in the monotone case", "[finance]") {
    std::mt19937 rng(6180);
    for (int trial = 0; trial < 100; ++trial) {
        const CashFlowSeries series = random_monotone_series(rng);
        const IrrResult result = irr(series);
        for (double offset : {0.02, 0.2, 1.0}) {
            const double below = result.rate - offset;
            if (below > -0.99) CHECK(npv(series, below) > 0.0);
            CHECK(npv(series, result.rate + offset) < 0.0);
        }
    }
}

TEST_CASE("scaling all flows leaves the irr unchanged", "[finance]") {
    std::mt19937 rng(141421);
    for (int trial = 0; trial < 50; ++trial) {
        const CashFlowSeries series = random_monotone_series(rng);
        const double base = irr(series).rate;
        CashFlowSeries scaled = series;
        const double c = std::uniform_real_distribution<double>(0.2, 40.0)(rng);
        for (double& v : scaled.effects) v *= c;
        for (double& v : scaled.investments) v *= c;
        CHECK(irr(scaled).rate == Catch::Approx(base).margin(1e-9));
    }
}

TEST_CASE("irr validates bracket and tolerance", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    CHECK_THROWS_AS(irr(series, RateBracket{-1.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(irr(series, RateBracket{0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(irr(series, RateBracket{}, 0.0), ValidationError);
}

TEST_CASE("irr respects a custom bracket", "[finance]") {
    const CashFlowSeries series{{0.0, 110.0}, {100.0, 0.0}};
    const IrrResult result = irr(series, RateBracket{0.0, 1.0});
    CHECK(result.rate == Catch::Approx(0.10).margin(1e-9));
    CHECK_THROWS_AS(irr(series, RateBracket{0.5, 1.0}), NoRoot);
}
