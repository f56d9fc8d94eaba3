#pragma once

#include <cmath>
#include <random>

#include "rndkit/io.hpp"
#include "rndkit/version.hpp"

namespace testsupport {

inline rndkit::io::PlanDocument random_plan_document(std::mt19937& rng) {
    using namespace rndkit;
    io::PlanDocument doc;
    const int stages = std::uniform_int_distribution<int>(1, 5)(rng);
    doc.horizon = make_horizon(std::uniform_real_distribution<double>(1.0, 40.0)(rng),
                               stages);
    doc.grid = build_resource_grid(std::uniform_real_distribution<double>(0.0, 20.0)(rng),
                                   std::uniform_real_distribution<double>(0.4, 3.0)(rng));
    doc.loss_model.tardiness_form = std::bernoulli_distribution(0.5)(rng)
                                        ? TardinessForm::linear
                                        : TardinessForm::quadratic;
    const int penalty = std::uniform_int_distribution<int>(0, 2)(rng);
    doc.loss_model.penalty_form = penalty == 0 ? PenaltyForm::quadratic_overuse
                                : penalty == 1 ? PenaltyForm::linear_overuse
                                               : PenaltyForm::symmetric_quadratic;
    doc.loss_model.penalty_coefficient =
        std::uniform_real_distribution<double>(0.0, 4.0)(rng);
    doc.loss_model.available = std::uniform_real_distribution<double>(0.0, 12.0)(rng);

    const int n = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < n; ++i) {
        Program p;
        p.id = "P" + std::to_string(i);
        p.demand = std::uniform_real_distribution<double>(0.0, 9.0)(rng);
        p.duration_stages = std::uniform_int_distribution<int>(1, stages)(rng);
        p.due_stage = std::uniform_int_distribution<int>(1, stages)(rng);
        p.tardiness_rate = std::uniform_real_distribution<double>(0.0, 7.0)(rng);
        if (std::bernoulli_distribution(0.4)(rng)) p.label = "label " + std::to_string(i);
        doc.programs.push_back(std::move(p));
    }
    return doc;
}

inline rndkit::io::ReportDocument random_report_document(std::mt19937& rng) {
    using namespace rndkit;
    io::ReportDocument report;
    report.metadata.tool_version = RNDKIT_VERSION;
    report.metadata.input_digest = "fnv1a64:0123456789abcdef";
    if (std::bernoulli_distribution(0.3)(rng)) {
        report.metadata.timestamp = "2017-06-15T00:00:00Z";
    }
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: {
        StrategyMatrix m;
        m.stage_count = 2;
        m.states = {0.0, value(rng) * value(rng) + 200.0};
        m.entries = {{StrategyEntry{{"A"}, 0.0, value(rng)},
                      StrategyEntry{{}, 0.0, value(rng)}},
                     {StrategyEntry{{"B"}, m.states[1], value(rng)},
                      StrategyEntry{{"A", "B"}, 0.0, value(rng)}}};
        m.pending_by_stage = {{"A", "B"}, {"B"}};
        m.plan = {StageSelection{1, {"A"}, 0.0}, StageSelection{2, {"B"}, 0.0}};
        m.optimal_objective = m.entries[0][0].value_to_go;
        report.payload = io::PlanReport{std::move(m)};
        break;
    }
    case 1:
        report.payload =
            io::IrrReport{IrrResult{value(rng) / 200.0, value(rng) * 1e-12,
                                    std::uniform_int_distribution<int>(0, 60)(rng)}};
        break;
    case 2: {
        io::RankingReport ranking;
        if (std::bernoulli_distribution(0.7)(rng)) ranking.chosen = "A0";
        const int n = std::uniform_int_distribution<int>(0, 5)(rng);
        for (int i = 0; i < n; ++i) {
            ranking.ranking.emplace_back("A" + std::to_string(i), std::fabs(value(rng)));
        }
        report.payload = std::move(ranking);
        break;
    }
    default: {
        io::TrendReport trend;
        const int n = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int i = 0; i < n; ++i) {
            trend.rows.emplace_back(
                "series " + std::to_string(i),
                TrendResult{value(rng), value(rng),
                            std::uniform_real_distribution<double>(0.0, 1.0)(rng)});
        }
        report.payload = std::move(trend);
        break;
    }
    }
    return report;
}

} // namespace testsupport
