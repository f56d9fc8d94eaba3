#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "rndkit/scheduler.hpp"
#include "support/test_support.hpp"

using namespace rndkit;
using testsupport::plan_cost;
using testsupport::random_instance;
using testsupport::reference_value_to_go;
using testsupport::SchedulerInstance;

namespace {

LossModel default_loss(double available) {
    LossModel loss;
    loss.available = available;
    loss.penalty_coefficient = 1.0;
    return loss;
}

} // namespace

TEST_CASE("stage cost of an empty selection at state zero is zero", "[scheduler]") {
    const LossModel loss = default_loss(5.0);
    CHECK(stage_cost({}, 0.0, 1, loss) == 0.0);
    CHECK(stage_cost({}, 0.0, 3, loss) == 0.0);
}

TEST_CASE("on-time program within the available resources costs nothing", "[scheduler]") {
    const LossModel loss = default_loss(5.0);
    const std::vector<Program> selection{{"P1", 4.0, 1, 2, 3.0, ""}};
    CHECK(stage_cost(selection, 0.0, 2, loss) == 0.0);
    CHECK(stage_cost(selection, 1.0, 1, loss) == 0.0);
}

TEST_CASE("late program plus overuse matches the hand evaluation", "[scheduler]") {
    // One stage late at rate 5, usage 7 against 5 available, quadratic
    // coefficient 1: 5 + (7-5)^2 = 9.
    const LossModel loss = default_loss(5.0);
    const std::vector<Program> selection{{"P1", 7.0, 1, 1, 5.0, ""}};
    CHECK(stage_cost(selection, 0.0, 2, loss) == 9.0);
}

TEST_CASE("penalty forms differ on under-use and overuse shape", "[scheduler]") {
    LossModel loss = default_loss(5.0);
    const std::vector<Program> selection{{"P1", 2.0, 1, 3, 1.0, ""}};

    loss.penalty_form = PenaltyForm::quadratic_overuse;
    CHECK(stage_cost(selection, 0.0, 1, loss) == 0.0);

    loss.penalty_form = PenaltyForm::linear_overuse;
    CHECK(stage_cost(selection, 5.0, 1, loss) == 2.0);

    loss.penalty_form = PenaltyForm::symmetric_quadratic;
    CHECK(stage_cost(selection, 0.0, 1, loss) == 9.0);  // (2-5)^2
}

TEST_CASE("quadratic tardiness squares the delay", "[scheduler]") {
    LossModel loss = default_loss(100.0);
    loss.tardiness_form = TardinessForm::quadratic;
    const std::vector<Program> selection{{"P1", 0.0, 2, 1, 3.0, ""}};
    // Starts at stage 2, duration 2 -> completes at 3, due 1 -> 2 late.
    CHECK(stage_cost(selection, 0.0, 2, loss) == 12.0);
}

TEST_CASE("carryover is zero when nothing continues", "[scheduler]") {
    const ResourceGrid grid = build_resource_grid(10.0, 1.0);
    const std::vector<Program> selection{{"A", 3.0, 1, 1, 0.0, ""},
                                         {"B", 2.0, 1, 2, 0.0, ""}};
    CHECK(carryover(selection, 1, grid) == 0.0);
}

TEST_CASE("single continuing demand passes through on a unit grid", "[scheduler]") {
    const ResourceGrid grid = build_resource_grid(10.0, 1.0);
    const std::vector<Program> selection{{"A", 3.0, 2, 2, 0.0, ""}};
    CHECK(carryover(selection, 1, grid) == 3.0);
}

TEST_CASE("carryover rounds continuing demand to the nearest state", "[scheduler]") {
    const ResourceGrid grid = build_resource_grid(8.0, 4.0);
    const std::vector<Program> selection{{"A", 3.0, 2, 2, 0.0, ""},
                                         {"B", 2.0, 3, 2, 0.0, ""}};
    CHECK(carryover(selection, 1, grid) == 4.0);  // nearest state to 5
}

TEST_CASE("empty instance solves to a zero objective", "[scheduler]") {
    const auto horizon = make_horizon(6.0, 3);
    const auto grid = build_resource_grid(4.0, 2.0);
    const StrategyMatrix matrix = optimize_schedule({}, horizon, default_loss(4.0), grid);
    CHECK(matrix.optimal_objective == 0.0);
    CHECK(matrix.plan.size() == 3);
    for (const StageSelection& sel : matrix.plan) {
        CHECK(sel.program_ids.empty());
        CHECK(sel.carryover_out == 0.0);
    }
    CHECK(matrix.entries.size() == 3);
    for (const auto& row : matrix.entries) CHECK(row.size() == grid.states.size());
}

TEST_CASE("a placeable program at its due stage costs nothing", "[scheduler]") {
    const auto horizon = make_horizon(6.0, 3);
    const auto grid = build_resource_grid(6.0, 2.0);
    const std::vector<Program> programs{{"P1", 4.0, 1, 2, 5.0, ""}};
    const StrategyMatrix matrix =
        optimize_schedule(programs, horizon, default_loss(5.0), grid);
    CHECK(matrix.optimal_objective == 0.0);
    CHECK(matrix.optimal_objective == matrix.at(1, 0).value_to_go);
}

TEST_CASE("program longer than the horizon is infeasible", "[scheduler]") {
    const auto horizon = make_horizon(4.0, 2);
    const auto grid = build_resource_grid(4.0, 2.0);
    const std::vector<Program> programs{{"P1", 1.0, 3, 2, 1.0, ""}};
    CHECK_THROWS_AS(optimize_schedule(programs, horizon, default_loss(4.0), grid),
                    Infeasible);
    CHECK_THROWS_AS(brute_force_schedule(programs, horizon, default_loss(4.0), grid),
                    Infeasible);
}

TEST_CASE("horizon without stages is rejected", "[scheduler]") {
    const PlanningHorizon empty{0.0, 0, 0.0};
    const auto grid = build_resource_grid(4.0, 2.0);
    CHECK_THROWS_AS(optimize_schedule({}, empty, default_loss(4.0), grid), EmptyHorizon);
}

TEST_CASE("brute force tie breaks to the earliest stage", "[scheduler]") {
    const auto horizon = make_horizon(4.0, 2);
    const auto grid = build_resource_grid(4.0, 2.0);
    // Due at the final stage with zero demand: both stages cost zero.
    const std::vector<Program> programs{{"P1", 0.0, 1, 2, 5.0, ""}};
    const StrategyMatrix matrix =
        brute_force_schedule(programs, horizon, default_loss(4.0), grid);
    CHECK(matrix.optimal_objective == 0.0);
    CHECK(matrix.plan[0].program_ids == std::vector<std::string>{"P1"});
    CHECK(matrix.plan[1].program_ids.empty());

    const StrategyMatrix dp = optimize_schedule(programs, horizon, default_loss(4.0), grid);
    CHECK(dp.plan == matrix.plan);
}

TEST_CASE("brute force guard rejects oversized instances", "[scheduler]") {
    const auto horizon = make_horizon(12.0, 3);
    const auto grid = build_resource_grid(2.0, 1.0);
    std::vector<Program> programs;
    for (int i = 0; i < 9; ++i) {
        programs.push_back({"P" + std::string(1, static_cast<char>('A' + i)), 1.0, 1, 1,
                            1.0, ""});
    }
    CHECK_THROWS_AS(brute_force_schedule(programs, horizon, default_loss(2.0), grid),
                    TooLarge);
    const auto tall_horizon = make_horizon(12.0, 6);
    CHECK_THROWS_AS(brute_force_schedule({}, tall_horizon, default_loss(2.0), grid),
                    TooLarge);
}

TEST_CASE("dynamic program matches exhaustive search on random instances", "[scheduler]") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const SchedulerInstance instance = random_instance(rng);
        const StrategyMatrix dp =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);
        const StrategyMatrix exhaustive =
            brute_force_schedule(instance.programs, instance.horizon, instance.loss,
                                 instance.grid);

        REQUIRE(dp.optimal_objective == exhaustive.optimal_objective);
        CHECK(dp.plan == exhaustive.plan);
        CHECK(dp.pending_by_stage == exhaustive.pending_by_stage);
        CHECK(dp.entries == exhaustive.entries);

        const double dp_cost = plan_cost(instance, dp.plan);
        const double bf_cost = plan_cost(instance, exhaustive.plan);
        CHECK(dp_cost == bf_cost);
        CHECK(std::abs(dp_cost - dp.optimal_objective) <= 1e-9);
    }
}

TEST_CASE("every matrix entry satisfies the scheduling recurrence", "[scheduler]") {
    std::mt19937 rng(515);
    for (int trial = 0; trial < 8; ++trial) {
        const SchedulerInstance instance = random_instance(rng, 4, 3, 5);
        const StrategyMatrix matrix =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);
        for (int stage = 1; stage <= matrix.stage_count; ++stage) {
            const auto& pending = matrix.pending_by_stage[stage - 1];
            for (std::size_t s = 0; s < matrix.states.size(); ++s) {
                const double expected =
                    reference_value_to_go(instance, stage, matrix.states[s], pending);
                CHECK(std::abs(matrix.at(stage, s).value_to_go - expected) <= 1e-9);
            }
        }
    }
}

TEST_CASE("each program starts exactly once along the plan", "[scheduler]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const SchedulerInstance instance = random_instance(rng);
        const StrategyMatrix matrix =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);
        std::vector<std::string> started;
        for (const StageSelection& sel : matrix.plan) {
            for (const std::string& id : sel.program_ids) started.push_back(id);
        }
        std::sort(started.begin(), started.end());
        std::vector<std::string> expected;
        for (const Program& p : instance.programs) expected.push_back(p.id);
        std::sort(expected.begin(), expected.end());
        CHECK(started == expected);
        CHECK(matrix.plan.back().carryover_out == 0.0);
    }
}

TEST_CASE("adding a program never lowers the objective under overuse penalties",
          "[scheduler]") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        SchedulerInstance instance = random_instance(rng, 4, 4, 5, /*overuse_only=*/true);
        const double base =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid)
                .optimal_objective;
        Program extra{"PZ", 2.0, 1, 1, 2.5, ""};
        extra.due_stage =
            std::uniform_int_distribution<int>(1, instance.horizon.stage_count)(rng);
        instance.programs.push_back(extra);
        const double grown =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid)
                .optimal_objective;
        CHECK(grown >= base);
    }
}

TEST_CASE("scaling all loss rates scales the objective and keeps the plan",
          "[scheduler]") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        SchedulerInstance instance = random_instance(rng);
        const StrategyMatrix base =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);

        const double factors[] = {2.0, 0.5, 4.0};
        const double c = factors[std::uniform_int_distribution<int>(0, 2)(rng)];
        SchedulerInstance scaled = instance;
        for (Program& p : scaled.programs) p.tardiness_rate *= c;
        scaled.loss.penalty_coefficient *= c;
        const StrategyMatrix result =
            optimize_schedule(scaled.programs, scaled.horizon, scaled.loss, scaled.grid);

        CHECK(result.optimal_objective ==
              Catch::Approx(c * base.optimal_objective).margin(1e-12));
        CHECK(result.plan == base.plan);
    }
}

TEST_CASE("identical inputs produce identical matrices", "[scheduler]") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        const SchedulerInstance instance = random_instance(rng);
        const StrategyMatrix first =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);
        const StrategyMatrix second =
            optimize_schedule(instance.programs, instance.horizon, instance.loss,
                              instance.grid);
        CHECK(first == second);
    }
}
