#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "rndkit/core_model.hpp"

using namespace rndkit;

TEST_CASE("resource grid covers multiples up to the cap", "[core_model]") {
    const ResourceGrid grid = build_resource_grid(10.0, 2.0);
    CHECK(grid.states == std::vector<double>{0.0, 2.0, 4.0, 6.0, 8.0, 10.0});
}

TEST_CASE("resource grid degenerates to the origin for p_max 0", "[core_model]") {
    const ResourceGrid grid = build_resource_grid(0.0, 1.0);
    CHECK(grid.states == std::vector<double>{0.0});
}

TEST_CASE("resource grid appends a cap that is not a multiple", "[core_model]") {
    const ResourceGrid grid = build_resource_grid(5.0, 2.0);
    CHECK(grid.states == std::vector<double>{0.0, 2.0, 4.0, 5.0});
}

TEST_CASE("resource grid rejects non-positive steps", "[core_model]") {
    CHECK_THROWS_AS(build_resource_grid(10.0, 0.0), NonPositiveStep);
    CHECK_THROWS_AS(build_resource_grid(10.0, -1.0), NonPositiveStep);
}

TEST_CASE("resource grid invariants hold for random parameters", "[core_model]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> p_max_dist(0.0, 50.0);
    std::uniform_real_distribution<double> step_dist(0.1, 9.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double p_max = p_max_dist(rng);
        const double step = step_dist(rng);
        const ResourceGrid grid = build_resource_grid(p_max, step);

        REQUIRE_FALSE(grid.states.empty());
        CHECK(grid.states.front() == 0.0);
        CHECK(grid.states.back() == p_max);
        for (std::size_t i = 1; i < grid.states.size(); ++i) {
            CHECK(grid.states[i] > grid.states[i - 1]);
            CHECK(grid.states[i] - grid.states[i - 1] <= step + 1e-12);
        }
        for (double s : grid.states) {
            CHECK(s >= 0.0);
            CHECK(s <= p_max);
        }
    }
}

TEST_CASE("grid rounding picks the nearest state, ties toward zero", "[core_model]") {
    const ResourceGrid grid = build_resource_grid(8.0, 4.0);
    CHECK(grid.round_to_state(5.0) == 4.0);
    CHECK(grid.round_to_state(2.0) == 0.0);  // exact tie
    CHECK(grid.round_to_state(6.0) == 4.0);  // exact tie
    CHECK(grid.round_to_state(6.1) == 8.0);
    CHECK(grid.round_to_state(-3.0) == 0.0);
    CHECK(grid.round_to_state(100.0) == 8.0);
    CHECK(grid.state_index(5.0) == 1);
}

TEST_CASE("horizon construction derives the stage length", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(12.0, 4);
    CHECK(horizon.stage_length == 3.0);
    CHECK_NOTHROW(validate_horizon(horizon));
    CHECK_THROWS_AS(make_horizon(12.0, 0), EmptyHorizon);
    CHECK_THROWS_AS(make_horizon(-1.0, 3), ValidationError);
}

TEST_CASE("empty program set validates to itself", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(8.0, 4);
    CHECK(validate_program_set({}, horizon).empty());
}

TEST_CASE("program due stage beyond the horizon is rejected", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(8.0, 4);
    Program p{"P1", 1.0, 1, 5, 0.0, ""};
    CHECK_THROWS_AS(validate_program_set({p}, horizon), InvalidProgram);
    try {
        validate_program_set({p}, horizon);
    } catch (const InvalidProgram& e) {
        CHECK(std::string(e.what()).find("P1") != std::string::npos);
        CHECK(std::string(e.what()).find("due_stage") != std::string::npos);
    }
}

TEST_CASE("duplicate program ids are rejected", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(8.0, 4);
    const Program a{"P1", 1.0, 1, 1, 0.0, ""};
    const Program b{"P1", 2.0, 1, 2, 0.0, ""};
    CHECK_THROWS_AS(validate_program_set({a, b}, horizon), DuplicateId);
}

TEST_CASE("invalid field values are named in the error", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(8.0, 4);
    CHECK_THROWS_AS(validate_program_set({Program{"X", -1.0, 1, 1, 0.0, ""}}, horizon),
                    InvalidProgram);
    CHECK_THROWS_AS(validate_program_set({Program{"X", 1.0, 0, 1, 0.0, ""}}, horizon),
                    InvalidProgram);
    CHECK_THROWS_AS(validate_program_set({Program{"X", 1.0, 1, 1, -2.0, ""}}, horizon),
                    InvalidProgram);
    CHECK_THROWS_AS(validate_program_set({Program{"", 1.0, 1, 1, 0.0, ""}}, horizon),
                    InvalidProgram);
}

TEST_CASE("validation is idempotent", "[core_model]") {
    const PlanningHorizon horizon = make_horizon(8.0, 4);
    const std::vector<Program> programs{{"A", 1.0, 2, 3, 1.5, "alpha"},
                                        {"B", 0.0, 1, 4, 0.0, ""}};
    const auto once = validate_program_set(programs, horizon);
    const auto twice = validate_program_set(once, horizon);
    CHECK(once == programs);
    CHECK(twice == once);
}

TEST_CASE("registry keeps the first operational KPI group", "[core_model]") {
    KpiRegistry registry;
    registry = register_kpi(registry, {"break_even_point", KpiGroup::operational,
                                       "Break-even point", KpiDirection::minimize, "units"});
    registry = register_kpi(registry, {"order_delivery_terms", KpiGroup::operational,
                                       "Order delivery terms", KpiDirection::minimize, "days"});
    registry = register_kpi(registry, {"complaints_count", KpiGroup::operational,
                                       "Number of complaints", KpiDirection::minimize, "count"});
    registry = register_kpi(registry, {"ets_qualification", KpiGroup::operational,
                                       "Qualification of engineering and technical staff",
                                       KpiDirection::maximize, "score"});
    CHECK(registry.size() == 4);
    CHECK(registry.contains("complaints_count"));
    CHECK(registry.find("ets_qualification")->direction == KpiDirection::maximize);
}

TEST_CASE("registry rejects a duplicate id and keeps prior entries", "[core_model]") {
    KpiRegistry registry;
    registry = register_kpi(registry, {"mobility", KpiGroup::organizational, "HTE mobility",
                                       KpiDirection::maximize, "index"});
    CHECK_THROWS_AS(register_kpi(registry, {"mobility", KpiGroup::operational, "again",
                                            KpiDirection::minimize, ""}),
                    DuplicateId);
    CHECK(registry.size() == 1);
    CHECK(registry.find("mobility")->name == "HTE mobility");
}

TEST_CASE("empty registry has size 0", "[core_model]") {
    const KpiRegistry registry;
    CHECK(registry.size() == 0);
    CHECK_FALSE(registry.contains("anything"));
}

TEST_CASE("registry is append-only across many registrations", "[core_model]") {
    std::mt19937 rng(11);
    KpiRegistry registry;
    std::vector<KpiDefinition> added;
    for (int i = 0; i < 40; ++i) {
        KpiDefinition def{"kpi_" + std::to_string(i),
                          std::bernoulli_distribution(0.5)(rng) ? KpiGroup::operational
                                                                : KpiGroup::organizational,
                          "definition " + std::to_string(i),
                          std::bernoulli_distribution(0.5)(rng) ? KpiDirection::maximize
                                                                : KpiDirection::minimize,
                          "unit"};
        registry = register_kpi(registry, def);
        added.push_back(def);
        REQUIRE(registry.size() == added.size());
        for (const KpiDefinition& expected : added) {
            const KpiDefinition* found = registry.find(expected.id);
            REQUIRE(found != nullptr);
            CHECK(*found == expected);
        }
    }
}
