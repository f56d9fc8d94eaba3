#pragma once

#include <span>
#include <string>
#include <vector>

#include "rndkit/core_model.hpp"

namespace rndkit {

/// Programs starting at one stage, plus the resource quantity their
/// continuing members pass into the next stage (already grid-rounded).
struct StageSelection {
    int stage = 0;
    std::vector<std::string> program_ids;  // sorted by id
    double carryover_out = 0.0;

    bool operator==(const StageSelection&) const = default;
};

/// One strategy-matrix cell: the best set of programs to start at this
/// (stage, entering state), its carryover, and the cost-to-go.
struct StrategyEntry {
    std::vector<std::string> program_ids;
    double carryover_out = 0.0;
    double value_to_go = 0.0;

    bool operator==(const StrategyEntry&) const = default;
};

/// Complete planning-strategy matrix over horizon stages x grid states.
///
/// entries[k-1][s] answers: with the programs still unstarted at stage k on
/// the optimal plan (pending_by_stage[k-1]) and the entering resource state
/// states[s], which programs should start now and what does the rest of the
/// horizon cost. plan is the realized optimal path from (stage 1, state 0);
/// optimal_objective equals entries[0][0].value_to_go.
struct StrategyMatrix {
    int stage_count = 0;
    std::vector<double> states;
    std::vector<std::vector<StrategyEntry>> entries;
    std::vector<std::vector<std::string>> pending_by_stage;
    std::vector<StageSelection> plan;
    double optimal_objective = 0.0;

    const StrategyEntry& at(int stage, std::size_t state_index) const;

    bool operator==(const StrategyMatrix&) const = default;
};

/// Loss incurred at one stage by starting `selection` there with `state`
/// resources carried in: tardiness losses of the selected programs plus the
/// resource-deviation penalty on usage = state + sum of selection demands.
double stage_cost(std::span<const Program> selection, double state, int stage,
                  const LossModel& loss);

/// Resources passed to the next stage: the summed demand of selection
/// members whose duration extends past `stage`, rounded to the nearest grid
/// state (ties toward zero).
double carryover(std::span<const Program> selection, int stage, const ResourceGrid& grid);

/// Minimizes total losses over all assignments of programs to start stages
/// by backward induction over (stage, grid state, unstarted set). Carryover
/// into stage 1 and out of the last stage is zero. Equal-cost assignments
/// are resolved toward earlier starts, smaller ids first.
StrategyMatrix optimize_schedule(const std::vector<Program>& programs,
                                 const PlanningHorizon& horizon,
                                 const LossModel& loss,
                                 const ResourceGrid& grid);

/// Exhaustive minimizer over every start-stage assignment. Guarded to
/// at most 8 programs and 5 stages; produces the same matrix, objective and
/// tie-breaks as optimize_schedule and serves as its verification oracle.
StrategyMatrix brute_force_schedule(const std::vector<Program>& programs,
                                    const PlanningHorizon& horizon,
                                    const LossModel& loss,
                                    const ResourceGrid& grid);

} // namespace rndkit
