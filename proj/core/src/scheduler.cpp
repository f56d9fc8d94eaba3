#include "rndkit/scheduler.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace rndkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tardiness_term(const Program& p, int start_stage, const LossModel& loss) {
    const int completion = start_stage + p.duration_stages - 1;
    const int late = completion > p.due_stage ? completion - p.due_stage : 0;
    if (late == 0) return 0.0;
    const double l = static_cast<double>(late);
    return loss.tardiness_form == TardinessForm::linear ? p.tardiness_rate * l
                                                        : p.tardiness_rate * (l * l);
}

double deviation_penalty(double usage, const LossModel& loss) {
    const double over = usage - loss.available;
    switch (loss.penalty_form) {
    case PenaltyForm::quadratic_overuse: {
        const double o = over > 0.0 ? over : 0.0;
        return loss.penalty_coefficient * o * o;
    }
    case PenaltyForm::linear_overuse: {
        const double o = over > 0.0 ? over : 0.0;
        return loss.penalty_coefficient * o;
    }
    default:
        return loss.penalty_coefficient * over * over;
    }
}

void validate_grid(const ResourceGrid& grid) {
    if (grid.states.empty() || grid.states.front() != 0.0 ||
        !std::is_sorted(grid.states.begin(), grid.states.end())) {
        throw ValidationError("resource grid must start at 0 with ascending states");
    }
}

struct NodeKey {
    int stage;
    std::uint32_t state_index;
    std::uint32_t mask;

    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(k.stage) * 0x9e3779b97f4a7c15ull;
        h ^= (static_cast<std::uint64_t>(k.state_index) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
        h *= 0xff51afd7ed558ccdull;
        h ^= (static_cast<std::uint64_t>(k.mask) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
        return static_cast<std::size_t>(h * 0xc4ceb9fe1a85ec53ull);
    }
};

struct Node {
    double value = kInf;
    std::uint32_t chosen = 0;
    // Start stage per set bit of the node's mask, ascending bit (= id) order.
    // The lexicographic order of this vector is the tie-break: earlier starts
    // win, smaller ids first.
    std::vector<int> starts;
};

class Solver {
public:
    Solver(std::vector<Program> programs, const PlanningHorizon& horizon,
           const LossModel& loss, const ResourceGrid& grid)
        : programs_(std::move(programs)), loss_(loss), grid_(grid),
          stages_(horizon.stage_count) {
        std::sort(programs_.begin(), programs_.end(),
                  [](const Program& a, const Program& b) { return a.id < b.id; });
        latest_start_.reserve(programs_.size());
        for (const Program& p : programs_) {
            const int latest = stages_ - p.duration_stages + 1;
            if (latest < 1) {
                throw Infeasible("program '" + p.id + "' (duration " +
                                 std::to_string(p.duration_stages) +
                                 ") cannot complete within " +
                                 std::to_string(stages_) + " stages");
            }
            latest_start_.push_back(latest);
        }
    }

    int stages() const { return stages_; }
    std::size_t program_count() const { return programs_.size(); }
    std::uint32_t full_mask() const {
        return programs_.empty() ? 0u : (std::uint32_t{1} << programs_.size()) - 1u;
    }
    const std::vector<Program>& programs() const { return programs_; }
    const std::vector<int>& latest_start() const { return latest_start_; }

    double mask_stage_cost(std::uint32_t mask, double state, int stage) const {
        // Same accumulation sequence as the public stage_cost (id order).
        double losses = 0.0;
        double demand = 0.0;
        for (std::size_t i = 0; i < programs_.size(); ++i) {
            if (!(mask >> i & 1u)) continue;
            losses += tardiness_term(programs_[i], stage, loss_);
            demand += programs_[i].demand;
        }
        return losses + deviation_penalty(state + demand, loss_);
    }

    double mask_carryover(std::uint32_t mask) const {
        double continuing = 0.0;
        for (std::size_t i = 0; i < programs_.size(); ++i) {
            if ((mask >> i & 1u) && programs_[i].duration_stages > 1) {
                continuing += programs_[i].demand;
            }
        }
        return grid_.round_to_state(continuing);
    }

    std::vector<std::string> mask_ids(std::uint32_t mask) const {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < programs_.size(); ++i) {
            if (mask >> i & 1u) ids.push_back(programs_[i].id);
        }
        return ids;
    }

    const Node& solve(int stage, std::size_t state_index, std::uint32_t mask) {
        const NodeKey key{stage, static_cast<std::uint32_t>(state_index), mask};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Node node;
        if (stage > stages_) {
            if (mask == 0) {
                node.value = 0.0;
            }
            return memo_.emplace(key, std::move(node)).first->second;
        }

        std::uint32_t forced = 0;
        bool feasible = true;
        for (std::size_t i = 0; i < programs_.size() && feasible; ++i) {
            if (!(mask >> i & 1u)) continue;
            if (latest_start_[i] < stage) feasible = false;
            else if (latest_start_[i] == stage) forced |= std::uint32_t{1} << i;
        }
        if (!feasible) {
            return memo_.emplace(key, std::move(node)).first->second;
        }

        const std::uint32_t free = mask & ~forced;
        const double state = grid_.states[state_index];
        for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
            const std::uint32_t chosen = sub | forced;
            const double cost = mask_stage_cost(chosen, state, stage);
            const double carry = mask_carryover(chosen);
            const Node& rest = solve(stage + 1, grid_.state_index(carry), mask ^ chosen);
            if (rest.value != kInf) {
                const double total = cost + rest.value;
                if (total < node.value ||
                    (total == node.value &&
                     better_starts(mask, chosen, rest.starts, stage, node.starts))) {
                    node.value = total;
                    node.chosen = chosen;
                    node.starts = merge_starts(mask, chosen, rest.starts, stage);
                }
            }
            if (sub == 0) break;
        }
        return memo_.emplace(key, std::move(node)).first->second;
    }

private:
    std::vector<int> merge_starts(std::uint32_t mask, std::uint32_t chosen,
                                  const std::vector<int>& rest_starts, int stage) const {
        std::vector<int> starts;
        std::size_t rest_pos = 0;
        for (std::size_t i = 0; i < programs_.size(); ++i) {
            if (!(mask >> i & 1u)) continue;
            starts.push_back((chosen >> i & 1u) ? stage : rest_starts[rest_pos]);
            if (!(chosen >> i & 1u)) ++rest_pos;
        }
        return starts;
    }

    bool better_starts(std::uint32_t mask, std::uint32_t chosen,
                       const std::vector<int>& rest_starts, int stage,
                       const std::vector<int>& incumbent) const {
        const std::vector<int> candidate = merge_starts(mask, chosen, rest_starts, stage);
        return std::lexicographical_compare(candidate.begin(), candidate.end(),
                                            incumbent.begin(), incumbent.end());
    }

    std::vector<Program> programs_;
    std::vector<int> latest_start_;
    const LossModel& loss_;
    const ResourceGrid& grid_;
    int stages_;
    std::unordered_map<NodeKey, Node, NodeKeyHash> memo_;
};

void validate_inputs(const std::vector<Program>& programs, const PlanningHorizon& horizon,
                     const LossModel& loss, const ResourceGrid& grid) {
    if (horizon.stage_count < 1) {
        throw EmptyHorizon("cannot schedule over a horizon with " +
                           std::to_string(horizon.stage_count) + " stages");
    }
    validate_horizon(horizon);
    validate_loss_model(loss);
    validate_grid(grid);
    validate_program_set(programs, horizon);
}

} // namespace

const StrategyEntry& StrategyMatrix::at(int stage, std::size_t state_index) const {
    if (stage < 1 || stage > stage_count || state_index >= states.size()) {
        throw ValidationError("strategy matrix lookup outside horizon x grid");
    }
    return entries[static_cast<std::size_t>(stage - 1)][state_index];
}

double stage_cost(std::span<const Program> selection, double state, int stage,
                  const LossModel& loss) {
    double losses = 0.0;
    double demand = 0.0;
    for (const Program& p : selection) {
        losses += tardiness_term(p, stage, loss);
        demand += p.demand;
    }
    return losses + deviation_penalty(state + demand, loss);
}

double carryover(std::span<const Program> selection, int stage, const ResourceGrid& grid) {
    (void)stage;  // all selection members start at `stage`; duration decides continuation
    double continuing = 0.0;
    for (const Program& p : selection) {
        if (p.duration_stages > 1) continuing += p.demand;
    }
    return grid.round_to_state(continuing);
}

StrategyMatrix optimize_schedule(const std::vector<Program>& programs,
                                 const PlanningHorizon& horizon,
                                 const LossModel& loss,
                                 const ResourceGrid& grid) {
    validate_inputs(programs, horizon, loss, grid);
    if (programs.size() > 24) {
        throw TooLarge("exact scheduling is limited to 24 programs, got " +
                       std::to_string(programs.size()));
    }

    Solver solver(programs, horizon, loss, grid);
    const int stages = solver.stages();

    const Node& root = solver.solve(1, 0, solver.full_mask());
    if (root.value == kInf) {
        throw Infeasible("no admissible assignment of programs to stages");
    }

    StrategyMatrix matrix;
    matrix.stage_count = stages;
    matrix.states = grid.states;
    matrix.entries.resize(static_cast<std::size_t>(stages));
    matrix.pending_by_stage.resize(static_cast<std::size_t>(stages));
    matrix.plan.reserve(static_cast<std::size_t>(stages));

    std::uint32_t pending = solver.full_mask();
    std::size_t state_index = 0;
    for (int k = 1; k <= stages; ++k) {
        matrix.pending_by_stage[static_cast<std::size_t>(k - 1)] = solver.mask_ids(pending);

        auto& row = matrix.entries[static_cast<std::size_t>(k - 1)];
        row.reserve(grid.states.size());
        for (std::size_t s = 0; s < grid.states.size(); ++s) {
            const Node& node = solver.solve(k, s, pending);
            row.push_back(StrategyEntry{solver.mask_ids(node.chosen),
                                        solver.mask_carryover(node.chosen), node.value});
        }

        const Node& step = solver.solve(k, state_index, pending);
        const double carry = solver.mask_carryover(step.chosen);
        matrix.plan.push_back(StageSelection{k, solver.mask_ids(step.chosen), carry});
        pending ^= step.chosen;
        state_index = grid.state_index(carry);
    }

    matrix.optimal_objective = matrix.entries[0][0].value_to_go;
    return matrix;
}

StrategyMatrix brute_force_schedule(const std::vector<Program>& programs,
                                    const PlanningHorizon& horizon,
                                    const LossModel& loss,
                                    const ResourceGrid& grid) {
    validate_inputs(programs, horizon, loss, grid);
    if (programs.size() > 8 || horizon.stage_count > 5) {
        throw TooLarge("brute-force enumeration is limited to 8 programs and 5 stages");
    }

    Solver helper(programs, horizon, loss, grid);  // reused for shared arithmetic
    const int stages = helper.stages();
    const std::vector<Program>& sorted = helper.programs();
    const std::vector<int>& latest = helper.latest_start();
    const std::size_t n = sorted.size();

    // Evaluates the assignment `starts` of the programs selected by `mask`
    // over stages first_stage..stages, entering with `state`. Per-stage
    // costs are folded back-to-front so totals match the recurrence's
    // summation order bit for bit.
    const auto evaluate = [&](std::uint32_t mask, const std::vector<int>& starts,
                              int first_stage, double state) {
        std::vector<double> costs;
        costs.reserve(static_cast<std::size_t>(stages - first_stage + 1));
        double eps = state;
        for (int k = first_stage; k <= stages; ++k) {
            std::uint32_t selected = 0;
            std::size_t pos = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(mask >> i & 1u)) continue;
                if (starts[pos] == k) selected |= std::uint32_t{1} << i;
                ++pos;
            }
            costs.push_back(helper.mask_stage_cost(selected, eps, k));
            eps = helper.mask_carryover(selected);
        }
        double total = 0.0;
        for (auto it = costs.rbegin(); it != costs.rend(); ++it) total = *it + total;
        return total;
    };

    // Minimizes over every start assignment of the programs in `mask`, with
    // stage floor `first_stage` and entering state `state`.
    const auto enumerate = [&](std::uint32_t mask, int first_stage, double state) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1u) members.push_back(i);
        }
        std::vector<int> starts(members.size(), first_stage);
        double best_value = kInf;
        std::vector<int> best_starts;
        for (;;) {
            const double total = evaluate(mask, starts, first_stage, state);
            if (total < best_value ||
                (total == best_value &&
                 std::lexicographical_compare(starts.begin(), starts.end(),
                                              best_starts.begin(), best_starts.end()))) {
                best_value = total;
                best_starts = starts;
            }
            std::size_t pos = members.size();
            while (pos > 0) {
                --pos;
                if (starts[pos] < latest[members[pos]]) {
                    ++starts[pos];
                    std::fill(starts.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                              starts.end(), first_stage);
                    break;
                }
                if (pos == 0) return std::pair{best_value, best_starts};
            }
            if (members.empty()) return std::pair{best_value, best_starts};
        }
    };

    const std::uint32_t full = helper.full_mask();
    const auto [objective, plan_starts] = enumerate(full, 1, 0.0);
    if (objective == kInf) {
        throw Infeasible("no admissible assignment of programs to stages");
    }

    const auto selection_at = [&](std::uint32_t mask, const std::vector<int>& starts, int k) {
        std::uint32_t selected = 0;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            if (starts[pos] == k) selected |= std::uint32_t{1} << i;
            ++pos;
        }
        return selected;
    };

    StrategyMatrix matrix;
    matrix.stage_count = stages;
    matrix.states = grid.states;
    matrix.entries.resize(static_cast<std::size_t>(stages));
    matrix.pending_by_stage.resize(static_cast<std::size_t>(stages));
    matrix.plan.reserve(static_cast<std::size_t>(stages));

    std::uint32_t pending = full;
    for (int k = 1; k <= stages; ++k) {
        matrix.pending_by_stage[static_cast<std::size_t>(k - 1)] = helper.mask_ids(pending);

        auto& row = matrix.entries[static_cast<std::size_t>(k - 1)];
        row.reserve(grid.states.size());
        for (std::size_t s = 0; s < grid.states.size(); ++s) {
            const auto [value, starts] = enumerate(pending, k, grid.states[s]);
            const std::uint32_t selected = selection_at(pending, starts, k);
            row.push_back(StrategyEntry{helper.mask_ids(selected),
                                        helper.mask_carryover(selected), value});
        }

        const std::uint32_t step = selection_at(full, plan_starts, k) & pending;
        matrix.plan.push_back(
            StageSelection{k, helper.mask_ids(step), helper.mask_carryover(step)});
        pending ^= step;
    }

    matrix.optimal_objective = matrix.entries[0][0].value_to_go;
    return matrix;
}

} // namespace rndkit
