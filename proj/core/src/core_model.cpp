#include "rndkit/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rndkit {

PlanningHorizon make_horizon(double total_duration, int stage_count) {
    if (stage_count < 1) {
        throw EmptyHorizon("horizon needs at least one stage, got " +
                           std::to_string(stage_count));
    }
    if (!(total_duration > 0.0) || !std::isfinite(total_duration)) {
        throw ValidationError("horizon total_duration must be positive and finite");
    }
    PlanningHorizon h;
    h.total_duration = total_duration;
    h.stage_count = stage_count;
    h.stage_length = total_duration / stage_count;
    return h;
}

void validate_horizon(const PlanningHorizon& horizon) {
    if (horizon.stage_count < 1) {
        throw EmptyHorizon("horizon needs at least one stage, got " +
                           std::to_string(horizon.stage_count));
    }
    if (std::fabs(horizon.stage_length * horizon.stage_count - horizon.total_duration) > 1e-9) {
        throw ValidationError("horizon stage_length * stage_count does not match total_duration");
    }
}

std::vector<Program> validate_program_set(std::vector<Program> programs,
                                          const PlanningHorizon& horizon) {
    validate_horizon(horizon);
    std::unordered_set<std::string> seen;
    for (const Program& p : programs) {
        if (p.id.empty()) {
            throw InvalidProgram("program with empty id");
        }
        if (!seen.insert(p.id).second) {
            throw DuplicateId("duplicate program id '" + p.id + "'");
        }
        if (!(p.demand >= 0.0) || !std::isfinite(p.demand)) {
            throw InvalidProgram("program '" + p.id + "': demand must be >= 0");
        }
        if (p.duration_stages < 1) {
            throw InvalidProgram("program '" + p.id + "': duration_stages must be >= 1");
        }
        if (p.due_stage < 1 || p.due_stage > horizon.stage_count) {
            throw InvalidProgram("program '" + p.id + "': due_stage " +
                                 std::to_string(p.due_stage) + " outside [1, " +
                                 std::to_string(horizon.stage_count) + "]");
        }
        // Needed so stage costs stay nonnegative.
        if (!(p.tardiness_rate >= 0.0) || !std::isfinite(p.tardiness_rate)) {
            throw InvalidProgram("program '" + p.id + "': tardiness_rate must be >= 0");
        }
    }
    return programs;
}

ResourceGrid build_resource_grid(double p_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw NonPositiveStep("grid step must be > 0, got " + std::to_string(step));
    }
    if (!(p_max >= 0.0) || !std::isfinite(p_max)) {
        throw ValidationError("grid p_max must be >= 0 and finite");
    }
    ResourceGrid grid;
    grid.p_max = p_max;
    grid.step = step;
    // Multiples of step strictly below p_max, then p_max itself as the cap.
    for (std::size_t k = 0;; ++k) {
        const double state = static_cast<double>(k) * step;
        if (state >= p_max - 1e-12) break;
        grid.states.push_back(state);
    }
    grid.states.push_back(p_max);
    return grid;
}

double ResourceGrid::round_to_state(double value) const {
    const auto it = std::lower_bound(states.begin(), states.end(), value);
    if (it == states.begin()) return states.front();
    if (it == states.end()) return states.back();
    const double above = *it;
    const double below = *(it - 1);
    // Ties round toward zero.
    return (value - below <= above - value) ? below : above;
}

std::size_t ResourceGrid::state_index(double value) const {
    const double state = round_to_state(value);
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    return static_cast<std::size_t>(it - states.begin());
}

void validate_loss_model(const LossModel& loss) {
    if (!(loss.penalty_coefficient >= 0.0) || !std::isfinite(loss.penalty_coefficient)) {
        throw ValidationError("loss_model penalty_coefficient must be >= 0");
    }
    if (!(loss.available >= 0.0) || !std::isfinite(loss.available)) {
        throw ValidationError("loss_model available must be >= 0");
    }
}

const char* to_string(TardinessForm form) {
    return form == TardinessForm::linear ? "linear" : "quadratic";
}

const char* to_string(PenaltyForm form) {
    switch (form) {
    case PenaltyForm::quadratic_overuse: return "quadratic-overuse";
    case PenaltyForm::linear_overuse: return "linear-overuse";
    default: return "symmetric-quadratic";
    }
}

TardinessForm tardiness_form_from_string(const std::string& name) {
    if (name == "linear") return TardinessForm::linear;
    if (name == "quadratic") return TardinessForm::quadratic;
    throw ValidationError("unknown tardiness_form '" + name + "'");
}

PenaltyForm penalty_form_from_string(const std::string& name) {
    if (name == "quadratic-overuse") return PenaltyForm::quadratic_overuse;
    if (name == "linear-overuse") return PenaltyForm::linear_overuse;
    if (name == "symmetric-quadratic") return PenaltyForm::symmetric_quadratic;
    throw ValidationError("unknown penalty_form '" + name + "'");
}

const char* to_string(KpiGroup group) {
    return group == KpiGroup::operational ? "operational" : "organizational";
}

const char* to_string(KpiDirection direction) {
    return direction == KpiDirection::maximize ? "maximize" : "minimize";
}

bool KpiRegistry::contains(const std::string& id) const {
    return find(id) != nullptr;
}

const KpiDefinition* KpiRegistry::find(const std::string& id) const {
    for (const KpiDefinition& d : defs_) {
        if (d.id == id) return &d;
    }
    return nullptr;
}

KpiRegistry register_kpi(KpiRegistry registry, KpiDefinition definition) {
    if (definition.id.empty()) {
        throw ValidationError("KPI definition needs a non-empty id");
    }
    if (registry.contains(definition.id)) {
        throw DuplicateId("KPI id '" + definition.id + "' already registered");
    }
    registry.defs_.push_back(std::move(definition));
    return registry;
}

} // namespace rndkit
