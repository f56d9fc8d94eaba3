#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rndkit/errors.hpp"

namespace rndkit {

/// Planning horizon split into stage_count stages of equal length.
/// Invariant: stage_length * stage_count == total_duration within 1e-9.
struct PlanningHorizon {
    double total_duration = 0.0;
    int stage_count = 0;
    double stage_length = 0.0;

    bool operator==(const PlanningHorizon&) const = default;
};

/// Builds a horizon from the total duration and stage count, deriving the
/// stage length. Throws EmptyHorizon for stage_count < 1 and ValidationError
/// for a non-positive duration.
PlanningHorizon make_horizon(double total_duration, int stage_count);

/// Throws if the horizon violates its invariants.
void validate_horizon(const PlanningHorizon& horizon);

/// One R&D work item. demand is the resource quantity consumed per active
/// stage; the program occupies duration_stages consecutive stages starting
/// at its assigned stage; completion after due_stage accrues tardiness
/// losses at tardiness_rate per stage late.
struct Program {
    std::string id;
    double demand = 0.0;
    int duration_stages = 1;
    int due_stage = 1;
    double tardiness_rate = 0.0;
    std::string label;

    bool operator==(const Program&) const = default;
};

/// Validates each program against its invariants and the horizon and checks
/// id uniqueness. Returns the input list unchanged on success (idempotent).
std::vector<Program> validate_program_set(std::vector<Program> programs,
                                          const PlanningHorizon& horizon);

/// Discretized resource states: multiples of step capped at p_max, with
/// p_max appended as the final state when it is not a multiple of step.
struct ResourceGrid {
    double p_max = 0.0;
    double step = 1.0;
    std::vector<double> states;

    /// Nearest grid state; ties round toward zero.
    double round_to_state(double value) const;

    /// Index of round_to_state(value) in states.
    std::size_t state_index(double value) const;

    bool operator==(const ResourceGrid&) const = default;
};

ResourceGrid build_resource_grid(double p_max, double step);

enum class TardinessForm { linear, quadratic };

enum class PenaltyForm { quadratic_overuse, linear_overuse, symmetric_quadratic };

/// Loss configuration shared by all stages: the tardiness form feeding the
/// per-stage loss function and the resource-deviation penalty against the
/// available per-stage quantity. The overuse forms leave under-use free;
/// symmetric_quadratic charges deviation in both directions.
struct LossModel {
    TardinessForm tardiness_form = TardinessForm::linear;
    PenaltyForm penalty_form = PenaltyForm::quadratic_overuse;
    double penalty_coefficient = 1.0;
    double available = 0.0;

    bool operator==(const LossModel&) const = default;
};

void validate_loss_model(const LossModel& loss);

const char* to_string(TardinessForm form);
const char* to_string(PenaltyForm form);
TardinessForm tardiness_form_from_string(const std::string& name);
PenaltyForm penalty_form_from_string(const std::string& name);

enum class KpiGroup { operational, organizational };
enum class KpiDirection { maximize, minimize };

struct KpiDefinition {
    std::string id;
    KpiGroup group = KpiGroup::operational;
    std::string name;
    KpiDirection direction = KpiDirection::maximize;
    std::string unit;

    bool operator==(const KpiDefinition&) const = default;
};

const char* to_string(KpiGroup group);
const char* to_string(KpiDirection direction);

/// Append-only registry of KPI definitions with unique ids.
class KpiRegistry {
public:
    std::size_t size() const noexcept { return defs_.size(); }
    bool contains(const std::string& id) const;
    const KpiDefinition* find(const std::string& id) const;
    const std::vector<KpiDefinition>& definitions() const noexcept { return defs_; }

    bool operator==(const KpiRegistry&) const = default;

    friend KpiRegistry register_kpi(KpiRegistry registry, KpiDefinition definition);

private:
    std::vector<KpiDefinition> defs_;
};

/// Returns a registry extended with the definition; prior entries are kept
/// untouched. Throws DuplicateId when the id is already registered.
KpiRegistry register_kpi(KpiRegistry registry, KpiDefinition definition);

} // namespace rndkit
