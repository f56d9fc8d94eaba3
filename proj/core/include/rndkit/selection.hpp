#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rndkit/errors.hpp"

namespace rndkit {

/// A strategic alternative: its criterion vector (positionally keyed by the
/// evaluating context's KPI order) and named attributes for constraints.
struct Alternative {
    std::string id;
    std::vector<double> criteria;
    std::map<std::string, double> attributes;

    bool operator==(const Alternative&) const = default;
};

enum class ConstraintKind { external, internal, normative };

const char* to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(const std::string& name);

struct ConstraintBound {
    std::string attribute;
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const ConstraintBound&) const = default;
};

struct ConstraintSet {
    ConstraintKind kind = ConstraintKind::external;
    std::vector<ConstraintBound> bounds;

    bool operator==(const ConstraintSet&) const = default;
};

/// Weighted goal-programming target: the ideal criterion vector, positive
/// weights, and the norm order p >= 1 of the distance.
struct GoalProgram {
    std::vector<double> ideal;
    std::vector<double> weights;
    double norm_order = 2.0;

    bool operator==(const GoalProgram&) const = default;
};

void validate_goal_program(const GoalProgram& program);

/// Alternatives satisfying every bound of every constraint set, in input
/// order. A bound naming an attribute an alternative lacks raises
/// UnknownAttribute even if the alternative already failed another bound.
std::vector<Alternative> filter_feasible(const std::vector<Alternative>& alternatives,
                                         const std::vector<ConstraintSet>& constraints);

/// The alternative minimizing the maximum criterion value; ties go to the
/// smaller id. All alternatives must share the criteria dimension.
const Alternative& minmax_select(const std::vector<Alternative>& feasible);

/// Weighted Lp distance (sum_i a_i |criteria_i - ideal_i|^p)^(1/p).
/// Exactly 0 when criteria equals the ideal.
double goal_distance(std::span<const double> criteria, const GoalProgram& program);

/// (id, distance) pairs ascending by distance, ties by smaller id.
std::vector<std::pair<std::string, double>> rank_alternatives(
    const std::vector<Alternative>& alternatives, const GoalProgram& program);

} // namespace rndkit
