#include "rndkit/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rndkit {

const char* to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::external: return "external";
    case ConstraintKind::internal: return "internal";
    default: return "normative";
    }
}

ConstraintKind constraint_kind_from_string(const std::string& name) {
    if (name == "external") return ConstraintKind::external;
    if (name == "internal") return ConstraintKind::internal;
    if (name == "normative") return ConstraintKind::normative;
    throw ValidationError("unknown constraint kind '" + name + "'");
}

void validate_goal_program(const GoalProgram& program) {
    if (program.ideal.size() != program.weights.size()) {
        throw DimensionMismatch("goal program ideal and weights differ in length (" +
                                std::to_string(program.ideal.size()) + " vs " +
                                std::to_string(program.weights.size()) + ")");
    }
    for (double w : program.weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ValidationError("goal program weights must be > 0");
        }
    }
    if (!(program.norm_order >= 1.0) || !std::isfinite(program.norm_order)) {
        throw ValidationError("goal program norm order must be >= 1");
    }
}

std::vector<Alternative> filter_feasible(const std::vector<Alternative>& alternatives,
                                         const std::vector<ConstraintSet>& constraints) {
    for (const ConstraintSet& set : constraints) {
        for (const ConstraintBound& bound : set.bounds) {
            if (bound.lower > bound.upper) {
                throw ValidationError("constraint bound on '" + bound.attribute +
                                      "' has lower > upper");
            }
        }
    }
    std::vector<Alternative> feasible;
    feasible.reserve(alternatives.size());
    for (const Alternative& alt : alternatives) {
        bool ok = true;
        for (const ConstraintSet& set : constraints) {
            for (const ConstraintBound& bound : set.bounds) {
                const auto it = alt.attributes.find(bound.attribute);
                if (it == alt.attributes.end()) {
                    throw UnknownAttribute("alternative '" + alt.id +
                                           "' lacks attribute '" + bound.attribute + "'");
                }
                if (it->second < bound.lower || it->second > bound.upper) ok = false;
            }
        }
        if (ok) feasible.push_back(alt);
    }
    return feasible;
}

const Alternative& minmax_select(const std::vector<Alternative>& feasible) {
    if (feasible.empty()) {
        throw NoFeasibleAlternative("no feasible alternative to select from");
    }
    for (const Alternative& alt : feasible) {
        if (alt.criteria.size() != feasible.front().criteria.size()) {
            throw DimensionMismatch("alternative '" + alt.id +
                                    "' has a different criteria dimension");
        }
    }
    const auto worst = [](const Alternative& alt) {
        double m = -std::numeric_limits<double>::infinity();
        for (double v : alt.criteria) m = std::max(m, v);
        return m;
    };
    const Alternative* best = &feasible.front();
    double best_worst = worst(*best);
    for (const Alternative& alt : feasible) {
        const double w = worst(alt);
        if (w < best_worst || (w == best_worst && alt.id < best->id)) {
            best = &alt;
            best_worst = w;
        }
    }
    return *best;
}

double goal_distance(std::span<const double> criteria, const GoalProgram& program) {
    validate_goal_program(program);
    if (criteria.size() != program.ideal.size()) {
        throw DimensionMismatch("criteria length " + std::to_string(criteria.size()) +
                                " does not match goal dimension " +
                                std::to_string(program.ideal.size()));
    }
    bool equal = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (criteria[i] != program.ideal[i]) {
            equal = false;
            break;
        }
    }
    if (equal) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        sum += program.weights[i] *
               std::pow(std::fabs(criteria[i] - program.ideal[i]), program.norm_order);
    }
    return std::pow(sum, 1.0 / program.norm_order);
}

std::vector<std::pair<std::string, double>> rank_alternatives(
    const std::vector<Alternative>& alternatives, const GoalProgram& program) {
    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(alternatives.size());
    for (const Alternative& alt : alternatives) {
        ranked.emplace_back(alt.id, goal_distance(alt.criteria, program));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    return ranked;
}

} // namespace rndkit
