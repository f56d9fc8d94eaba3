#include <cstdlib>
#include <fstream>

#include "json_util.hpp"
#include "rndkit/io.hpp"

namespace rndkit::io {

using detail::as_array;
using detail::as_int;
using detail::as_number;
using detail::as_string;
using detail::join_path;
using detail::ordered_json;
using detail::parse_json;
using detail::require_int;
using detail::require_member;
using detail::require_number;
using detail::require_string;

namespace {

/// Reclassifies core validation failures raised while assembling a parsed
/// document, keeping parse errors as-is.
template <typename Fn>
auto validated(const std::string& origin, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        if (e.category() == ErrorCategory::validation) {
            throw ValidationError(origin + ": " + e.what());
        }
        throw;
    }
}

} // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("failed while reading '" + path.string() + "'");
    }
    return content;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

PlanDocument plan_from_json(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);

    const ordered_json& horizon = require_member(doc, origin, "", "horizon");
    const double total_duration = require_number(horizon, origin, "horizon", "total_duration");
    const int stage_count = require_int(horizon, origin, "horizon", "stage_count");

    const ordered_json& grid = require_member(doc, origin, "", "grid");
    const double p_max = require_number(grid, origin, "grid", "p_max");
    const double step = require_number(grid, origin, "grid", "step");

    LossModel loss;
    if (const auto it = doc.find("loss_model"); it != doc.end()) {
        const ordered_json& lm = *it;
        if (const auto f = lm.find("tardiness_form"); f != lm.end()) {
            const std::string name = as_string(*f, origin, "loss_model.tardiness_form");
            try {
                loss.tardiness_form = tardiness_form_from_string(name);
            } catch (const Error& e) {
                throw ParseError(origin + ": " + e.what(), 0, "loss_model.tardiness_form");
            }
        }
        if (const auto f = lm.find("penalty_form"); f != lm.end()) {
            const std::string name = as_string(*f, origin, "loss_model.penalty_form");
            try {
                loss.penalty_form = penalty_form_from_string(name);
            } catch (const Error& e) {
                throw ParseError(origin + ": " + e.what(), 0, "loss_model.penalty_form");
            }
        }
        if (const auto f = lm.find("penalty_coefficient"); f != lm.end()) {
            loss.penalty_coefficient = as_number(*f, origin, "loss_model.penalty_coefficient");
        }
        if (const auto f = lm.find("available"); f != lm.end()) {
            loss.available = as_number(*f, origin, "loss_model.available");
        }
    }

    const ordered_json& programs = as_array(require_member(doc, origin, "", "programs"),
                                            origin, "programs");
    std::vector<Program> parsed;
    parsed.reserve(programs.size());
    std::size_t index = 0;
    for (const ordered_json& entry : programs) {
        const std::string path = "programs[" + std::to_string(index++) + "]";
        Program p;
        p.id = require_string(entry, origin, path, "id");
        p.demand = require_number(entry, origin, path, "demand");
        p.duration_stages = require_int(entry, origin, path, "duration_stages");
        p.due_stage = require_int(entry, origin, path, "due_stage");
        p.tardiness_rate = require_number(entry, origin, path, "tardiness_rate");
        if (const auto it = entry.find("label"); it != entry.end()) {
            p.label = as_string(*it, origin, join_path(path, "label"));
        }
        parsed.push_back(std::move(p));
    }

    return validated(origin, [&] {
        PlanDocument document;
        document.horizon = make_horizon(total_duration, stage_count);
        document.grid = build_resource_grid(p_max, step);
        validate_loss_model(loss);
        document.loss_model = loss;
        document.programs = validate_program_set(std::move(parsed), document.horizon);
        return document;
    });
}

std::string plan_to_json(const PlanDocument& document) {
    ordered_json doc;
    doc["horizon"] = {{"total_duration", document.horizon.total_duration},
                      {"stage_count", document.horizon.stage_count}};
    doc["grid"] = {{"p_max", document.grid.p_max}, {"step", document.grid.step}};
    doc["loss_model"] = {{"tardiness_form", to_string(document.loss_model.tardiness_form)},
                         {"penalty_form", to_string(document.loss_model.penalty_form)},
                         {"penalty_coefficient", document.loss_model.penalty_coefficient},
                         {"available", document.loss_model.available}};
    doc["programs"] = ordered_json::array();
    for (const Program& p : document.programs) {
        ordered_json entry = {{"id", p.id},
                              {"demand", p.demand},
                              {"duration_stages", p.duration_stages},
                              {"due_stage", p.due_stage},
                              {"tardiness_rate", p.tardiness_rate}};
        if (!p.label.empty()) entry["label"] = p.label;
        doc["programs"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

PlanDocument load_plan(const std::filesystem::path& path) {
    return plan_from_json(read_file(path), path.filename().string());
}

void save_plan(const PlanDocument& document, const std::filesystem::path& path) {
    write_file(path, plan_to_json(document));
}

std::vector<Alternative> alternatives_from_json(const std::string& text,
                                                const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    const ordered_json& list = as_array(require_member(doc, origin, "", "alternatives"),
                                        origin, "alternatives");
    std::vector<Alternative> alternatives;
    alternatives.reserve(list.size());
    std::size_t index = 0;
    for (const ordered_json& entry : list) {
        const std::string path = "alternatives[" + std::to_string(index++) + "]";
        Alternative alt;
        alt.id = require_string(entry, origin, path, "id");
        const ordered_json& criteria = as_array(require_member(entry, origin, path, "criteria"),
                                                origin, join_path(path, "criteria"));
        std::size_t c = 0;
        for (const ordered_json& v : criteria) {
            alt.criteria.push_back(
                as_number(v, origin, join_path(path, "criteria[" + std::to_string(c++) + "]")));
        }
        if (const auto it = entry.find("attributes"); it != entry.end()) {
            if (!it->is_object()) {
                throw ParseError(origin + ": expected an object", 0,
                                 join_path(path, "attributes"));
            }
            for (const auto& [key, value] : it->items()) {
                alt.attributes[key] =
                    as_number(value, origin, join_path(path, "attributes." + key));
            }
        }
        alternatives.push_back(std::move(alt));
    }
    return alternatives;
}

std::vector<Alternative> load_alternatives(const std::filesystem::path& path) {
    return alternatives_from_json(read_file(path), path.filename().string());
}

std::vector<ConstraintSet> constraints_from_json(const std::string& text,
                                                 const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    const ordered_json& list = as_array(require_member(doc, origin, "", "constraint_sets"),
                                        origin, "constraint_sets");
    std::vector<ConstraintSet> sets;
    sets.reserve(list.size());
    std::size_t index = 0;
    for (const ordered_json& entry : list) {
        const std::string path = "constraint_sets[" + std::to_string(index++) + "]";
        ConstraintSet set;
        const std::string kind = require_string(entry, origin, path, "kind");
        try {
            set.kind = constraint_kind_from_string(kind);
        } catch (const Error& e) {
            throw ParseError(origin + ": " + e.what(), 0, join_path(path, "kind"));
        }
        const ordered_json& bounds = as_array(require_member(entry, origin, path, "bounds"),
                                              origin, join_path(path, "bounds"));
        std::size_t b = 0;
        for (const ordered_json& bound : bounds) {
            const std::string bpath = join_path(path, "bounds[" + std::to_string(b++) + "]");
            ConstraintBound parsed;
            parsed.attribute = require_string(bound, origin, bpath, "attribute");
            parsed.lower = require_number(bound, origin, bpath, "lower");
            parsed.upper = require_number(bound, origin, bpath, "upper");
            if (parsed.lower > parsed.upper) {
                throw ValidationError(origin + ": bound on '" + parsed.attribute +
                                      "' has lower > upper");
            }
            set.bounds.push_back(std::move(parsed));
        }
        sets.push_back(std::move(set));
    }
    return sets;
}

std::vector<ConstraintSet> load_constraints(const std::filesystem::path& path) {
    return constraints_from_json(read_file(path), path.filename().string());
}

GoalProgram goal_from_json(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    GoalProgram program;
    const ordered_json& ideal = as_array(require_member(doc, origin, "", "ideal"),
                                         origin, "ideal");
    std::size_t i = 0;
    for (const ordered_json& v : ideal) {
        program.ideal.push_back(as_number(v, origin, "ideal[" + std::to_string(i++) + "]"));
    }
    const ordered_json& weights = as_array(require_member(doc, origin, "", "weights"),
                                           origin, "weights");
    i = 0;
    for (const ordered_json& v : weights) {
        program.weights.push_back(as_number(v, origin, "weights[" + std::to_string(i++) + "]"));
    }
    if (const auto it = doc.find("norm_order"); it != doc.end()) {
        program.norm_order = as_number(*it, origin, "norm_order");
    }
    return validated(origin, [&] {
        validate_goal_program(program);
        return program;
    });
}

GoalProgram load_goal(const std::filesystem::path& path) {
    return goal_from_json(read_file(path), path.filename().string());
}

AccessPolicy policy_from_json(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    const ordered_json& rules = as_array(require_member(doc, origin, "", "rules"),
                                         origin, "rules");
    AccessPolicy policy;
    std::size_t index = 0;
    for (const ordered_json& entry : rules) {
        const std::string path = "rules[" + std::to_string(index++) + "]";
        AccessRule rule;
        rule.subject = require_string(entry, origin, path, "subject");
        rule.target = require_string(entry, origin, path, "target");
        rule.level = access_level_from_string(require_string(entry, origin, path, "level"));
        rule.action = access_action_from_string(require_string(entry, origin, path, "action"));
        rule.effect = access_effect_from_string(require_string(entry, origin, path, "effect"));
        policy = grant(std::move(policy), std::move(rule));
    }
    return policy;
}

AccessPolicy load_policy(const std::filesystem::path& path) {
    return policy_from_json(read_file(path), path.filename().string());
}

ToolConfig config_from_json(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    ToolConfig config;
    if (const auto it = doc.find("format"); it != doc.end()) {
        const std::string name = as_string(*it, origin, "format");
        if (name == "table") config.format = ReportFormat::table;
        else if (name == "structured") config.format = ReportFormat::structured;
        else throw ParseError(origin + ": unknown format '" + name + "'", 0, "format");
    }
    if (const auto it = doc.find("quiet"); it != doc.end()) {
        if (!it->is_boolean()) throw ParseError(origin + ": expected a boolean", 0, "quiet");
        config.quiet = it->get<bool>();
    }
    if (const auto it = doc.find("irr"); it != doc.end()) {
        if (const auto b = it->find("bracket"); b != it->end()) {
            const ordered_json& bracket = as_array(*b, origin, "irr.bracket");
            if (bracket.size() != 2) {
                throw ParseError(origin + ": bracket needs exactly [lo, hi]", 0, "irr.bracket");
            }
            config.irr_bracket_lo = as_number(bracket[0], origin, "irr.bracket[0]");
            config.irr_bracket_hi = as_number(bracket[1], origin, "irr.bracket[1]");
        }
        if (const auto t = it->find("tolerance"); t != it->end()) {
            config.irr_tolerance = as_number(*t, origin, "irr.tolerance");
        }
    }
    return config;
}

ToolConfig load_config_from_env() {
    const char* path = std::getenv("RND_KIT_CONFIG");
    if (path == nullptr || *path == '\0') return ToolConfig{};
    return config_from_json(read_file(path), std::filesystem::path(path).filename().string());
}

} // namespace rndkit::io
