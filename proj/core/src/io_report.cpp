#include <cstdio>

#include "json_util.hpp"
#include "rndkit/io.hpp"
#include "rndkit/version.hpp"

namespace rndkit::io {

using detail::as_array;
using detail::as_int;
using detail::as_number;
using detail::as_string;
using detail::ordered_json;
using detail::parse_json;
using detail::require_member;
using detail::require_number;
using detail::require_string;

namespace {

std::string format_sig(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

std::string join_ids(const std::vector<std::string>& ids) {
    if (ids.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i != 0) out += ",";
        out += ids[i];
    }
    return out;
}

/// Column-aligned text table: header row plus data rows, two-space gutter.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::string out;
    const auto append_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) {
                out.append(widths[c] - row[c].size() + 2, ' ');
            }
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& row : rows) append_row(row);
    return out;
}

std::string render_header(const ReportDocument& report) {
    std::string out = "rndkit " + report.kind() + " report\n";
    out += "tool version: " + report.metadata.tool_version + "\n";
    out += "input digest: " + report.metadata.input_digest + "\n";
    if (!report.metadata.timestamp.empty()) {
        out += "timestamp: " + report.metadata.timestamp + "\n";
    }
    out += "\n";
    return out;
}

std::string render_plan_table(const PlanReport& plan) {
    const StrategyMatrix& m = plan.matrix;
    std::string out = "optimal objective: " + format_sig(m.optimal_objective) + "\n\n";

    out += "plan\n";
    std::vector<std::vector<std::string>> plan_rows;
    for (const StageSelection& sel : m.plan) {
        plan_rows.push_back({std::to_string(sel.stage), join_ids(sel.program_ids),
                             format_sig(sel.carryover_out)});
    }
    out += render_table({"stage", "start", "carryover_out"}, plan_rows);

    out += "\nstrategy matrix\n";
    std::vector<std::vector<std::string>> rows;
    for (int stage = 1; stage <= m.stage_count; ++stage) {
        for (std::size_t s = 0; s < m.states.size(); ++s) {
            const StrategyEntry& entry = m.at(stage, s);
            rows.push_back({std::to_string(stage), format_sig(m.states[s]),
                            join_ids(entry.program_ids), format_sig(entry.carryover_out),
                            format_sig(entry.value_to_go)});
        }
    }
    out += render_table({"stage", "state", "start", "carryover_out", "value_to_go"}, rows);
    return out;
}

std::string render_irr_table(const IrrReport& irr) {
    std::vector<std::vector<std::string>> rows{
        {"rate", format_sig(irr.result.rate)},
        {"residual_npv", format_sig(irr.result.residual_npv)},
        {"iterations", std::to_string(irr.result.iterations)},
    };
    return render_table({"quantity", "value"}, rows);
}

std::string render_ranking_table(const RankingReport& ranking) {
    std::string out;
    if (ranking.chosen) {
        out += "chosen: " + *ranking.chosen + "\n\n";
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t rank = 1;
    for (const auto& [id, distance] : ranking.ranking) {
        rows.push_back({std::to_string(rank++), id, format_sig(distance)});
    }
    out += render_table({"rank", "id", "distance"}, rows);
    return out;
}

std::string render_trend_table(const TrendReport& trend) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [label, fit] : trend.rows) {
        rows.push_back({label, format_sig(fit.slope), format_sig(fit.intercept),
                        format_sig(fit.r_squared)});
    }
    return render_table({"label", "slope", "intercept", "r_squared"}, rows);
}

ordered_json matrix_to_json(const StrategyMatrix& m) {
    ordered_json doc;
    doc["optimal_objective"] = m.optimal_objective;
    doc["stage_count"] = m.stage_count;
    doc["states"] = m.states;
    doc["plan"] = ordered_json::array();
    for (const StageSelection& sel : m.plan) {
        doc["plan"].push_back({{"stage", sel.stage},
                               {"programs", sel.program_ids},
                               {"carryover_out", sel.carryover_out}});
    }
    doc["pending_by_stage"] = m.pending_by_stage;
    doc["matrix"] = ordered_json::array();
    for (const auto& row : m.entries) {
        ordered_json cells = ordered_json::array();
        for (const StrategyEntry& entry : row) {
            cells.push_back({{"programs", entry.program_ids},
                             {"carryover_out", entry.carryover_out},
                             {"value_to_go", entry.value_to_go}});
        }
        doc["matrix"].push_back(std::move(cells));
    }
    return doc;
}

StrategyMatrix matrix_from_json(const ordered_json& doc, const std::string& origin,
                                const std::string& path) {
    StrategyMatrix m;
    m.optimal_objective = require_number(doc, origin, path, "optimal_objective");
    m.stage_count = detail::require_int(doc, origin, path, "stage_count");
    for (const ordered_json& v : as_array(require_member(doc, origin, path, "states"),
                                          origin, path + ".states")) {
        m.states.push_back(as_number(v, origin, path + ".states"));
    }
    for (const ordered_json& sel : as_array(require_member(doc, origin, path, "plan"),
                                            origin, path + ".plan")) {
        StageSelection s;
        s.stage = detail::require_int(sel, origin, path + ".plan", "stage");
        for (const ordered_json& id : as_array(require_member(sel, origin, path + ".plan",
                                                              "programs"),
                                               origin, path + ".plan.programs")) {
            s.program_ids.push_back(as_string(id, origin, path + ".plan.programs"));
        }
        s.carryover_out = require_number(sel, origin, path + ".plan", "carryover_out");
        m.plan.push_back(std::move(s));
    }
    for (const ordered_json& ids : as_array(require_member(doc, origin, path,
                                                           "pending_by_stage"),
                                            origin, path + ".pending_by_stage")) {
        std::vector<std::string> pending;
        for (const ordered_json& id : as_array(ids, origin, path + ".pending_by_stage")) {
            pending.push_back(as_string(id, origin, path + ".pending_by_stage"));
        }
        m.pending_by_stage.push_back(std::move(pending));
    }
    for (const ordered_json& row : as_array(require_member(doc, origin, path, "matrix"),
                                            origin, path + ".matrix")) {
        std::vector<StrategyEntry> entries;
        for (const ordered_json& cell : as_array(row, origin, path + ".matrix")) {
            StrategyEntry entry;
            for (const ordered_json& id : as_array(require_member(cell, origin,
                                                                  path + ".matrix",
                                                                  "programs"),
                                                   origin, path + ".matrix.programs")) {
                entry.program_ids.push_back(as_string(id, origin, path + ".matrix.programs"));
            }
            entry.carryover_out = require_number(cell, origin, path + ".matrix",
                                                 "carryover_out");
            entry.value_to_go = require_number(cell, origin, path + ".matrix", "value_to_go");
            entries.push_back(std::move(entry));
        }
        m.entries.push_back(std::move(entries));
    }
    return m;
}

ordered_json payload_to_json(const ReportDocument& report) {
    ordered_json payload;
    if (const auto* plan = std::get_if<PlanReport>(&report.payload)) {
        payload = matrix_to_json(plan->matrix);
    } else if (const auto* irr = std::get_if<IrrReport>(&report.payload)) {
        payload["rate"] = irr->result.rate;
        payload["residual_npv"] = irr->result.residual_npv;
        payload["iterations"] = irr->result.iterations;
    } else if (const auto* ranking = std::get_if<RankingReport>(&report.payload)) {
        if (ranking->chosen) payload["chosen"] = *ranking->chosen;
        else payload["chosen"] = nullptr;
        payload["ranking"] = ordered_json::array();
        for (const auto& [id, distance] : ranking->ranking) {
            payload["ranking"].push_back({{"id", id}, {"distance", distance}});
        }
    } else {
        const auto& trend = std::get<TrendReport>(report.payload);
        payload["series"] = ordered_json::array();
        for (const auto& [label, fit] : trend.rows) {
            payload["series"].push_back({{"label", label},
                                         {"slope", fit.slope},
                                         {"intercept", fit.intercept},
                                         {"r_squared", fit.r_squared}});
        }
    }
    return payload;
}

} // namespace

std::string ReportDocument::kind() const {
    switch (payload.index()) {
    case 0: return "plan";
    case 1: return "irr";
    case 2: return "ranking";
    default: return "trend";
    }
}

std::string render_report(const ReportDocument& report, ReportFormat format) {
    if (format == ReportFormat::table) {
        std::string out = render_header(report);
        if (const auto* plan = std::get_if<PlanReport>(&report.payload)) {
            out += render_plan_table(*plan);
        } else if (const auto* irr = std::get_if<IrrReport>(&report.payload)) {
            out += render_irr_table(*irr);
        } else if (const auto* ranking = std::get_if<RankingReport>(&report.payload)) {
            out += render_ranking_table(*ranking);
        } else {
            out += render_trend_table(std::get<TrendReport>(report.payload));
        }
        return out;
    }

    ordered_json doc;
    doc["kind"] = report.kind();
    ordered_json metadata;
    metadata["tool_version"] = report.metadata.tool_version;
    metadata["input_digest"] = report.metadata.input_digest;
    if (!report.metadata.timestamp.empty()) {
        metadata["timestamp"] = report.metadata.timestamp;
    }
    doc["metadata"] = std::move(metadata);
    doc["payload"] = payload_to_json(report);
    return doc.dump(2) + "\n";
}

void emit_report(const ReportDocument& report, ReportFormat format,
                 const std::filesystem::path& path) {
    write_file(path, render_report(report, format));
}

ReportDocument report_from_json(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_json(text, origin);
    ReportDocument report;

    const ordered_json& metadata = require_member(doc, origin, "", "metadata");
    report.metadata.tool_version = require_string(metadata, origin, "metadata", "tool_version");
    report.metadata.input_digest = require_string(metadata, origin, "metadata", "input_digest");
    if (const auto it = metadata.find("timestamp"); it != metadata.end()) {
        report.metadata.timestamp = as_string(*it, origin, "metadata.timestamp");
    }

    const std::string kind = require_string(doc, origin, "", "kind");
    const ordered_json& payload = require_member(doc, origin, "", "payload");
    if (kind == "plan") {
        report.payload = PlanReport{matrix_from_json(payload, origin, "payload")};
    } else if (kind == "irr") {
        IrrReport irr;
        irr.result.rate = require_number(payload, origin, "payload", "rate");
        irr.result.residual_npv = require_number(payload, origin, "payload", "residual_npv");
        irr.result.iterations = as_int(require_member(payload, origin, "payload", "iterations"),
                                       origin, "payload.iterations");
        report.payload = std::move(irr);
    } else if (kind == "ranking") {
        RankingReport ranking;
        const ordered_json& chosen = require_member(payload, origin, "payload", "chosen");
        if (!chosen.is_null()) {
            ranking.chosen = as_string(chosen, origin, "payload.chosen");
        }
        for (const ordered_json& row : as_array(require_member(payload, origin, "payload",
                                                               "ranking"),
                                                origin, "payload.ranking")) {
            ranking.ranking.emplace_back(
                require_string(row, origin, "payload.ranking", "id"),
                require_number(row, origin, "payload.ranking", "distance"));
        }
        report.payload = std::move(ranking);
    } else if (kind == "trend") {
        TrendReport trend;
        for (const ordered_json& row : as_array(require_member(payload, origin, "payload",
                                                               "series"),
                                                origin, "payload.series")) {
            TrendResult fit;
            fit.slope = require_number(row, origin, "payload.series", "slope");
            fit.intercept = require_number(row, origin, "payload.series", "intercept");
            fit.r_squared = require_number(row, origin, "payload.series", "r_squared");
            trend.rows.emplace_back(require_string(row, origin, "payload.series", "label"),
                                    fit);
        }
        report.payload = std::move(trend);
    } else {
        throw ParseError(origin + ": unknown report kind '" + kind + "'", 0, "kind");
    }
    return report;
}

ReportDocument load_report(const std::filesystem::path& path) {
    return report_from_json(read_file(path), path.filename().string());
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string input_digest(std::string_view content, bool is_json) {
    std::string canonical;
    if (is_json) {
        // Sorted-key re-serialization so formatting differences do not
        // change the digest.
        try {
            canonical = nlohmann::json::parse(content).dump();
        } catch (const nlohmann::json::parse_error&) {
            canonical.assign(content);
        }
    } else {
        canonical.reserve(content.size());
        for (char c : content) {
            if (c != '\r') canonical += c;
        }
        while (!canonical.empty() && canonical.back() == '\n') canonical.pop_back();
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return std::string("fnv1a64:") + buffer;
}

} // namespace rndkit::io
