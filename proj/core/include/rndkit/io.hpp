#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rndkit/access.hpp"
#include "rndkit/analytics.hpp"
#include "rndkit/core_model.hpp"
#include "rndkit/finance.hpp"
#include "rndkit/scheduler.hpp"
#include "rndkit/selection.hpp"

namespace rndkit::io {

/// A complete scheduling problem as persisted on disk.
struct PlanDocument {
    PlanningHorizon horizon;
    ResourceGrid grid;
    LossModel loss_model;
    std::vector<Program> programs;

    bool operator==(const PlanDocument&) const = default;
};

PlanDocument plan_from_json(const std::string& text, const std::string& origin);
std::string plan_to_json(const PlanDocument& document);
PlanDocument load_plan(const std::filesystem::path& path);
void save_plan(const PlanDocument& document, const std::filesystem::path& path);

/// Wide CSV with header `period,<label>...`: one series per value column.
std::vector<TimeSeries> series_from_csv(const std::string& text, const std::string& origin);
std::vector<TimeSeries> load_series(const std::filesystem::path& path);

/// CSV with header `period,effect,investment`; periods must be strictly
/// increasing integers >= 0; gaps are zero-filled up to the last period.
CashFlowSeries cash_flow_from_csv(const std::string& text, const std::string& origin);
CashFlowSeries load_cashflows(const std::filesystem::path& path);

std::vector<Alternative> alternatives_from_json(const std::string& text,
                                                const std::string& origin);
std::vector<Alternative> load_alternatives(const std::filesystem::path& path);

std::vector<ConstraintSet> constraints_from_json(const std::string& text,
                                                 const std::string& origin);
std::vector<ConstraintSet> load_constraints(const std::filesystem::path& path);

GoalProgram goal_from_json(const std::string& text, const std::string& origin);
GoalProgram load_goal(const std::filesystem::path& path);

AccessPolicy policy_from_json(const std::string& text, const std::string& origin);
AccessPolicy load_policy(const std::filesystem::path& path);

enum class ReportFormat { table, structured };

/// timestamp stays empty unless the caller opts in (e.g. SOURCE_DATE_EPOCH);
/// emitted bytes must not vary between identical runs.
struct ReportMetadata {
    std::string tool_version;
    std::string input_digest;
    std::string timestamp;

    bool operator==(const ReportMetadata&) const = default;
};

struct PlanReport {
    StrategyMatrix matrix;

    bool operator==(const PlanReport&) const = default;
};

struct IrrReport {
    IrrResult result;

    bool operator==(const IrrReport&) const = default;
};

struct RankingReport {
    std::optional<std::string> chosen;
    std::vector<std::pair<std::string, double>> ranking;

    bool operator==(const RankingReport&) const = default;
};

struct TrendReport {
    std::vector<std::pair<std::string, TrendResult>> rows;

    bool operator==(const TrendReport&) const = default;
};

struct ReportDocument {
    ReportMetadata metadata;
    std::variant<PlanReport, IrrReport, RankingReport, TrendReport> payload;

    /// "plan", "irr", "ranking" or "trend".
    std::string kind() const;

    bool operator==(const ReportDocument&) const = default;
};

/// Renders a report: `table` is aligned human-readable text with numbers at
/// 6 significant digits; `structured` is JSON with stable key order and
/// full-precision numbers. Both are byte-stable for identical inputs.
std::string render_report(const ReportDocument& report, ReportFormat format);
void emit_report(const ReportDocument& report, ReportFormat format,
                 const std::filesystem::path& path);

/// Reads a structured report back; inverse of the structured render.
ReportDocument report_from_json(const std::string& text, const std::string& origin);
ReportDocument load_report(const std::filesystem::path& path);

/// Self-contained SVG: one polyline per series plus one fitted straight line
/// per trend, with period/value axes and a legend of series labels.
std::string plot_to_svg(std::span<const std::pair<TimeSeries, TrendResult>> series);
void emit_plot(std::span<const std::pair<TimeSeries, TrendResult>> series,
               const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:" + 16 hex digits over a canonical form of the input: JSON is
/// re-serialized with sorted keys, other text gets newline-normalized.
std::string input_digest(std::string_view content, bool is_json);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Defaults document pointed to by the RND_KIT_CONFIG environment variable.
struct ToolConfig {
    std::optional<ReportFormat> format;
    std::optional<double> irr_bracket_lo;
    std::optional<double> irr_bracket_hi;
    std::optional<double> irr_tolerance;
    bool quiet = false;
};

ToolConfig config_from_json(const std::string& text, const std::string& origin);

/// Empty config when the variable is unset.
ToolConfig load_config_from_env();

} // namespace rndkit::io
