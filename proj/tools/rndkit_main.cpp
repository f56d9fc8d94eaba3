#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rndkit/access.hpp"
#include "rndkit/analytics.hpp"
#include "rndkit/errors.hpp"
#include "rndkit/finance.hpp"
#include "rndkit/io.hpp"
#include "rndkit/scheduler.hpp"
#include "rndkit/selection.hpp"
#include "rndkit/version.hpp"

namespace {

namespace fs = std::filesystem;
using rndkit::io::ReportFormat;

/// ISO-8601 UTC timestamp from SOURCE_DATE_EPOCH, or empty. Reports carry a
/// timestamp only when the caller pins one; emitted bytes stay identical
/// across repeated runs either way.
std::string timestamp_from_env() {
    const char* epoch_text = std::getenv("SOURCE_DATE_EPOCH");
    if (epoch_text == nullptr || *epoch_text == '\0') return "";
    char* end = nullptr;
    const long long epoch = std::strtoll(epoch_text, &end, 10);
    if (end == epoch_text || *end != '\0') return "";
    const std::time_t t = static_cast<std::time_t>(epoch);
    std::tm utc{};
    if (gmtime_r(&t, &utc) == nullptr) return "";
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

rndkit::io::ReportMetadata make_metadata(const std::string& digest) {
    return rndkit::io::ReportMetadata{RNDKIT_VERSION, digest, timestamp_from_env()};
}

std::string combine_digests(const std::vector<std::string>& digests) {
    if (digests.size() == 1) return digests.front();
    std::string joined;
    for (const std::string& d : digests) {
        joined += d;
        joined += '\n';
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(rndkit::io::fnv1a64(joined)));
    return std::string("fnv1a64:") + buffer;
}

ReportFormat resolve_format(const std::string& flag, const rndkit::io::ToolConfig& config) {
    if (flag == "table") return ReportFormat::table;
    if (flag == "structured") return ReportFormat::structured;
    if (!flag.empty()) {
        throw rndkit::ValidationError("unknown format '" + flag +
                                      "' (expected table or structured)");
    }
    return config.format.value_or(ReportFormat::table);
}

rndkit::TargetChain parse_chain(const std::string& text) {
    rndkit::TargetChain chain;
    std::size_t expected = 0;  // 0: tool, 1: object, 2: procedure
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string part = text.substr(start, comma - start);
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) {
            throw rndkit::MalformedRule("chain component '" + part +
                                        "' must look like level:id");
        }
        const std::string level = part.substr(0, colon);
        const std::string id = part.substr(colon + 1);
        if (id.empty()) {
            throw rndkit::MalformedRule("chain component '" + part + "' has an empty id");
        }
        if (level == "tool" && expected == 0) {
            chain.tool_id = id;
        } else if (level == "object" && expected == 1) {
            chain.object_id = id;
        } else if (level == "procedure" && expected == 2) {
            chain.procedure_id = id;
        } else {
            throw rndkit::MalformedRule(
                "chain must name tool, then object, then procedure; got '" + level + "'");
        }
        ++expected;
        if (comma == text.size()) break;
        start = comma + 1;
    }
    if (expected == 0) {
        throw rndkit::MalformedRule("empty target chain");
    }
    return chain;
}

struct PlanArgs {
    std::string input;
    std::string out_dir;
    std::string format;
};

int run_plan(const PlanArgs& args, const rndkit::io::ToolConfig& config, bool quiet) {
    const ReportFormat format = resolve_format(args.format, config);
    const std::string content = rndkit::io::read_file(args.input);
    const rndkit::io::PlanDocument doc =
        rndkit::io::plan_from_json(content, fs::path(args.input).filename().string());

    const rndkit::StrategyMatrix matrix =
        rndkit::optimize_schedule(doc.programs, doc.horizon, doc.loss_model, doc.grid);

    rndkit::io::ReportDocument report;
    report.metadata = make_metadata(rndkit::io::input_digest(content, true));
    report.payload = rndkit::io::PlanReport{matrix};

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) {
        throw rndkit::IoError("cannot create output directory '" + args.out_dir + "'");
    }
    const fs::path out = fs::path(args.out_dir) /
                         (format == ReportFormat::table ? "plan_report.txt"
                                                        : "plan_report.json");
    rndkit::io::emit_report(report, format, out);
    if (!quiet) {
        std::fprintf(stderr, "wrote %s\n", out.string().c_str());
        std::fprintf(stderr, "optimal objective: %.10g\n", matrix.optimal_objective);
    }
    return 0;
}

struct IrrArgs {
    std::string cashflows;
    std::string bracket;
    double tolerance = -1.0;
    std::string format;
};

int run_irr(const IrrArgs& args, const rndkit::io::ToolConfig& config) {
    const ReportFormat format = resolve_format(args.format, config);
    const std::string content = rndkit::io::read_file(args.cashflows);
    const rndkit::CashFlowSeries series = rndkit::io::cash_flow_from_csv(
        content, fs::path(args.cashflows).filename().string());

    rndkit::RateBracket bracket;
    if (config.irr_bracket_lo) bracket.lo = *config.irr_bracket_lo;
    if (config.irr_bracket_hi) bracket.hi = *config.irr_bracket_hi;
    if (!args.bracket.empty()) {
        const std::size_t comma = args.bracket.find(',');
        if (comma == std::string::npos) {
            throw rndkit::ValidationError("--bracket expects 'lo,hi'");
        }
        try {
            bracket.lo = std::stod(args.bracket.substr(0, comma));
            bracket.hi = std::stod(args.bracket.substr(comma + 1));
        } catch (const std::exception&) {
            throw rndkit::ValidationError("--bracket expects numeric 'lo,hi'");
        }
    }
    double tolerance = config.irr_tolerance.value_or(1e-10);
    if (args.tolerance > 0.0) tolerance = args.tolerance;

    const rndkit::IrrResult result = rndkit::irr(series, bracket, tolerance);

    rndkit::io::ReportDocument report;
    report.metadata = make_metadata(rndkit::io::input_digest(content, false));
    report.payload = rndkit::io::IrrReport{result};
    std::fputs(rndkit::io::render_report(report, format).c_str(), stdout);
    return 0;
}

struct SelectArgs {
    std::string alternatives;
    std::string constraints;
    std::string goal;
    bool minmax = false;
    std::string format;
};

int run_select(const SelectArgs& args, const rndkit::io::ToolConfig& config) {
    const ReportFormat format = resolve_format(args.format, config);
    if (!args.minmax && args.goal.empty()) {
        throw rndkit::ValidationError("select needs --minmax and/or --goal");
    }

    std::vector<std::string> digests;
    const std::string alt_content = rndkit::io::read_file(args.alternatives);
    digests.push_back(rndkit::io::input_digest(alt_content, true));
    std::vector<rndkit::Alternative> alternatives = rndkit::io::alternatives_from_json(
        alt_content, fs::path(args.alternatives).filename().string());

    std::vector<rndkit::ConstraintSet> constraints;
    if (!args.constraints.empty()) {
        const std::string content = rndkit::io::read_file(args.constraints);
        digests.push_back(rndkit::io::input_digest(content, true));
        constraints = rndkit::io::constraints_from_json(
            content, fs::path(args.constraints).filename().string());
    }

    const std::vector<rndkit::Alternative> feasible =
        rndkit::filter_feasible(alternatives, constraints);

    rndkit::io::RankingReport ranking;
    if (args.minmax) {
        ranking.chosen = rndkit::minmax_select(feasible).id;
    }
    if (!args.goal.empty()) {
        const std::string content = rndkit::io::read_file(args.goal);
        digests.push_back(rndkit::io::input_digest(content, true));
        const rndkit::GoalProgram goal = rndkit::io::goal_from_json(
            content, fs::path(args.goal).filename().string());
        ranking.ranking = rndkit::rank_alternatives(feasible, goal);
    }

    rndkit::io::ReportDocument report;
    report.metadata = make_metadata(combine_digests(digests));
    report.payload = std::move(ranking);
    std::fputs(rndkit::io::render_report(report, format).c_str(), stdout);
    return 0;
}

struct TrendArgs {
    std::string series;
    bool normalize = false;
    std::string plot;
    std::string format;
};

int run_trend(const TrendArgs& args, const rndkit::io::ToolConfig& config, bool quiet) {
    const ReportFormat format = resolve_format(args.format, config);
    const std::string content = rndkit::io::read_file(args.series);
    std::vector<rndkit::TimeSeries> table = rndkit::io::series_from_csv(
        content, fs::path(args.series).filename().string());

    if (args.normalize) {
        for (rndkit::TimeSeries& series : table) {
            series = rndkit::min_max_normalize(series);
        }
    }

    const auto rows = rndkit::growth_report(table);

    rndkit::io::ReportDocument report;
    report.metadata = make_metadata(rndkit::io::input_digest(content, false));
    report.payload = rndkit::io::TrendReport{rows};
    std::fputs(rndkit::io::render_report(report, format).c_str(), stdout);

    if (!args.plot.empty()) {
        std::vector<std::pair<rndkit::TimeSeries, rndkit::TrendResult>> plotted;
        plotted.reserve(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            plotted.emplace_back(table[i], rows[i].second);
        }
        rndkit::io::emit_plot(plotted, args.plot);
        if (!quiet) std::fprintf(stderr, "wrote %s\n", args.plot.c_str());
    }
    return 0;
}

struct AccessArgs {
    std::string policy;
    std::string subject;
    std::string chain;
    std::string action;
};

int run_access_check(const AccessArgs& args) {
    const rndkit::AccessPolicy policy = rndkit::io::load_policy(args.policy);
    const rndkit::TargetChain chain = parse_chain(args.chain);
    const rndkit::AccessAction action = rndkit::access_action_from_string(args.action);
    const rndkit::AccessEffect effect =
        rndkit::check_access(policy, args.subject, chain, action);
    std::printf("%s\n", rndkit::to_string(effect));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"R&D portfolio planning toolkit"};
    app.set_version_flag("--version", std::string("rndkit ") + RNDKIT_VERSION);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "Suppress informational output");
    app.require_subcommand(1);

    PlanArgs plan_args;
    CLI::App* plan = app.add_subcommand("plan", "Schedule programs over the horizon");
    plan->add_option("--input", plan_args.input, "Plan document (JSON)")->required();
    plan->add_option("--out", plan_args.out_dir, "Output directory")->required();
    plan->add_option("--format", plan_args.format, "table or structured");

    IrrArgs irr_args;
    CLI::App* irr = app.add_subcommand("irr", "Internal rate of return of a cash flow");
    irr->add_option("--cashflows", irr_args.cashflows, "Cash flow CSV")->required();
    irr->add_option("--bracket", irr_args.bracket, "Search bracket 'lo,hi'");
    irr->add_option("--tol", irr_args.tolerance, "Convergence tolerance on |npv|");
    irr->add_option("--format", irr_args.format, "table or structured");

    SelectArgs select_args;
    CLI::App* select = app.add_subcommand("select", "Filter and rank strategic alternatives");
    select->add_option("--alternatives", select_args.alternatives, "Alternatives (JSON)")
        ->required();
    select->add_option("--constraints", select_args.constraints, "Constraint sets (JSON)");
    select->add_option("--goal", select_args.goal, "Goal program (JSON)");
    select->add_flag("--minmax", select_args.minmax, "Apply the min-max choice");
    select->add_option("--format", select_args.format, "table or structured");

    TrendArgs trend_args;
    CLI::App* trend = app.add_subcommand("trend", "Linear trends of time series");
    trend->add_option("--series", trend_args.series, "Series CSV")->required();
    trend->add_flag("--normalize", trend_args.normalize, "Min-max normalize before fitting");
    trend->add_option("--plot", trend_args.plot, "Write an SVG plot to this path");
    trend->add_option("--format", trend_args.format, "table or structured");

    AccessArgs access_args;
    CLI::App* access = app.add_subcommand("access", "Access rights evaluation");
    CLI::App* check = access->add_subcommand("check", "Evaluate one access request");
    check->add_option("--policy", access_args.policy, "Policy document (JSON)")->required();
    check->add_option("--subject", access_args.subject, "Subject id")->required();
    check->add_option("--chain", access_args.chain,
                      "Target chain 'tool:T[,object:O[,procedure:P]]'")
        ->required();
    check->add_option("--action", access_args.action, "read, write or execute")->required();
    access->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const rndkit::io::ToolConfig config = rndkit::io::load_config_from_env();
        const bool effective_quiet = quiet || config.quiet;
        if (plan->parsed()) return run_plan(plan_args, config, effective_quiet);
        if (irr->parsed()) return run_irr(irr_args, config);
        if (select->parsed()) return run_select(select_args, config);
        if (trend->parsed()) return run_trend(trend_args, config, effective_quiet);
        if (access->parsed() && check->parsed()) return run_access_check(access_args);
    } catch (const rndkit::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
