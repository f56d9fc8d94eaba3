#include <charconv>
#include <string_view>

#include "rndkit/io.hpp"

namespace rndkit::io {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                             text.front() == '\r')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                             text.back() == '\r')) {
        text.remove_suffix(1);
    }
    return text;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

/// Non-empty lines with their 1-based line numbers; trailing blank lines are
/// ignored, interior blank lines are an error.
std::vector<std::pair<std::size_t, std::string_view>> csv_lines(std::string_view text,
                                                                const std::string& origin) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    std::size_t start = 0;
    std::size_t blank_from = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            ++line_no;
            const std::string_view raw = text.substr(start, i - start);
            if (!trim(raw).empty()) {
                if (blank_from != 0) {
                    throw ParseError(origin + ": blank line inside data", blank_from, "");
                }
                lines.emplace_back(line_no, raw);
            } else if (!lines.empty() && blank_from == 0) {
                blank_from = line_no;
            }
            start = i + 1;
        }
    }
    if (lines.empty()) {
        throw ParseError(origin + ": empty file", 0, "");
    }
    return lines;
}

int parse_int(std::string_view cell, const std::string& origin, std::size_t line,
              const std::string& field) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(origin + ": expected an integer, got '" + std::string(cell) + "'",
                         line, field);
    }
    return value;
}

double parse_double(std::string_view cell, const std::string& origin, std::size_t line,
                    const std::string& field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(origin + ": expected a number, got '" + std::string(cell) + "'",
                         line, field);
    }
    return value;
}

} // namespace

std::vector<TimeSeries> series_from_csv(const std::string& text, const std::string& origin) {
    const auto lines = csv_lines(text, origin);

    const auto header = split_cells(lines.front().second);
    if (header.empty() || header[0] != "period") {
        throw ParseError(origin + ": header must start with 'period'", lines.front().first,
                         "period");
    }
    if (header.size() < 2) {
        throw ParseError(origin + ": need at least one value column", lines.front().first, "");
    }
    std::vector<TimeSeries> series(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty()) {
            throw ParseError(origin + ": empty series label", lines.front().first,
                             "column " + std::to_string(c + 1));
        }
        series[c - 1].label = std::string(header[c]);
    }

    if (lines.size() < 2) {
        throw ParseError(origin + ": no data rows", lines.front().first, "");
    }

    int previous_period = 0;
    bool first = true;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto [line_no, raw] = lines[r];
        const auto cells = split_cells(raw);
        if (cells.size() != header.size()) {
            throw ParseError(origin + ": expected " + std::to_string(header.size()) +
                                 " columns, got " + std::to_string(cells.size()),
                             line_no, "");
        }
        const int period = parse_int(cells[0], origin, line_no, "period");
        if (!first && period <= previous_period) {
            throw NonMonotonePeriods(origin + ": period " + std::to_string(period) +
                                     " at line " + std::to_string(line_no) +
                                     " does not increase");
        }
        first = false;
        previous_period = period;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const double value =
                parse_double(cells[c], origin, line_no, std::string(header[c]));
            series[c - 1].points.push_back(TimePoint{period, value});
        }
    }
    for (const TimeSeries& s : series) {
        validate_series(s);
    }
    return series;
}

std::vector<TimeSeries> load_series(const std::filesystem::path& path) {
    return series_from_csv(read_file(path), path.filename().string());
}

CashFlowSeries cash_flow_from_csv(const std::string& text, const std::string& origin) {
    const auto lines = csv_lines(text, origin);

    const auto header = split_cells(lines.front().second);
    if (header.size() != 3 || header[0] != "period" || header[1] != "effect" ||
        header[2] != "investment") {
        throw ParseError(origin + ": header must be 'period,effect,investment'",
                         lines.front().first, "");
    }
    if (lines.size() < 2) {
        throw ParseError(origin + ": no data rows", lines.front().first, "");
    }

    std::vector<int> periods;
    std::vector<double> effects;
    std::vector<double> investments;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto [line_no, raw] = lines[r];
        const auto cells = split_cells(raw);
        if (cells.size() != 3) {
            throw ParseError(origin + ": expected 3 columns, got " +
                                 std::to_string(cells.size()),
                             line_no, "");
        }
        const int period = parse_int(cells[0], origin, line_no, "period");
        if (period < 0) {
            throw ParseError(origin + ": period must be >= 0", line_no, "period");
        }
        if (!periods.empty() && period <= periods.back()) {
            throw NonMonotonePeriods(origin + ": period " + std::to_string(period) +
                                     " at line " + std::to_string(line_no) +
                                     " does not increase");
        }
        periods.push_back(period);
        effects.push_back(parse_double(cells[1], origin, line_no, "effect"));
        investments.push_back(parse_double(cells[2], origin, line_no, "investment"));
    }

    // Missing interior periods count as zero flows.
    CashFlowSeries series;
    series.effects.assign(static_cast<std::size_t>(periods.back()) + 1, 0.0);
    series.investments.assign(static_cast<std::size_t>(periods.back()) + 1, 0.0);
    for (std::size_t i = 0; i < periods.size(); ++i) {
        series.effects[static_cast<std::size_t>(periods[i])] = effects[i];
        series.investments[static_cast<std::size_t>(periods[i])] = investments[i];
    }
    validate_cash_flow(series);
    return series;
}

CashFlowSeries load_cashflows(const std::filesystem::path& path) {
    return cash_flow_from_csv(read_file(path), path.filename().string());
}

} // namespace rndkit::io
