#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rndkit {

/// Error categories map 1:1 onto CLI exit codes:
/// validation -> 2, infeasible -> 3, io -> 4, internal -> 1.
enum class ErrorCategory { validation, infeasible, io, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

    int exit_code() const noexcept {
        switch (category_) {
        case ErrorCategory::validation: return 2;
        case ErrorCategory::infeasible: return 3;
        case ErrorCategory::io: return 4;
        default: return 1;
        }
    }

private:
    ErrorCategory category_;
};

// core_model
struct InvalidProgram : Error {
    explicit InvalidProgram(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct DuplicateId : Error {
    explicit DuplicateId(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct NonPositiveStep : Error {
    explicit NonPositiveStep(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

// scheduler
struct Infeasible : Error {
    explicit Infeasible(const std::string& m) : Error(ErrorCategory::infeasible, m) {}
};
struct EmptyHorizon : Error {
    explicit EmptyHorizon(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

// finance
struct RateOutOfDomain : Error {
    explicit RateOutOfDomain(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct NoRoot : Error {
    explicit NoRoot(const std::string& m) : Error(ErrorCategory::infeasible, m) {}
};
struct IterationLimit : Error {
    explicit IterationLimit(const std::string& m) : Error(ErrorCategory::infeasible, m) {}
};

// selection
struct UnknownAttribute : Error {
    explicit UnknownAttribute(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct NoFeasibleAlternative : Error {
    explicit NoFeasibleAlternative(const std::string& m) : Error(ErrorCategory::infeasible, m) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

// analytics
struct DegenerateRange : Error {
    explicit DegenerateRange(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct TooFewPoints : Error {
    explicit TooFewPoints(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

// access
struct MalformedRule : Error {
    explicit MalformedRule(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

// io
/// Carries the input locus: line() is 1-based (0 when the error is not tied
/// to a specific line) and field() names the offending column or JSON path.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, const std::string& field)
        : Error(ErrorCategory::validation, format(message, line, field)),
          line_(line), field_(field) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& message, std::size_t line,
                              const std::string& field) {
        std::string out = message;
        if (line != 0) out += " (line " + std::to_string(line) + ")";
        if (!field.empty()) out += " [field: " + field + "]";
        return out;
    }

    std::size_t line_;
    std::string field_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct NonMonotonePeriods : Error {
    explicit NonMonotonePeriods(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorCategory::io, m) {}
};
struct EmptyInput : Error {
    explicit EmptyInput(const std::string& m) : Error(ErrorCategory::validation, m) {}
};

} // namespace rndkit
