/**
 * @file report.hpp
 * @brief The CogniCrypt command-line report format: parse, render, error taxonomy.
 *
 * A report is a sequence of class blocks ("Findings in Java Class: <fqcn>"),
 * each holding method blocks ("in Method: <signature>") of findings. Lines are
 * whitespace-trimmed on input; tabs and spaces are interchangeable
 * indentation; blank lines separate blocks.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogni {

enum class ErrorType {
    kConstraintError,
    kNeverTypeOfError,
    kForbiddenMethodError,
    kTypestateError,
    kRequiredPredicateError,
    kImpreciseValueExtractionError,
    kIncompleteOperationError,
};

inline constexpr std::array<ErrorType, 7> kAllErrorTypes = {
    ErrorType::kConstraintError,
    ErrorType::kNeverTypeOfError,
    ErrorType::kForbiddenMethodError,
    ErrorType::kTypestateError,
    ErrorType::kRequiredPredicateError,
    ErrorType::kImpreciseValueExtractionError,
    ErrorType::kIncompleteOperationError,
};

[[nodiscard]] std::string to_string(ErrorType type);
[[nodiscard]] std::optional<ErrorType> error_type_from_string(const std::string& token);

struct Finding
{
    ErrorType error_type = ErrorType::kConstraintError;
    std::string rule_class;
    std::string object_id;
    std::vector<std::string> detail_lines;
    std::optional<std::string> statement;
    std::int64_t line = 1;

    bool operator==(const Finding&) const = default;
};

struct MethodFindings
{
    std::string method_signature;
    std::vector<Finding> findings;

    bool operator==(const MethodFindings&) const = default;
};

struct ClassFindings
{
    std::string class_name;
    std::vector<MethodFindings> methods;

    bool operator==(const ClassFindings&) const = default;
};

struct TextReport
{
    std::vector<ClassFindings> classes;

    bool operator==(const TextReport&) const = default;
};

class ReportParseError : public std::runtime_error
{
public:
    ReportParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Parses report text. The empty string yields a report with zero classes.
[[nodiscard]] TextReport parse_report(const std::string& text);

/// Short and long prose for one error type.
struct ErrorDescription
{
    std::string short_text;
    std::string full_text;
};

/// The seven error descriptions, keyed by ErrorType.
[[nodiscard]] const ErrorDescription& describe(ErrorType type);

/// Renders one class block in the command-line report format;
/// parse_report inverts it.
[[nodiscard]] std::string render_report(const ClassFindings& findings);

/// Renders a whole report (class blocks separated by blank lines).
[[nodiscard]] std::string render_report(const TextReport& report);

/// Bare method name of a signature: the last identifier before "(",
/// or the whole token when no parenthesis exists.
[[nodiscard]] std::string bare_method_name(const std::string& method_signature);

} // namespace cogni
