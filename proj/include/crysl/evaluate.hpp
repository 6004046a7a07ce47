/**
 * @file evaluate.hpp
 * @brief Evaluation of per-object event traces against a CrySL-lite rule.
 *
 * The automaton runs over the trace: a step with no legal transition raises a
 * TypestateError and is skipped so evaluation can continue; a trace ending in
 * a non-accepting state raises an IncompleteOperationError at the last step.
 * Constraints are checked the moment all their objects are bound; a violation
 * raises a ConstraintError, and an Unknown value involved in a constraint
 * raises an ImpreciseValueExtractionError instead.
 */
#pragma once

#include "cogni/report.hpp"
#include "crysl/rule.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crysl {

/// A value the analysis could not extract.
struct Unknown
{
    bool operator==(const Unknown&) const = default;
};

using Value = std::variant<Literal, Unknown>;

struct TraceStep
{
    std::string label;
    std::vector<std::pair<std::string, Value>> args; // object name -> value
    std::int64_t line = 1;

    bool operator==(const TraceStep&) const = default;
};

struct EventTrace
{
    std::string object_id;
    std::vector<TraceStep> steps;

    bool operator==(const EventTrace&) const = default;
};

/// A trace file: optional "class:"/"method:"/"object:" headers followed by
/// one step per line, "label(name=value,...) @ line". Values are integers,
/// quoted strings, or "?" for Unknown.
struct TraceFile
{
    std::string class_name = "Main";
    std::string method_signature = "main";
    EventTrace trace;

    bool operator==(const TraceFile&) const = default;
};

class TraceParseError : public std::runtime_error
{
public:
    TraceParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

class UnknownEventError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

[[nodiscard]] TraceFile parse_trace_file(const std::string& text);

/// Runs `trace` against `rule`. Pure; findings are ordered by step.
/// Throws UnknownEventError when a step label is not declared in the rule.
[[nodiscard]] std::vector<cogni::Finding> evaluate(const EventTrace& trace, const RuleSpec& rule);

} // namespace crysl
