/**
 * @file rule.hpp
 * @brief CrySL-lite rule specifications.
 *
 * Covers the surface syntax needed for JCA-style rules: SPEC, OBJECTS, EVENTS
 * (with ":=" aliases), ORDER (sequence ",", alternation "|", suffixes "?",
 * "*", "+", parentheses), CONSTRAINTS (memberships and implications between
 * them), and REQUIRES/ENSURES predicates, which are parsed and stored but
 * never evaluated.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crysl {

class RuleParseError : public std::runtime_error
{
public:
    RuleParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// A bare integer or a quoted string; equal by value, no numeric coercion.
struct Literal
{
    std::variant<std::int64_t, std::string> value;

    bool operator==(const Literal&) const = default;

    /// Message rendering: integers in decimal, strings without quotes.
    [[nodiscard]] std::string display() const;
};

struct Param
{
    enum class Kind { kObject, kWildcard, kLiteral };

    Kind kind = Kind::kObject;
    std::string object_name; // kObject
    Literal literal;         // kLiteral

    bool operator==(const Param&) const = default;
};

struct EventDecl
{
    std::string label;
    std::string method_name;
    std::vector<Param> params;
    std::optional<std::string> binds; // left-hand side of "x = method(...)"

    bool operator==(const EventDecl&) const = default;
};

struct OrderExpr
{
    enum class Kind { kAtom, kSeq, kAlt, kOpt, kStar, kPlus };

    Kind kind = Kind::kAtom;
    std::string atom;                // kAtom: event label or alias name
    std::vector<OrderExpr> children; // non-atoms

    bool operator==(const OrderExpr&) const = default;
};

struct Membership
{
    std::string object_name;
    std::vector<Literal> allowed;

    bool operator==(const Membership&) const = default;
};

/// "x in {...}" or "x in {...} => y in {...}".
struct Constraint
{
    std::optional<Membership> antecedent;
    Membership consequent;

    bool operator==(const Constraint&) const = default;
};

struct PredicateRef
{
    std::string name;
    std::vector<std::string> args;

    bool operator==(const PredicateRef&) const = default;
};

struct RuleSpec
{
    std::string class_name;
    std::map<std::string, std::string> objects; // name -> declared type
    std::vector<EventDecl> events;              // declaration order
    std::map<std::string, std::vector<std::string>> aliases;
    OrderExpr order;
    std::vector<Constraint> constraints;
    std::vector<PredicateRef> requires_predicates;
    std::vector<PredicateRef> ensures_predicates;

    [[nodiscard]] const EventDecl* find_event(const std::string& label) const;
};

/// Parses rule text in the CrySL-lite surface syntax.
[[nodiscard]] RuleSpec parse_rule(const std::string& text);

} // namespace crysl
