#include "crysl/evaluate.hpp"

#include "crysl/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>

namespace crysl {

namespace {

std::string trim(const std::string& text)
{
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto begin = std::find_if_not(text.begin(), text.end(), is_space);
    auto end = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

bool is_integer_token(const std::string& text)
{
    const std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    return text.size() > start
           && std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                          [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::vector<std::string> split_args(const std::string& text)
{
    std::vector<std::string> parts;
    std::string current;
    bool in_string = false;
    for (const char c : text) {
        if (c == '"') {
            in_string = !in_string;
        }
        if (c == ',' && !in_string) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

std::uint64_t fnv1a(const std::string& text, std::uint64_t seed)
{
    std::uint64_t hash = 14695981039346656037ULL ^ seed;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string derived_object_id(const std::string& text)
{
    static const char* digits = "0123456789abcdef";
    std::string id;
    id.reserve(64);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::uint64_t hash = fnv1a(text, seed);
        for (int nibble = 15; nibble >= 0; --nibble) {
            id.push_back(digits[(hash >> (4 * nibble)) & 0xF]);
        }
    }
    return id;
}

std::string ordinal(std::size_t index1)
{
    switch (index1) {
    case 1:
        return "First";
    case 2:
        return "Second";
    case 3:
        return "Third";
    case 4:
        return "Fourth";
    case 5:
        return "Fifth";
    default:
        return std::to_string(index1) + "th";
    }
}

std::string allowed_set_display(const Membership& membership)
{
    std::string out = "{";
    for (std::size_t i = 0; i < membership.allowed.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += membership.allowed[i].display();
    }
    out += "}";
    return out;
}

bool member_of(const Literal& value, const Membership& membership)
{
    return std::find(membership.allowed.begin(), membership.allowed.end(), value)
           != membership.allowed.end();
}

struct BoundValue
{
    Value value;
    std::size_t param_index = 1; // 1-based position in the binding event
    std::string method_name;    // method of the binding event
};

/// Method names reachable from `state`, in event-declaration order.
std::string expected_methods(const Automaton& dfa, int state, const RuleSpec& rule)
{
    std::string out;
    std::set<std::string> seen;
    for (const EventDecl& event : rule.events) {
        if (dfa.step(state, event.label).has_value() && seen.insert(event.method_name).second) {
            if (!out.empty()) {
                out += ",";
            }
            out += event.method_name;
        }
    }
    return out;
}

cogni::Finding make_finding(cogni::ErrorType type, const RuleSpec& rule, const EventTrace& trace,
                            std::int64_t line, std::string message)
{
    cogni::Finding finding;
    finding.error_type = type;
    finding.rule_class = rule.class_name;
    finding.object_id = trace.object_id;
    finding.detail_lines.push_back(std::move(message));
    finding.line = line;
    return finding;
}

} // namespace

TraceFile parse_trace_file(const std::string& text)
{
    TraceFile file;
    bool explicit_object = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string raw =
            eol == std::string::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        ++line_no;
        const std::string line = trim(raw);

        if (line.empty()) {
            // skip
        } else if (line.rfind("class:", 0) == 0) {
            file.class_name = trim(line.substr(6));
        } else if (line.rfind("method:", 0) == 0) {
            file.method_signature = trim(line.substr(7));
        } else if (line.rfind("object:", 0) == 0) {
            file.trace.object_id = trim(line.substr(7));
            explicit_object = true;
        } else {
            const std::size_t at = line.rfind('@');
            if (at == std::string::npos) {
                throw TraceParseError(line_no, "step needs \"@ <line>\": \"" + line + "\"");
            }
            const std::string line_token = trim(line.substr(at + 1));
            if (!is_integer_token(line_token) || line_token.front() == '-') {
                throw TraceParseError(line_no, "bad step line number \"" + line_token + "\"");
            }
            TraceStep step;
            step.line = std::stoll(line_token);
            if (step.line < 1) {
                throw TraceParseError(line_no, "step line number must be positive");
            }

            std::string call = trim(line.substr(0, at));
            const std::size_t open = call.find('(');
            if (open == std::string::npos) {
                step.label = call;
            } else {
                if (call.back() != ')') {
                    throw TraceParseError(line_no, "unterminated argument list: \"" + call + "\"");
                }
                step.label = trim(call.substr(0, open));
                const std::string args = trim(call.substr(open + 1, call.size() - open - 2));
                if (!args.empty()) {
                    for (const std::string& part : split_args(args)) {
                        const std::size_t eq = part.find('=');
                        if (eq == std::string::npos) {
                            throw TraceParseError(line_no,
                                                  "argument needs \"name=value\": \"" + trim(part)
                                                      + "\"");
                        }
                        const std::string name = trim(part.substr(0, eq));
                        const std::string token = trim(part.substr(eq + 1));
                        if (name.empty()) {
                            throw TraceParseError(line_no, "argument has no name");
                        }
                        Value value;
                        if (token == "?") {
                            value = Unknown{};
                        } else if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
                            value = Literal{token.substr(1, token.size() - 2)};
                        } else if (is_integer_token(token)) {
                            value = Literal{static_cast<std::int64_t>(std::stoll(token))};
                        } else {
                            throw TraceParseError(line_no,
                                                  "argument value must be an integer, a quoted "
                                                  "string, or \"?\": \""
                                                      + token + "\"");
                        }
                        step.args.emplace_back(name, std::move(value));
                    }
                }
            }
            if (step.label.empty()) {
                throw TraceParseError(line_no, "step has no event label");
            }
            file.trace.steps.push_back(std::move(step));
        }

        if (eol == std::string::npos) {
            break;
        }
        pos = eol + 1;
    }

    if (!explicit_object) {
        file.trace.object_id = derived_object_id(text);
    }
    return file;
}

std::vector<cogni::Finding> evaluate(const EventTrace& trace, const RuleSpec& rule)
{
    const Automaton dfa = build_automaton(rule.order, rule.aliases);

    std::vector<cogni::Finding> findings;
    std::map<std::string, BoundValue> bound;
    int state = dfa.initial();

    for (const TraceStep& step : trace.steps) {
        const EventDecl* event = rule.find_event(step.label);
        if (event == nullptr) {
            throw UnknownEventError("trace step label \"" + step.label
                                    + "\" is not declared in rule " + rule.class_name);
        }

        const std::optional<int> next = dfa.step(state, step.label);
        if (next.has_value()) {
            state = *next;
        } else {
            std::string message = "Unexpected call to method " + event->method_name
                                  + " on object of type " + rule.class_name + ".";
            const std::string expected = expected_methods(dfa, state, rule);
            if (!expected.empty()) {
                message += " Expect a call to one of the following methods " + expected;
            }
            findings.push_back(make_finding(cogni::ErrorType::kTypestateError, rule, trace,
                                            step.line, std::move(message)));
            // The offending call is skipped; evaluation continues from here.
        }

        std::set<std::string> rebound;
        for (const auto& [name, value] : step.args) {
            BoundValue entry;
            entry.value = value;
            entry.method_name = event->method_name;
            entry.param_index = 1;
            for (std::size_t i = 0; i < event->params.size(); ++i) {
                if (event->params[i].kind == Param::Kind::kObject
                    && event->params[i].object_name == name) {
                    entry.param_index = i + 1;
                    break;
                }
            }
            bound[name] = std::move(entry);
            rebound.insert(name);
        }

        for (const Constraint& constraint : rule.constraints) {
            std::vector<const std::string*> involved;
            if (constraint.antecedent) {
                involved.push_back(&constraint.antecedent->object_name);
            }
            involved.push_back(&constraint.consequent.object_name);

            const bool all_bound = std::all_of(involved.begin(), involved.end(),
                                               [&](const std::string* name) {
                                                   return bound.contains(*name);
                                               });
            const bool touched = std::any_of(involved.begin(), involved.end(),
                                             [&](const std::string* name) {
                                                 return rebound.contains(*name);
                                             });
            if (!all_bound || !touched) {
                continue;
            }

            const std::string* unknown_name = nullptr;
            for (const std::string* name : involved) {
                if (std::holds_alternative<Unknown>(bound.at(*name).value)) {
                    unknown_name = name;
                    break;
                }
            }
            if (unknown_name != nullptr) {
                const BoundValue& entry = bound.at(*unknown_name);
                findings.push_back(make_finding(
                    cogni::ErrorType::kImpreciseValueExtractionError, rule, trace, step.line,
                    "Could not retrieve the value of " + *unknown_name + " passed to method "
                        + entry.method_name));
                continue;
            }

            if (constraint.antecedent) {
                const Literal& antecedent_value =
                    std::get<Literal>(bound.at(constraint.antecedent->object_name).value);
                if (!member_of(antecedent_value, *constraint.antecedent)) {
                    continue;
                }
            }
            const BoundValue& entry = bound.at(constraint.consequent.object_name);
            const Literal& value = std::get<Literal>(entry.value);
            if (!member_of(value, constraint.consequent)) {
                findings.push_back(make_finding(
                    cogni::ErrorType::kConstraintError, rule, trace, step.line,
                    ordinal(entry.param_index) + " parameter (with value " + value.display()
                        + ") should be any of " + allowed_set_display(constraint.consequent)));
            }
        }
    }

    if (!trace.steps.empty() && !dfa.is_accepting(state)) {
        std::string message =
            "Operation on object of type " + rule.class_name + " not completed.";
        const std::string expected = expected_methods(dfa, state, rule);
        if (!expected.empty()) {
            message += " Expect a call to one of the following methods " + expected;
        }
        findings.push_back(make_finding(cogni::ErrorType::kIncompleteOperationError, rule, trace,
                                        trace.steps.back().line, std::move(message)));
    }

    return findings;
}

} // namespace crysl
