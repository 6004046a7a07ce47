#include "crysl/rule.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace crysl {

namespace {

std::string trim(const std::string& text)
{
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto begin = std::find_if_not(text.begin(), text.end(), is_space);
    auto end = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_identifier(const std::string& text)
{
    return !text.empty() && std::all_of(text.begin(), text.end(), is_ident_char)
           && std::isdigit(static_cast<unsigned char>(text.front())) == 0;
}

bool is_integer(const std::string& text)
{
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    return text.size() > start
           && std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                          [](unsigned char c) { return std::isdigit(c) != 0; });
}

/// One ";"-terminated statement with the line it started on.
struct Statement
{
    std::string text;
    int line = 0;
};

struct Section
{
    std::vector<Statement> statements;
    int line = 0; // line of the section keyword
    bool present = false;
};

Literal parse_literal(const std::string& token, int line)
{
    if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
        return Literal{token.substr(1, token.size() - 2)};
    }
    if (is_integer(token)) {
        return Literal{static_cast<std::int64_t>(std::stoll(token))};
    }
    throw RuleParseError(line, "expected an integer or a quoted string, got \"" + token + "\"");
}

std::vector<std::string> split_top_level(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    bool in_string = false;
    for (const char c : text) {
        if (c == '"') {
            in_string = !in_string;
        }
        if (!in_string) {
            if (c == '(' || c == '{' || c == '[') {
                ++depth;
            } else if (c == ')' || c == '}' || c == ']') {
                --depth;
            }
        }
        if (c == sep && depth == 0 && !in_string) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

Membership parse_membership(const std::string& text, int line)
{
    const std::size_t in_pos = text.find(" in ");
    if (in_pos == std::string::npos) {
        throw RuleParseError(line, "expected \"<object> in {...}\", got \"" + trim(text) + "\"");
    }
    Membership membership;
    membership.object_name = trim(text.substr(0, in_pos));
    if (!is_identifier(membership.object_name)) {
        throw RuleParseError(line, "bad object name \"" + membership.object_name + "\"");
    }
    std::string set_text = trim(text.substr(in_pos + 4));
    if (set_text.size() < 2 || set_text.front() != '{' || set_text.back() != '}') {
        throw RuleParseError(line, "membership set must be enclosed in {...}");
    }
    set_text = set_text.substr(1, set_text.size() - 2);
    for (const std::string& part : split_top_level(set_text, ',')) {
        const std::string token = trim(part);
        if (token.empty()) {
            throw RuleParseError(line, "empty literal in membership set");
        }
        membership.allowed.push_back(parse_literal(token, line));
    }
    if (membership.allowed.empty()) {
        throw RuleParseError(line, "membership set must be non-empty");
    }
    return membership;
}

class OrderParser
{
public:
    OrderParser(const std::string& text, int line) : text_(text), line_(line) {}

    OrderExpr parse()
    {
        OrderExpr expr = parse_seq();
        skip_spaces();
        if (pos_ != text_.size()) {
            throw RuleParseError(line_, "unexpected \"" + text_.substr(pos_) + "\" in ORDER");
        }
        return expr;
    }

private:
    // seq := alt ("," alt)*       sequence binds loosest
    OrderExpr parse_seq()
    {
        std::vector<OrderExpr> parts{parse_alt()};
        while (peek() == ',') {
            ++pos_;
            parts.push_back(parse_alt());
        }
        if (parts.size() == 1) {
            return std::move(parts.front());
        }
        OrderExpr expr;
        expr.kind = OrderExpr::Kind::kSeq;
        expr.children = std::move(parts);
        return expr;
    }

    OrderExpr parse_alt()
    {
        std::vector<OrderExpr> parts{parse_postfix()};
        while (peek() == '|') {
            ++pos_;
            parts.push_back(parse_postfix());
        }
        if (parts.size() == 1) {
            return std::move(parts.front());
        }
        OrderExpr expr;
        expr.kind = OrderExpr::Kind::kAlt;
        expr.children = std::move(parts);
        return expr;
    }

    OrderExpr parse_postfix()
    {
        OrderExpr expr = parse_primary();
        while (true) {
            const char c = peek();
            OrderExpr::Kind kind;
            if (c == '?') {
                kind = OrderExpr::Kind::kOpt;
            } else if (c == '*') {
                kind = OrderExpr::Kind::kStar;
            } else if (c == '+') {
                kind = OrderExpr::Kind::kPlus;
            } else {
                return expr;
            }
            ++pos_;
            OrderExpr wrapped;
            wrapped.kind = kind;
            wrapped.children.push_back(std::move(expr));
            expr = std::move(wrapped);
        }
    }

    OrderExpr parse_primary()
    {
        skip_spaces();
        if (pos_ >= text_.size()) {
            throw RuleParseError(line_, "ORDER expression ends unexpectedly");
        }
        if (text_[pos_] == '(') {
            ++pos_;
            OrderExpr expr = parse_seq();
            skip_spaces();
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                throw RuleParseError(line_, "missing \")\" in ORDER");
            }
            ++pos_;
            return expr;
        }
        std::string name;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
            name.push_back(text_[pos_]);
            ++pos_;
        }
        if (name.empty()) {
            throw RuleParseError(line_,
                                 "expected an event or alias name in ORDER at \""
                                     + text_.substr(pos_, 8) + "\"");
        }
        OrderExpr expr;
        expr.kind = OrderExpr::Kind::kAtom;
        expr.atom = name;
        return expr;
    }

    char peek()
    {
        skip_spaces();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_spaces()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    const std::string& text_;
    int line_;
    std::size_t pos_ = 0;
};

class RuleParser
{
public:
    explicit RuleParser(const std::string& text) : text_(text) {}

    RuleSpec parse()
    {
        split_sections();
        parse_objects();
        parse_events();
        parse_order();
        parse_constraints();
        parse_predicates(sections_["REQUIRES"], rule_.requires_predicates);
        parse_predicates(sections_["ENSURES"], rule_.ensures_predicates);
        resolve_names();
        return std::move(rule_);
    }

private:
    void split_sections()
    {
        static const std::set<std::string> kSectionNames = {"OBJECTS", "EVENTS", "ORDER",
                                                            "CONSTRAINTS", "REQUIRES", "ENSURES"};
        Section* current = nullptr;
        Statement pending;
        int line_no = 0;
        std::size_t pos = 0;
        bool saw_spec = false;

        const auto flush = [&]() {
            if (current != nullptr && !trim(pending.text).empty()) {
                current->statements.push_back({trim(pending.text), pending.line});
            }
            pending = Statement{};
        };

        while (pos <= text_.size()) {
            const std::size_t eol = text_.find('\n', pos);
            const std::string raw =
                eol == std::string::npos ? text_.substr(pos) : text_.substr(pos, eol - pos);
            ++line_no;
            const std::string line = trim(raw);

            if (line.rfind("SPEC", 0) == 0
                && (line.size() == 4 || std::isspace(static_cast<unsigned char>(line[4])) != 0)) {
                if (saw_spec) {
                    throw RuleParseError(line_no, "duplicate SPEC line");
                }
                saw_spec = true;
                rule_.class_name = trim(line.substr(4));
                if (rule_.class_name.empty()) {
                    throw RuleParseError(line_no, "SPEC line has no class name");
                }
            } else if (kSectionNames.contains(line)) {
                flush();
                current = &sections_[line];
                current->present = true;
                current->line = line_no;
            } else if (!line.empty()) {
                if (!saw_spec) {
                    throw RuleParseError(line_no, "rule text must start with a SPEC line");
                }
                if (current == nullptr) {
                    throw RuleParseError(line_no, "statement before any section keyword");
                }
                // Accumulate into ";"-terminated statements.
                std::string rest = line;
                while (true) {
                    const std::size_t semi = find_top_level_semicolon(rest);
                    if (pending.text.empty()) {
                        pending.line = line_no;
                    }
                    if (semi == std::string::npos) {
                        pending.text += (pending.text.empty() ? "" : " ") + rest;
                        break;
                    }
                    pending.text += (pending.text.empty() ? "" : " ") + rest.substr(0, semi);
                    current->statements.push_back({trim(pending.text), pending.line});
                    pending = Statement{};
                    rest = trim(rest.substr(semi + 1));
                    if (rest.empty()) {
                        break;
                    }
                }
            }

            if (eol == std::string::npos) {
                break;
            }
            pos = eol + 1;
        }
        flush();

        if (!saw_spec) {
            throw RuleParseError(1, "missing SPEC line");
        }
        if (!sections_["EVENTS"].present || sections_["EVENTS"].statements.empty()) {
            throw RuleParseError(line_no, "missing EVENTS section");
        }
        if (!sections_["ORDER"].present || sections_["ORDER"].statements.empty()) {
            throw RuleParseError(line_no, "missing ORDER section");
        }
    }

    static std::size_t find_top_level_semicolon(const std::string& text)
    {
        bool in_string = false;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '"') {
                in_string = !in_string;
            } else if (text[i] == ';' && !in_string) {
                return i;
            }
        }
        return std::string::npos;
    }

    void parse_objects()
    {
        for (const Statement& stmt : sections_["OBJECTS"].statements) {
            const std::size_t space = stmt.text.find_last_of(" \t");
            if (space == std::string::npos) {
                throw RuleParseError(stmt.line,
                                     "object declaration needs a type and a name: \"" + stmt.text
                                         + "\"");
            }
            const std::string name = trim(stmt.text.substr(space + 1));
            const std::string type = trim(stmt.text.substr(0, space));
            if (!is_identifier(name)) {
                throw RuleParseError(stmt.line, "bad object name \"" + name + "\"");
            }
            if (!rule_.objects.emplace(name, type).second) {
                throw RuleParseError(stmt.line, "duplicate object \"" + name + "\"");
            }
        }
    }

    void parse_events()
    {
        for (const Statement& stmt : sections_["EVENTS"].statements) {
            const std::size_t alias_sep = stmt.text.find(":=");
            if (alias_sep != std::string::npos) {
                parse_alias(stmt, alias_sep);
                continue;
            }
            parse_event(stmt);
        }
    }

    void parse_alias(const Statement& stmt, std::size_t sep)
    {
        const std::string name = trim(stmt.text.substr(0, sep));
        if (!is_identifier(name)) {
            throw RuleParseError(stmt.line, "bad alias name \"" + name + "\"");
        }
        std::vector<std::string> members;
        for (const std::string& part : split_top_level(stmt.text.substr(sep + 2), '|')) {
            const std::string member = trim(part);
            if (!is_identifier(member)) {
                throw RuleParseError(stmt.line, "bad alias member \"" + member + "\"");
            }
            members.push_back(member);
        }
        if (members.empty()) {
            throw RuleParseError(stmt.line, "alias \"" + name + "\" has no members");
        }
        if (declared(name)) {
            throw RuleParseError(stmt.line, "duplicate event/alias name \"" + name + "\"");
        }
        rule_.aliases.emplace(name, std::move(members));
    }

    void parse_event(const Statement& stmt)
    {
        const std::size_t colon = stmt.text.find(':');
        if (colon == std::string::npos) {
            throw RuleParseError(stmt.line, "expected \"label: method(...)\": \"" + stmt.text + "\"");
        }
        EventDecl event;
        event.label = trim(stmt.text.substr(0, colon));
        if (!is_identifier(event.label)) {
            throw RuleParseError(stmt.line, "bad event label \"" + event.label + "\"");
        }
        if (declared(event.label)) {
            throw RuleParseError(stmt.line, "duplicate event/alias name \"" + event.label + "\"");
        }

        std::string call = trim(stmt.text.substr(colon + 1));
        const std::size_t open = call.find('(');
        if (open == std::string::npos || call.back() != ')') {
            throw RuleParseError(stmt.line, "event must be a call \"method(...)\": \"" + call + "\"");
        }
        std::string head = trim(call.substr(0, open));
        const std::size_t assign = head.find('=');
        if (assign != std::string::npos) {
            event.binds = trim(head.substr(0, assign));
            if (!is_identifier(*event.binds)) {
                throw RuleParseError(stmt.line, "bad binding name \"" + *event.binds + "\"");
            }
            head = trim(head.substr(assign + 1));
        }
        if (!is_identifier(head)) {
            throw RuleParseError(stmt.line, "bad method name \"" + head + "\"");
        }
        event.method_name = head;

        const std::string args = trim(call.substr(open + 1, call.size() - open - 2));
        if (!args.empty()) {
            for (const std::string& part : split_top_level(args, ',')) {
                const std::string token = trim(part);
                Param param;
                if (token == "_") {
                    param.kind = Param::Kind::kWildcard;
                } else if (is_identifier(token)) {
                    param.kind = Param::Kind::kObject;
                    param.object_name = token;
                } else {
                    param.kind = Param::Kind::kLiteral;
                    param.literal = parse_literal(token, stmt.line);
                }
                event.params.push_back(std::move(param));
            }
        }
        event_lines_.emplace(event.label, stmt.line);
        rule_.events.push_back(std::move(event));
    }

    void parse_order()
    {
        const Section& section = sections_["ORDER"];
        std::string text;
        int line = section.line;
        for (const Statement& stmt : section.statements) {
            if (!text.empty()) {
                throw RuleParseError(stmt.line, "ORDER must be a single expression");
            }
            text = stmt.text;
            line = stmt.line;
        }
        rule_.order = OrderParser(text, line).parse();
    }

    void parse_constraints()
    {
        for (const Statement& stmt : sections_["CONSTRAINTS"].statements) {
            Constraint constraint;
            const std::size_t arrow = stmt.text.find("=>");
            if (arrow != std::string::npos) {
                constraint.antecedent = parse_membership(stmt.text.substr(0, arrow), stmt.line);
                constraint.consequent = parse_membership(stmt.text.substr(arrow + 2), stmt.line);
            } else {
                constraint.consequent = parse_membership(stmt.text, stmt.line);
            }
            constraint_lines_.push_back(stmt.line);
            rule_.constraints.push_back(std::move(constraint));
        }
    }

    void parse_predicates(const Section& section, std::vector<PredicateRef>& out)
    {
        for (const Statement& stmt : section.statements) {
            const std::size_t open = stmt.text.find('[');
            if (open == std::string::npos || stmt.text.back() != ']') {
                throw RuleParseError(stmt.line,
                                     "expected \"predicate[args]\": \"" + stmt.text + "\"");
            }
            PredicateRef pred;
            pred.name = trim(stmt.text.substr(0, open));
            if (!is_identifier(pred.name)) {
                throw RuleParseError(stmt.line, "bad predicate name \"" + pred.name + "\"");
            }
            const std::string args = stmt.text.substr(open + 1, stmt.text.size() - open - 2);
            for (const std::string& part : split_top_level(args, ',')) {
                const std::string token = trim(part);
                if (!token.empty()) {
                    pred.args.push_back(token);
                }
            }
            out.push_back(std::move(pred));
        }
    }

    [[nodiscard]] bool declared(const std::string& name) const
    {
        return rule_.aliases.contains(name)
               || std::any_of(rule_.events.begin(), rule_.events.end(),
                              [&](const EventDecl& e) { return e.label == name; });
    }

    void resolve_names()
    {
        // Alias members must resolve; the alias graph must be acyclic.
        for (const auto& [name, members] : rule_.aliases) {
            for (const std::string& member : members) {
                if (!declared(member)) {
                    throw RuleParseError(sections_["EVENTS"].line,
                                         "alias \"" + name + "\" references unknown name \""
                                             + member + "\"");
                }
            }
        }
        std::unordered_set<std::string> done;
        std::unordered_set<std::string> visiting;
        for (const auto& [name, members] : rule_.aliases) {
            check_alias_acyclic(name, done, visiting);
        }

        check_order_atoms(rule_.order);

        for (const EventDecl& event : rule_.events) {
            const int line = event_lines_.at(event.label);
            for (const Param& param : event.params) {
                if (param.kind == Param::Kind::kObject && !rule_.objects.contains(param.object_name)) {
                    throw RuleParseError(line, "event \"" + event.label
                                                   + "\" references undeclared object \""
                                                   + param.object_name + "\"");
                }
            }
            if (event.binds && !rule_.objects.contains(*event.binds)) {
                throw RuleParseError(line, "event \"" + event.label
                                               + "\" binds undeclared object \"" + *event.binds
                                               + "\"");
            }
        }

        for (std::size_t i = 0; i < rule_.constraints.size(); ++i) {
            const Constraint& constraint = rule_.constraints[i];
            const int line = constraint_lines_[i];
            const auto check_membership = [&](const Membership& membership) {
                if (!rule_.objects.contains(membership.object_name)) {
                    throw RuleParseError(line, "constraint references undeclared object \""
                                                   + membership.object_name + "\"");
                }
            };
            if (constraint.antecedent) {
                check_membership(*constraint.antecedent);
            }
            check_membership(constraint.consequent);
        }
    }

    void check_alias_acyclic(const std::string& name, std::unordered_set<std::string>& done,
                             std::unordered_set<std::string>& visiting)
    {
        if (done.contains(name)) {
            return;
        }
        if (!visiting.insert(name).second) {
            throw RuleParseError(sections_["EVENTS"].line,
                                 "alias definitions are cyclic at \"" + name + "\"");
        }
        const auto it = rule_.aliases.find(name);
        if (it != rule_.aliases.end()) {
            for (const std::string& member : it->second) {
                check_alias_acyclic(member, done, visiting);
            }
        }
        visiting.erase(name);
        done.insert(name);
    }

    void check_order_atoms(const OrderExpr& expr)
    {
        if (expr.kind == OrderExpr::Kind::kAtom) {
            if (!declared(expr.atom)) {
                throw RuleParseError(sections_["ORDER"].line,
                                     "ORDER references unknown name \"" + expr.atom + "\"");
            }
            return;
        }
        for (const OrderExpr& child : expr.children) {
            check_order_atoms(child);
        }
    }

    const std::string& text_;
    RuleSpec rule_;
    std::map<std::string, Section> sections_;
    std::map<std::string, int> event_lines_;
    std::vector<int> constraint_lines_;
};

} // namespace

std::string Literal::display() const
{
    if (std::holds_alternative<std::int64_t>(value)) {
        return std::to_string(std::get<std::int64_t>(value));
    }
    return std::get<std::string>(value);
}

const EventDecl* RuleSpec::find_event(const std::string& label) const
{
    for (const EventDecl& event : events) {
        if (event.label == label) {
            return &event;
        }
    }
    return nullptr;
}

RuleSpec parse_rule(const std::string& text)
{
    return RuleParser(text).parse();
}

} // namespace crysl
