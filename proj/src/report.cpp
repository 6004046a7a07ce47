#include "cogni/report.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace cogni {

namespace {

constexpr const char* kClassHeader = "Findings in Java Class:";
constexpr const char* kMethodHeader = "in Method:";
constexpr const char* kViolationSeparator = " violating CrySL rule for ";
constexpr const char* kObjectMarker = "(on Object #";
constexpr const char* kStatementPrefix = "at statement:";
constexpr const char* kLinePrefix = "at line:";

std::string trim(const std::string& text)
{
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto begin = std::find_if_not(text.begin(), text.end(), is_space);
    auto end = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

std::string strip_whitespace(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            out.push_back(c);
        }
    }
    return out;
}

struct Parser
{
    TextReport report;
    std::unordered_set<std::string> class_names;

    ClassFindings* current_class = nullptr;
    MethodFindings* current_method = nullptr;

    bool in_finding = false;
    Finding pending;
    int pending_header_line = 0;
    bool pending_has_line = false;

    void finish_finding()
    {
        if (!in_finding) {
            return;
        }
        if (!pending_has_line) {
            throw ReportParseError(pending_header_line, "finding block has no \"at line:\" entry");
        }
        current_method->findings.push_back(std::move(pending));
        pending = Finding{};
        in_finding = false;
        pending_has_line = false;
    }

    void finish_method(int line_no)
    {
        finish_finding();
        if (current_method != nullptr && current_method->findings.empty()) {
            throw ReportParseError(line_no, "method block has no findings");
        }
        current_method = nullptr;
    }

    void start_class(const std::string& name, int line_no)
    {
        finish_method(line_no);
        if (name.empty()) {
            throw ReportParseError(line_no, "class header has no class name");
        }
        if (!class_names.insert(name).second) {
            throw ReportParseError(line_no, "duplicate class block \"" + name + "\"");
        }
        report.classes.push_back(ClassFindings{name, {}});
        current_class = &report.classes.back();
    }

    void start_method(const std::string& signature, int line_no)
    {
        finish_method(line_no);
        if (current_class == nullptr) {
            throw ReportParseError(line_no, "\"in Method:\" before any class header");
        }
        if (signature.empty()) {
            throw ReportParseError(line_no, "method header has no signature");
        }
        current_class->methods.push_back(MethodFindings{signature, {}});
        current_method = &current_class->methods.back();
    }

    void start_finding(const std::string& line, int line_no)
    {
        finish_finding();
        if (current_method == nullptr) {
            throw ReportParseError(line_no, "finding before any \"in Method:\" header");
        }

        const std::size_t sep = line.find(kViolationSeparator);
        const std::string type_token = trim(line.substr(0, sep));
        const std::optional<ErrorType> type = error_type_from_string(type_token);
        if (!type) {
            throw ReportParseError(line_no, "unknown error type \"" + type_token + "\"");
        }

        const std::size_t rest_at = sep + std::string(kViolationSeparator).size();
        const std::size_t marker = line.find(kObjectMarker, rest_at);
        if (marker == std::string::npos) {
            throw ReportParseError(line_no, "finding header has no \"(on Object #...)\" clause");
        }
        const std::string rule_class = trim(line.substr(rest_at, marker - rest_at));
        if (rule_class.empty()) {
            throw ReportParseError(line_no, "finding header has no rule class");
        }
        const std::size_t hex_begin = marker + std::string(kObjectMarker).size();
        const std::size_t close = line.rfind(')');
        if (close == std::string::npos || close < hex_begin) {
            throw ReportParseError(line_no, "unterminated \"(on Object #...)\" clause");
        }
        // Long object hashes can carry a wrapped-in space; drop any whitespace.
        const std::string object_id = strip_whitespace(line.substr(hex_begin, close - hex_begin));

        pending = Finding{};
        pending.error_type = *type;
        pending.rule_class = rule_class;
        pending.object_id = object_id;
        pending_header_line = line_no;
        in_finding = true;
        pending_has_line = false;
    }

    void statement_line(const std::string& line, int line_no)
    {
        if (!in_finding) {
            throw ReportParseError(line_no, "\"at statement:\" outside a finding block");
        }
        pending.statement = trim(line.substr(std::string(kStatementPrefix).size()));
    }

    void line_number_line(const std::string& line, int line_no)
    {
        if (!in_finding) {
            throw ReportParseError(line_no, "\"at line:\" outside a finding block");
        }
        const std::string value = trim(line.substr(std::string(kLinePrefix).size()));
        if (value.empty()
            || !std::all_of(value.begin(), value.end(),
                            [](unsigned char c) { return std::isdigit(c) != 0; })) {
            throw ReportParseError(line_no, "\"at line:\" value is not an integer: \"" + value + "\"");
        }
        const long long parsed = std::stoll(value);
        if (parsed < 1) {
            throw ReportParseError(line_no, "\"at line:\" value must be positive");
        }
        pending.line = parsed;
        pending_has_line = true;
    }

    void detail_line(const std::string& line, int line_no)
    {
        if (!in_finding) {
            throw ReportParseError(line_no, "unexpected line outside a finding block");
        }
        pending.detail_lines.push_back(line);
    }
};

} // namespace

std::string to_string(ErrorType type)
{
    switch (type) {
    case ErrorType::kConstraintError:
        return "ConstraintError";
    case ErrorType::kNeverTypeOfError:
        return "NeverTypeOfError";
    case ErrorType::kForbiddenMethodError:
        return "ForbiddenMethodError";
    case ErrorType::kTypestateError:
        return "TypestateError";
    case ErrorType::kRequiredPredicateError:
        return "RequiredPredicateError";
    case ErrorType::kImpreciseValueExtractionError:
        return "ImpreciseValueExtractionError";
    case ErrorType::kIncompleteOperationError:
        return "IncompleteOperationError";
    }
    return "ConstraintError";
}

std::optional<ErrorType> error_type_from_string(const std::string& token)
{
    for (const ErrorType type : kAllErrorTypes) {
        if (token == to_string(type)) {
            return type;
        }
    }
    return std::nullopt;
}

TextReport parse_report(const std::string& text)
{
    Parser parser;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string raw =
            eol == std::string::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        ++line_no;

        const std::string line = trim(raw);
        if (line.empty()) {
            parser.finish_finding();
        } else if (line.rfind(kClassHeader, 0) == 0) {
            parser.start_class(trim(line.substr(std::string(kClassHeader).size())), line_no);
        } else if (line.rfind(kMethodHeader, 0) == 0) {
            parser.start_method(trim(line.substr(std::string(kMethodHeader).size())), line_no);
        } else if (line.find(kViolationSeparator) != std::string::npos) {
            parser.start_finding(line, line_no);
        } else if (line.rfind(kStatementPrefix, 0) == 0) {
            parser.statement_line(line, line_no);
        } else if (line.rfind(kLinePrefix, 0) == 0) {
            parser.line_number_line(line, line_no);
        } else {
            parser.detail_line(line, line_no);
        }

        if (eol == std::string::npos) {
            break;
        }
        pos = eol + 1;
    }
    parser.finish_method(line_no);
    return parser.report;
}

const ErrorDescription& describe(ErrorType type)
{
    static const std::array<ErrorDescription, 7> catalog = {{
        {"A constraint on a method call parameter is violated.",
         "A constraint of a CrySL rule is violated, e.g., a key is generated with the wrong key "
         "size."},
        {"A variable is of an insecure type.",
         "This error is reported when a variable is of an insecure type, such as a password "
         "contained in a string instead of a char array."},
        {"A deprecated or insecure method is called.",
         "This error is raised when a deprecated or insecure method is called, such as the "
         "constructor PBEKeySpec(char[] password)."},
        {"A call to a method is issued when it shouldn't be.",
         "The ORDER block of CrySL is violated, i.e., the expected method sequence call to be "
         "made is incorrect. For example, a Signature object expects a call to initSign(key) "
         "prior to update(data)."},
        {"An object requires another object to be used in a specific way.",
         "This error refers to a second-degree ConstraintError: when an object requires another "
         "object to be used in a specific way, and this was not the case. For example, a Cipher "
         "object receiving a hardcoded key will raise an error, since such keys should not be "
         "hardcoded."},
        {"A parameter passed to a cryptographic method could not be retrieved.",
         "This error is used when the analysis could not retrieve the parameter passed to a "
         "cryptographic method, for example when a key size is supplied in a configuration file "
         "instead of in the code. Since the parameter could be faulty, an error of lesser "
         "importance is raised."},
        {"A required method call is missing.",
         "This error relates to the TypestateError, but instead of referring to a wrong method "
         "call, it is raised when a missing call is detected. An example is never calling "
         "Cipher.doFinal() on a cipher object."},
    }};
    return catalog[static_cast<std::size_t>(type)];
}

std::string render_report(const ClassFindings& findings)
{
    std::string out = "Findings in Java Class: " + findings.class_name + "\n";
    for (const MethodFindings& method : findings.methods) {
        out += "\n\t in Method: " + method.method_signature + "\n";
        bool first = true;
        for (const Finding& finding : method.findings) {
            if (!first) {
                out += "\n";
            }
            first = false;
            out += "\t\t" + to_string(finding.error_type) + kViolationSeparator
                   + finding.rule_class + " " + kObjectMarker + finding.object_id + ")\n";
            for (const std::string& detail : finding.detail_lines) {
                out += "\t\t\t" + detail + "\n";
            }
            if (finding.statement) {
                out += "\t\t\tat statement: " + *finding.statement + "\n";
            }
            out += "\t\t\tat line: " + std::to_string(finding.line) + "\n";
        }
    }
    return out;
}

std::string render_report(const TextReport& report)
{
    std::string out;
    bool first = true;
    for (const ClassFindings& findings : report.classes) {
        if (!first) {
            out += "\n";
        }
        first = false;
        out += render_report(findings);
    }
    return out;
}

std::string bare_method_name(const std::string& method_signature)
{
    std::string head = trim(method_signature);
    const std::size_t paren = head.find('(');
    if (paren != std::string::npos) {
        head = trim(head.substr(0, paren));
    }
    const std::size_t space = head.find_last_of(" \t");
    return space == std::string::npos ? head : head.substr(space + 1);
}

} // namespace cogni
