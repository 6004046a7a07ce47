#include "cli/cli.hpp"

#include "cogni/convert.hpp"
#include "cogni/report.hpp"
#include "crysl/evaluate.hpp"
#include "crysl/rule.hpp"
#include "sarif/aggregate.hpp"
#include "sarif/validator.hpp"
#include "sarif/writer.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

std::string read_file(const fs::path& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot read file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& bytes)
{
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    stream << bytes;
    if (!stream) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

std::string join_command_line(const std::vector<std::string>& args)
{
    std::string out = "crysarif";
    for (const std::string& arg : args) {
        out += ' ';
        out += arg;
    }
    return out;
}

struct ConvertOptions
{
    std::string input;
    std::string report_dir = ".";
    std::string tool_config;
    bool with_invocation = false;
    bool sarif_report = false; // compatibility flag; conversion always runs
};

int cmd_convert(const ConvertOptions& options, const std::vector<std::string>& argv,
                std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        text = read_file(options.input);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    cogni::ToolConfig config;
    if (!options.tool_config.empty()) {
        try {
            const std::string config_text = read_file(options.tool_config);
            config = cogni::tool_config_from_json(
                sarif::Json::parse(config_text.begin(), config_text.end()));
        } catch (const std::exception& e) {
            err << "error: bad tool config: " << e.what() << "\n";
            return kUsage;
        }
    }

    sarif::SarifLog log;
    try {
        log = cogni::convert(cogni::parse_report(text), config);
    } catch (const std::exception& e) {
        err << "error: " << options.input << ": " << e.what() << "\n";
        return kUsage;
    }

    if (options.with_invocation) {
        sarif::Invocation invocation;
        invocation.command_line = join_command_line(argv);
        const std::string now = utc_timestamp();
        invocation.start_time = now;
        invocation.end_time = now;
        log.runs.front().invocations = std::vector<sarif::Invocation>{std::move(invocation)};
    }

    const fs::path dir = options.report_dir;
    const fs::path out_path = dir / (fs::path(options.input).stem().string() + ".sarif");
    try {
        if (!dir.empty()) {
            fs::create_directories(dir);
        }
        write_file(out_path, sarif::write(log));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    out << out_path.string() << "\n";
    return kOk;
}

int cmd_validate(const std::string& input, const std::string& format, std::ostream& out,
                 std::ostream& err)
{
    std::string bytes;
    try {
        bytes = read_file(input);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    std::vector<sarif::Diagnostic> diagnostics;
    try {
        diagnostics = sarif::validate(sarif::parse(bytes));
    } catch (const sarif::JsonSyntaxError& e) {
        err << "error: " << input << ": " << e.what() << "\n";
        return kUsage;
    } catch (const sarif::ModelError& e) {
        // Shape violations render as a pseudo-check so the output stays machine-readable.
        diagnostics.push_back({"SV000", sarif::Level::kError, e.path(), e.what()});
    }

    if (format == "json") {
        out << sarif::render_json(diagnostics).dump(2) << "\n";
    } else {
        out << sarif::render_text(diagnostics);
    }
    return sarif::has_errors(diagnostics) ? kFindings : kOk;
}

int cmd_aggregate(const std::vector<std::string>& inputs, const std::string& output,
                  std::ostream& out, std::ostream& err)
{
    std::vector<sarif::SarifLog> logs;
    for (const std::string& input : inputs) {
        try {
            logs.push_back(sarif::parse(read_file(input)));
        } catch (const std::exception& e) {
            err << "error: " << input << ": " << e.what() << "\n";
            return kUsage;
        }
    }

    try {
        const sarif::AggregationReport report = sarif::aggregate(logs);
        for (const std::string& note : report.conflicts) {
            err << "note: " << note << "\n";
        }
        write_file(output, sarif::write(report.merged));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    out << output << "\n";
    return kOk;
}

struct CheckOptions
{
    std::string rule_path;
    std::string trace_path;
    std::string emit = "text";
};

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err)
{
    crysl::RuleSpec rule;
    crysl::TraceFile trace;
    std::vector<cogni::Finding> findings;
    try {
        rule = crysl::parse_rule(read_file(options.rule_path));
    } catch (const std::exception& e) {
        err << "error: " << options.rule_path << ": " << e.what() << "\n";
        return kUsage;
    }
    try {
        trace = crysl::parse_trace_file(read_file(options.trace_path));
        findings = crysl::evaluate(trace.trace, rule);
    } catch (const std::exception& e) {
        err << "error: " << options.trace_path << ": " << e.what() << "\n";
        return kUsage;
    }

    cogni::TextReport report;
    cogni::ClassFindings cls;
    cls.class_name = trace.class_name;
    if (!findings.empty()) {
        cls.methods.push_back(cogni::MethodFindings{trace.method_signature, findings});
    }
    report.classes.push_back(std::move(cls));

    const std::string rendered = cogni::render_report(report);
    if (options.emit == "sarif") {
        out << sarif::write(cogni::convert(cogni::parse_report(rendered)));
    } else {
        out << rendered;
    }
    return findings.empty() ? kOk : kFindings;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SARIF toolkit for CogniCrypt-style analysis reports"};
    app.require_subcommand(1);

    ConvertOptions convert_options;
    CLI::App* convert = app.add_subcommand(
        "convert", "Convert a CogniCrypt text report to a SARIF file");
    convert->add_option("input", convert_options.input, "report file")->required();
    convert->add_option("--reportDir,--out-dir,-o", convert_options.report_dir,
                        "directory for the generated report (default: current directory)");
    convert->add_flag("--sarifReport", convert_options.sarif_report,
                      "enable SARIF output (accepted for compatibility; always on)");
    convert->add_option("--tool-config", convert_options.tool_config,
                        "JSON file overriding the tool block");
    convert->add_flag("--with-invocation", convert_options.with_invocation,
                      "record the command line and timestamps as an invocation");

    std::string validate_input;
    std::string validate_format = "text";
    CLI::App* validate = app.add_subcommand("validate", "Validate a SARIF file");
    validate->add_option("input", validate_input, "SARIF file")->required();
    validate->add_option("--format", validate_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> aggregate_inputs;
    std::string aggregate_output;
    CLI::App* aggregate = app.add_subcommand("aggregate", "Merge SARIF files into one log");
    aggregate->add_option("inputs", aggregate_inputs, "SARIF files")->required();
    aggregate->add_option("-o,--output", aggregate_output, "output file")->required();

    CheckOptions check_options;
    CLI::App* check = app.add_subcommand("check", "Evaluate an event trace against a CrySL rule");
    check->add_option("--rule", check_options.rule_path, "rule file")->required();
    check->add_option("--trace", check_options.trace_path, "trace file")->required();
    check->add_option("--emit", check_options.emit, "output format")
        ->check(CLI::IsMember({"text", "sarif"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("crysarif");
    for (const std::string& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (convert->parsed()) {
        return cmd_convert(convert_options, args, out, err);
    }
    if (validate->parsed()) {
        return cmd_validate(validate_input, validate_format, out, err);
    }
    if (aggregate->parsed()) {
        return cmd_aggregate(aggregate_inputs, aggregate_output, out, err);
    }
    if (check->parsed()) {
        return cmd_check(check_options, out, err);
    }
    err << "error: no command given\n";
    return kUsage;
}

} // namespace cli
