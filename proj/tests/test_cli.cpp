#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli/cli.hpp"

#include "cogni/convert.hpp"
#include "sarif/validator.hpp"
#include "sarif/writer.hpp"

#include "support/generators.hpp"
#include "support/testutil.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult
{
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir
{
public:
    TempDir()
    {
        dir_ = fs::temp_directory_path()
               / ("crysarif_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(dir_);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    [[nodiscard]] fs::path path(const std::string& name = "") const
    {
        return name.empty() ? dir_ : dir_ / name;
    }

private:
    static int& counter()
    {
        static int value = 0;
        return value;
    }
    fs::path dir_;
};

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream stream(path, std::ios::binary);
    stream << text;
}

} // namespace

TEST_CASE("convert writes <stem>.sarif into the report directory")
{
    TempDir tmp;
    const auto result = run_cli({"convert", testsupport::data_path("listing11_report.txt"),
                                 "--sarifReport", "--reportDir", tmp.path().string()});
    CHECK(result.code == 0);
    CHECK(result.err.empty());
    const fs::path expected = tmp.path("listing11_report.sarif");
    CHECK(result.out == expected.string() + "\n");
    REQUIRE(fs::exists(expected));

    const sarif::SarifLog log = sarif::parse(testsupport::read_file(expected.string()));
    const sarif::SarifLog golden = sarif::parse(testsupport::read_data("golden_listing11.sarif"));
    CHECK(log == golden);
}

TEST_CASE("convert defaults to the current directory and fails loudly")
{
    TempDir tmp;
    SUBCASE("missing --reportDir writes next to the working directory")
    {
        const fs::path previous = fs::current_path();
        fs::current_path(tmp.path());
        const auto result =
            run_cli({"convert", testsupport::data_path("listing11_report.txt")});
        fs::current_path(previous);
        CHECK(result.code == 0);
        CHECK(fs::exists(tmp.path("listing11_report.sarif")));
    }
    SUBCASE("unreadable input")
    {
        const auto result = run_cli({"convert", tmp.path("nope.txt").string()});
        CHECK(result.code == 2);
        CHECK(result.out.empty());
        CHECK(result.err.find("error:") == 0);
    }
    SUBCASE("malformed report carries a line number")
    {
        write_text(tmp.path("bad.txt"),
                   "Findings in Java Class: A\n\n\tin Method: m\n"
                   "\t\tBogusError violating CrySL rule for X (on Object #ab)\n\t\t\tat line: 3\n");
        const auto result = run_cli({"convert", tmp.path("bad.txt").string(), "--reportDir",
                                     tmp.path().string()});
        CHECK(result.code == 2);
        CHECK(result.err.find("line 4") != std::string::npos);
    }
}

TEST_CASE("convert honors tool-config and with-invocation")
{
    TempDir tmp;
    write_text(tmp.path("tool.json"),
               R"json({"name": "Scanner", "fullName": "Scanner 9 (en-US)"})json");
    const auto result = run_cli({"convert", testsupport::data_path("listing2_report.txt"),
                                 "--reportDir", tmp.path().string(), "--tool-config",
                                 tmp.path("tool.json").string(), "--with-invocation"});
    REQUIRE(result.code == 0);

    const sarif::SarifLog log =
        sarif::parse(testsupport::read_file(tmp.path("listing2_report.sarif").string()));
    CHECK(log.runs.front().tool.name == "Scanner");
    CHECK(log.runs.front().tool.full_name == "Scanner 9 (en-US)");
    REQUIRE(log.runs.front().invocations.has_value());
    const sarif::Invocation& invocation = log.runs.front().invocations->front();
    CHECK(invocation.command_line.find("crysarif convert") == 0);
    CHECK(invocation.start_time.has_value());
    CHECK(*invocation.start_time <= *invocation.end_time);
    CHECK(sarif::validate(log).empty());
}

TEST_CASE("validate: exit codes and output formats")
{
    TempDir tmp;
    const std::string golden = testsupport::read_data("golden_listing11.sarif");

    SUBCASE("clean file: exit 0, silent in text mode")
    {
        write_text(tmp.path("ok.sarif"), golden);
        const auto result = run_cli({"validate", tmp.path("ok.sarif").string()});
        CHECK(result.code == 0);
        CHECK(result.out.empty());
        CHECK(result.err.empty());
    }
    SUBCASE("version mutation: exit 1 with one SV001 line")
    {
        std::string mutated = golden;
        const std::size_t pos = mutated.find("\"2.0.0\"");
        mutated.replace(pos, 7, "\"1.0.0\"");
        write_text(tmp.path("bad.sarif"), mutated);
        const auto result = run_cli({"validate", tmp.path("bad.sarif").string()});
        CHECK(result.code == 1);
        CHECK(result.out.find("SV001") != std::string::npos);
        CHECK(result.out.find("$.version") != std::string::npos);
    }
    SUBCASE("non-JSON input: exit 2")
    {
        write_text(tmp.path("junk.sarif"), "this is not json");
        const auto result = run_cli({"validate", tmp.path("junk.sarif").string()});
        CHECK(result.code == 2);
        CHECK(result.out.empty());
        CHECK(!result.err.empty());
    }
    SUBCASE("shape violations render as SV000 and exit 1")
    {
        write_text(tmp.path("shape.sarif"),
                   R"({"version": "2.0.0", "$schema": "x", "runs": [{"tool": {"name": ""}}]})");
        const auto result = run_cli({"validate", tmp.path("shape.sarif").string(), "--format",
                                     "json"});
        CHECK(result.code == 1);
        const sarif::Json diag = sarif::Json::parse(result.out);
        REQUIRE(diag.is_array());
        CHECK(diag.at(0).at("checkId") == "SV000");
        CHECK(diag.at(0).at("path") == "$.runs[0].tool.name");
    }
    SUBCASE("json format always prints an array")
    {
        write_text(tmp.path("ok.sarif"), golden);
        const auto result = run_cli({"validate", tmp.path("ok.sarif").string(), "--format", "json"});
        CHECK(result.code == 0);
        CHECK(sarif::Json::parse(result.out).is_array());
    }
}

TEST_CASE("aggregate merges runs and guards versions")
{
    TempDir tmp;
    const std::string golden = testsupport::read_data("golden_listing11.sarif");
    write_text(tmp.path("a.sarif"), golden);
    write_text(tmp.path("b.sarif"), golden);

    SUBCASE("two inputs, three runs total")
    {
        const auto result = run_cli({"aggregate", tmp.path("a.sarif").string(),
                                     tmp.path("b.sarif").string(), "-o",
                                     tmp.path("merged.sarif").string()});
        REQUIRE(result.code == 0);
        const sarif::SarifLog merged =
            sarif::parse(testsupport::read_file(tmp.path("merged.sarif").string()));
        CHECK(merged.runs.size() == 2);
        CHECK(sarif::validate(merged).empty());
    }
    SUBCASE("single input round-trips byte-identically")
    {
        const auto result = run_cli({"aggregate", tmp.path("a.sarif").string(), "-o",
                                     tmp.path("copy.sarif").string()});
        REQUIRE(result.code == 0);
        const std::string copied = testsupport::read_file(tmp.path("copy.sarif").string());
        const std::string recanonicalized = sarif::write(sarif::parse(golden));
        CHECK(copied == recanonicalized);
    }
    SUBCASE("mixed versions: exit 2")
    {
        std::string other = golden;
        const std::size_t pos = other.find("\"2.0.0\"");
        other.replace(pos, 7, "\"1.0.0\"");
        write_text(tmp.path("old.sarif"), other);
        const auto result = run_cli({"aggregate", tmp.path("a.sarif").string(),
                                     tmp.path("old.sarif").string(), "-o",
                                     tmp.path("merged.sarif").string()});
        CHECK(result.code == 2);
        CHECK(result.err.find("version") != std::string::npos);
    }
}

TEST_CASE("check evaluates traces against the rule")
{
    const std::string rule = testsupport::data_path("keygenerator.crysl");

    SUBCASE("bad key size: exit 1 and the published message")
    {
        const auto result = run_cli({"check", "--rule", rule, "--trace",
                                     testsupport::data_path("traces/keysize512.trace")});
        CHECK(result.code == 1);
        CHECK(result.out.find("should be any of {128, 192, 256}") != std::string::npos);
        CHECK(result.out.find("ConstraintError violating CrySL rule for javax.crypto.KeyGenerator")
              != std::string::npos);
    }
    SUBCASE("clean trace: exit 0")
    {
        const auto result = run_cli({"check", "--rule", rule, "--trace",
                                     testsupport::data_path("traces/valid.trace")});
        CHECK(result.code == 0);
    }
    SUBCASE("rule parse error: exit 2")
    {
        TempDir tmp;
        write_text(tmp.path("broken.crysl"), "SPEC X\nEVENTS\n a: m();\n");
        const auto result = run_cli({"check", "--rule", tmp.path("broken.crysl").string(),
                                     "--trace", testsupport::data_path("traces/valid.trace")});
        CHECK(result.code == 2);
    }
    SUBCASE("trace parse error: exit 2")
    {
        TempDir tmp;
        write_text(tmp.path("broken.trace"), "g1(alg=AES @ 3\n");
        const auto result = run_cli({"check", "--rule", rule, "--trace",
                                     tmp.path("broken.trace").string()});
        CHECK(result.code == 2);
    }
}

TEST_CASE("check --emit sarif output passes validation")
{
    TempDir tmp;
    const auto result = run_cli({"check", "--rule", testsupport::data_path("keygenerator.crysl"),
                                 "--trace", testsupport::data_path("traces/else_path.trace"),
                                 "--emit", "sarif"});
    CHECK(result.code == 1);
    write_text(tmp.path("check.sarif"), result.out);
    const auto validated = run_cli({"validate", tmp.path("check.sarif").string()});
    CHECK(validated.code == 0);
    CHECK(validated.out.empty());

    const sarif::SarifLog log = sarif::parse(result.out);
    CHECK(log.runs.front().files.contains("Example/Crypto.java"));
    REQUIRE(log.runs.front().results.size() == 1);
    CHECK(log.runs.front().results.front().rule_id == "TypestateError");
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"convert"}).code == 2);
    CHECK(run_cli({"validate", "x.sarif", "--format", "yaml"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("convert then validate composes cleanly over the corpus")
{
    TempDir tmp;
    std::vector<std::string> inputs = {testsupport::data_path("listing2_report.txt"),
                                       testsupport::data_path("listing11_report.txt")};

    testsupport::Rng rng(1001);
    for (int i = 0; i < 5; ++i) {
        const fs::path path = tmp.path("generated" + std::to_string(i) + ".txt");
        write_text(path, cogni::render_report(testsupport::random_report(rng)));
        inputs.push_back(path.string());
    }

    for (const std::string& input : inputs) {
        const auto converted = run_cli({"convert", input, "--reportDir", tmp.path().string()});
        REQUIRE(converted.code == 0);
        std::string path = converted.out;
        path.pop_back(); // newline
        const auto validated = run_cli({"validate", path});
        CHECK(validated.code == 0);
        CHECK(validated.out.empty());
    }
}

#ifdef CRYSARIF_BIN
TEST_CASE("the installed binary honors the stdout/stderr and exit-code contract")
{
    TempDir tmp;
    const std::string out_file = tmp.path("stdout.txt").string();
    const std::string err_file = tmp.path("stderr.txt").string();

    const auto shell = [&](const std::string& command) {
        const std::string full = command + " > " + out_file + " 2> " + err_file;
        const int status = std::system(full.c_str());
        return WEXITSTATUS(status);
    };

    const std::string bin = CRYSARIF_BIN;
    const int code = shell(bin + " convert " + testsupport::data_path("listing11_report.txt")
                           + " --sarifReport --reportDir " + tmp.path().string());
    CHECK(code == 0);
    CHECK(testsupport::read_file(err_file).empty());
    CHECK(testsupport::read_file(out_file).find(".sarif") != std::string::npos);

    const int validate_code = shell(bin + " validate " + tmp.path("listing11_report.sarif").string());
    CHECK(validate_code == 0);

    const int usage_code = shell(bin + " bogus");
    CHECK(usage_code == 2);
}
#endif
