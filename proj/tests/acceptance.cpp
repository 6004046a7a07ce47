// Acceptance suite: runs the six release criteria end to end and prints one
// pass/fail line per criterion. Exits non-zero when any criterion fails.

#include "cogni/convert.hpp"
#include "cogni/report.hpp"
#include "crysl/automaton.hpp"
#include "crysl/evaluate.hpp"
#include "crysl/rule.hpp"
#include "sarif/aggregate.hpp"
#include "sarif/validator.hpp"
#include "sarif/writer.hpp"

#include "support/generators.hpp"
#include "support/regex_oracle.hpp"
#include "support/testutil.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Criterion
{
    std::string name;
    std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------------------
// Criterion 1: golden conversion of the published example
// ---------------------------------------------------------------------------

bool criterion_golden(std::string& detail)
{
    const auto start = Clock::now();

    const cogni::TextReport report =
        cogni::parse_report(testsupport::read_data("listing11_report.txt"));
    const sarif::SarifLog converted = cogni::convert(report);
    const sarif::SarifLog golden = sarif::parse(testsupport::read_data("golden_listing11.sarif"));

    bool ok = converted == golden;
    ok = ok && sarif::write(converted) == sarif::write(golden);

    // the individually named facts, asserted against the converted document
    ok = ok && converted.version == "2.0.0";
    ok = ok && converted.schema_uri == "http://json.schemastore.org/sarif-2.0.0";
    ok = ok && converted.runs.size() == 1;
    const sarif::Run& run = converted.runs.front();
    ok = ok && run.tool.name == "CogniCrypt" && run.tool.full_name == "CogniCrypt (en-US)"
         && run.tool.version == "1.0.0" && run.tool.semantic_version == "1.0.0"
         && run.tool.language == "en-US";
    ok = ok && run.files.size() == 1 && run.files.contains("example/TypestateErrorExample.java")
         && run.files.at("example/TypestateErrorExample.java").mime_type == "text/java";
    ok = ok && run.results.size() == 2;
    if (ok) {
        const sarif::Result& first = run.results[0];
        const sarif::Result& second = run.results[1];
        ok = ok && first.rule_id == "ConstraintError" && second.rule_id == "TypestateError";
        ok = ok && first.locations.front().physical_location->region->start_line == 29;
        ok = ok && second.locations.front().physical_location->region->start_line == 24;
        ok = ok
             && first.locations.front().fully_qualified_logical_name
                    == "example::TypestateErrorExample::getPrivateKey";
        ok = ok
             && second.locations.front().fully_qualified_logical_name
                    == "example::TypestateErrorExample::main";
        ok = ok
             && first.message->text
                    == "First parameter (with value 1024) should be any of {2048, 4096}.";
        ok = ok
             && first.message->rich_text
                    == "ConstraintError violating CrySL rule for KeyPairGenerator.";
        ok = ok
             && second.message->text
                    == "Unexpected call to method sign on object of type java.security.Signature. "
                       "Expect a call to one of the following methods initSign,update.";
        ok = ok
             && second.message->rich_text == "TypestateError violating CrySL rule for Signature.";
        const sarif::RuleDescriptor* constraint = run.resources.rules.find("ConstraintError");
        const sarif::RuleDescriptor* typestate = run.resources.rules.find("TypestateError");
        ok = ok && constraint != nullptr && typestate != nullptr
             && run.resources.rules.size() == 2;
        ok = ok
             && constraint->full_description->text
                    == "A constraint of a CrySL rule is violated, e.g., a key is generated with "
                       "the wrong key size.";
        ok = ok
             && typestate->full_description->text
                    == "The ORDER block of CrySL is violated, i.e., the expected method sequence "
                       "call to be made is incorrect. For example, a Signature object expects a "
                       "call to initSign(key) prior to update(data).";
    }

    const double elapsed = ms_since(start);
    std::ostringstream out;
    out << "structural+string equality, " << elapsed << " ms";
    detail = out.str();
    return ok && elapsed < 1000.0;
}

// ---------------------------------------------------------------------------
// Criterion 2: validator passes the corpus; mutations are caught
// ---------------------------------------------------------------------------

cogni::TextReport corpus_report(testsupport::Rng& rng, const crysl::RuleSpec& rule, int index)
{
    static const std::vector<std::string> kAlgs = {"AES", "HmacSHA256", "DES", "HmacSHA512"};
    static const std::vector<std::string> kLabels = {"g1", "g2", "i1", "i2", "i3",
                                                     "i4", "i5", "gk"};
    static const std::vector<std::int64_t> kKeySizes = {128, 192, 256, 512, 1024};

    cogni::TextReport report;
    cogni::ClassFindings cls;
    cls.class_name = "corpus.pkg" + std::to_string(index) + ".Case" + std::to_string(index);

    const int trace_count = rng.range(1, 3);
    for (int t = 0; t < trace_count; ++t) {
        crysl::EventTrace trace;
        trace.object_id = rng.hex(64);
        const int steps = rng.range(1, 6);
        std::int64_t line = 1;
        for (int s = 0; s < steps; ++s) {
            crysl::TraceStep step;
            step.label = rng.pick(kLabels);
            line += rng.range(1, 4);
            step.line = line;
            if (step.label == "g1" || step.label == "g2") {
                if (rng.chance(0.15)) {
                    step.args.emplace_back("alg", crysl::Unknown{});
                } else {
                    step.args.emplace_back("alg", crysl::Literal{rng.pick(kAlgs)});
                }
            } else if (step.label == "i1" || step.label == "i2") {
                if (rng.chance(0.15)) {
                    step.args.emplace_back("keySize", crysl::Unknown{});
                } else {
                    step.args.emplace_back("keySize", crysl::Literal{rng.pick(kKeySizes)});
                }
            }
            trace.steps.push_back(std::move(step));
        }
        const std::vector<cogni::Finding> findings = crysl::evaluate(trace, rule);
        if (!findings.empty()) {
            cls.methods.push_back(
                cogni::MethodFindings{"void path" + std::to_string(t) + "(int)", findings});
        }
    }
    report.classes.push_back(std::move(cls));
    return report;
}

struct Mutation
{
    const char* name;
    std::function<std::string(sarif::Json&)> apply; // returns the mutated path
};

std::vector<sarif::Diagnostic> diagnostics_of(const std::string& bytes)
{
    try {
        return sarif::validate(sarif::parse(bytes));
    } catch (const sarif::ModelError& e) {
        return {{"SV000", sarif::Level::kError, e.path(), e.what()}};
    } catch (const sarif::JsonSyntaxError& e) {
        return {{"SV000", sarif::Level::kError, "$", e.what()}};
    }
}

bool criterion_validator(std::string& detail)
{
    const crysl::RuleSpec rule = crysl::parse_rule(testsupport::read_data("keygenerator.crysl"));
    testsupport::Rng rng(271828);

    // corpus: generated reports driven through render -> parse -> convert
    std::size_t corpus_size = 0;
    std::size_t corpus_clean = 0;
    for (int i = 0; i < 24; ++i) {
        const cogni::TextReport generated = corpus_report(rng, rule, i);
        const cogni::TextReport reparsed =
            cogni::parse_report(cogni::render_report(generated));
        const auto diagnostics = sarif::validate(cogni::convert(reparsed));
        ++corpus_size;
        if (!sarif::has_errors(diagnostics)) {
            ++corpus_clean;
        }
    }
    for (const char* name : {"listing2_report.txt", "listing11_report.txt"}) {
        const auto diagnostics =
            sarif::validate(cogni::convert(cogni::parse_report(testsupport::read_data(name))));
        ++corpus_size;
        if (!sarif::has_errors(diagnostics)) {
            ++corpus_clean;
        }
    }

    // mutation suite: 50 single-field edits of the golden document
    const sarif::Json golden =
        sarif::Json::parse(testsupport::read_data("golden_listing11.sarif"));

    const auto run0 = [](sarif::Json& doc) -> sarif::Json& { return doc["runs"][0]; };
    const std::string files_key = "example/TypestateErrorExample.java";

    std::vector<Mutation> mutations = {
        {"version wrong value", [](sarif::Json& d) { d["version"] = "1.0.0"; return "$.version"; }},
        {"version wrong type", [](sarif::Json& d) { d["version"] = 2; return "$.version"; }},
        {"version deleted", [](sarif::Json& d) { d.erase("version"); return "$.version"; }},
        {"$schema wrong value",
         [](sarif::Json& d) {
             d["$schema"] = "http://json.schemastore.org/sarif-9.9.9";
             return "$.$schema";
         }},
        {"$schema deleted", [](sarif::Json& d) { d.erase("$schema"); return "$.$schema"; }},
        {"runs emptied", [](sarif::Json& d) { d["runs"] = sarif::Json::array(); return "$.runs"; }},
        {"runs wrong type", [](sarif::Json& d) { d["runs"] = "x"; return "$.runs"; }},
        {"tool deleted",
         [&](sarif::Json& d) { run0(d).erase("tool"); return "$.runs[0].tool"; }},
        {"tool name empty",
         [&](sarif::Json& d) { run0(d)["tool"]["name"] = ""; return "$.runs[0].tool.name"; }},
        {"tool name deleted",
         [&](sarif::Json& d) { run0(d)["tool"].erase("name"); return "$.runs[0].tool.name"; }},
        {"tool name wrong type",
         [&](sarif::Json& d) { run0(d)["tool"]["name"] = 7; return "$.runs[0].tool.name"; }},
        {"ruleId unresolved",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["ruleId"] = "Nonexistent";
             return "$.runs[0].results[0].ruleId";
         }},
        {"ruleId deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0].erase("ruleId");
             return "$.runs[0].results[0].ruleId";
         }},
        {"ruleId wrong type",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["ruleId"] = 5;
             return "$.runs[0].results[0].ruleId";
         }},
        {"message deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0].erase("message");
             return "$.runs[0].results[0].message";
         }},
        {"message text empty",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["message"]["text"] = "";
             return "$.runs[0].results[0].message.text";
         }},
        {"message text deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["message"].erase("text");
             return "$.runs[0].results[0].message.text";
         }},
        {"locations emptied",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"] = sarif::Json::array();
             return "$.runs[0].results[0].locations";
         }},
        {"locations deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0].erase("locations");
             return "$.runs[0].results[0].locations";
         }},
        {"startLine zero",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["startLine"] = 0;
             return "$.runs[0].results[0].locations[0].physicalLocation.region.startLine";
         }},
        {"startLine negative",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["startLine"] = -5;
             return "$.runs[0].results[0].locations[0].physicalLocation.region.startLine";
         }},
        {"startLine string",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["startLine"] =
                 "29";
             return "$.runs[0].results[0].locations[0].physicalLocation.region.startLine";
         }},
        {"startLine fractional",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["startLine"] =
                 29.5;
             return "$.runs[0].results[0].locations[0].physicalLocation.region.startLine";
         }},
        {"startLine deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"].erase("startLine");
             return "$.runs[0].results[0].locations[0].physicalLocation.region.startLine";
         }},
        {"endLine precedes startLine",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["endLine"] = 1;
             return "$.runs[0].results[0].locations[0].physicalLocation.region.endLine";
         }},
        {"file uri deleted",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["fileLocation"].erase("uri");
             return "$.runs[0].results[0].locations[0].physicalLocation.fileLocation.uri";
         }},
        {"file uri wrong type",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["fileLocation"]["uri"] = 9;
             return "$.runs[0].results[0].locations[0].physicalLocation.fileLocation.uri";
         }},
        {"logical name unresolved",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["fullyQualifiedLogicalName"] =
                 "example::Elsewhere::foo";
             return "$.runs[0].results[0].locations[0].fullyQualifiedLogicalName";
         }},
        {"level unknown",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["level"] = "fatal";
             return "$.runs[0].results[0].level";
         }},
        {"baselineState unknown",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["baselineState"] = "bizarre";
             return "$.runs[0].results[0].baselineState";
         }},
        {"suppressionStates unknown",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["suppressionStates"] =
                 sarif::Json::array({"suppressedQuietly"});
             return "$.runs[0].results[0].suppressionStates";
         }},
        {"richText wrong type",
         [&](sarif::Json& d) {
             run0(d)["results"][1]["message"]["richText"] = 5;
             return "$.runs[0].results[1].message.richText";
         }},
        {"location emptied",
         [&](sarif::Json& d) {
             run0(d)["results"][1]["locations"][0] = sarif::Json::object();
             return "$.runs[0].results[1].locations[0]";
         }},
        {"logical location name mismatch",
         [&](sarif::Json& d) {
             run0(d)["logicalLocations"]["example"]["name"] = "wrong";
             return "$.runs[0].logicalLocations[\"example\"].name";
         }},
        {"parentKey dangling",
         [&](sarif::Json& d) {
             run0(d)["logicalLocations"]["example"]["parentKey"] = "missing";
             return "$.runs[0].logicalLocations[\"example\"].parentKey";
         }},
        {"parentKey cyclic",
         [&](sarif::Json& d) {
             run0(d)["logicalLocations"]["example"]["parentKey"] =
                 "example::TypestateErrorExample";
             return "$.runs[0].logicalLocations[\"example\"].parentKey";
         }},
        {"logical kind deleted",
         [&](sarif::Json& d) {
             run0(d)["logicalLocations"]["example"].erase("kind");
             return "$.runs[0].logicalLocations[\"example\"].kind";
         }},
        {"logical kind wrong type",
         [&](sarif::Json& d) {
             run0(d)["logicalLocations"]["example"]["kind"] = 4;
             return "$.runs[0].logicalLocations[\"example\"].kind";
         }},
        {"mimeType deleted",
         [&](sarif::Json& d) {
             run0(d)["files"][files_key].erase("mimeType");
             return "$.runs[0].files[\"" + files_key + "\"].mimeType";
         }},
        {"mimeType wrong type",
         [&](sarif::Json& d) {
             run0(d)["files"][files_key]["mimeType"] = 1;
             return "$.runs[0].files[\"" + files_key + "\"].mimeType";
         }},
        {"parentKey without uri on files entry",
         [&](sarif::Json& d) {
             run0(d)["files"][files_key]["parentKey"] = "app.zip";
             return "$.runs[0].files[\"" + files_key + "\"].parentKey";
         }},
        {"rule id mismatch",
         [&](sarif::Json& d) {
             run0(d)["resources"]["rules"]["ConstraintError"]["id"] = "Other";
             return "$.runs[0].resources.rules[\"ConstraintError\"].id";
         }},
        {"rule id deleted",
         [&](sarif::Json& d) {
             run0(d)["resources"]["rules"]["ConstraintError"].erase("id");
             return "$.runs[0].resources.rules[\"ConstraintError\"].id";
         }},
        {"rule deleted (diagnostic lands at the referencing result)",
         [&](sarif::Json& d) {
             run0(d)["resources"]["rules"].erase("ConstraintError");
             return "$.runs[0].resources.rules[\"ConstraintError\"]";
         }},
        {"rule description text empty",
         [&](sarif::Json& d) {
             run0(d)["resources"]["rules"]["ConstraintError"]["fullDescription"]["text"] = "";
             return "$.runs[0].resources.rules[\"ConstraintError\"].fullDescription.text";
         }},
        {"ruleMessageId unresolvable",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["ruleMessageId"] = "missingKey";
             return "$.runs[0].results[0].ruleMessageId";
         }},
        {"richMessageId unresolvable",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["richMessageId"] = "nope";
             return "$.runs[0].results[0].richMessageId";
         }},
        {"invocation times reversed",
         [&](sarif::Json& d) {
             sarif::Json invocation = sarif::Json::object();
             invocation["commandLine"] = "scanner";
             invocation["startTime"] = "2020-01-02T00:00:00Z";
             invocation["endTime"] = "2019-01-01T00:00:00Z";
             run0(d)["invocations"] = sarif::Json::array({invocation});
             return "$.runs[0].invocations";
         }},
        {"thread-flow steps not increasing",
         [&](sarif::Json& d) {
             sarif::Json location = run0(d)["results"][0]["locations"][0];
             sarif::Json tfl = sarif::Json::object();
             tfl["step"] = 2;
             tfl["location"] = location;
             sarif::Json tf = sarif::Json::object();
             tf["locations"] = sarif::Json::array({tfl, tfl});
             sarif::Json flow = sarif::Json::object();
             flow["threadFlows"] = sarif::Json::array({tf});
             run0(d)["results"][0]["codeFlows"] = sarif::Json::array({flow});
             return "$.runs[0].results[0].codeFlows";
         }},
        {"charLength negative",
         [&](sarif::Json& d) {
             run0(d)["results"][0]["locations"][0]["physicalLocation"]["region"]["charLength"] =
                 -4;
             return "$.runs[0].results[0].locations[0].physicalLocation.region.charLength";
         }},
    };

    std::size_t localized = 0;
    std::size_t silent = 0;
    for (const Mutation& mutation : mutations) {
        sarif::Json mutated = golden;
        const std::string path = mutation.apply(mutated);
        const auto diagnostics = diagnostics_of(mutated.dump());
        bool hit = false;
        for (const sarif::Diagnostic& diag : diagnostics) {
            if (diag.path.rfind(path, 0) == 0 || path.rfind(diag.path, 0) == 0) {
                hit = true;
                break;
            }
        }
        if (hit) {
            ++localized;
        } else if (diagnostics.empty()) {
            ++silent;
        }
    }

    std::ostringstream out;
    out << corpus_clean << "/" << corpus_size << " corpus documents clean, " << localized << "/"
        << mutations.size() << " mutations localized (" << silent << " silent)";
    detail = out.str();
    return corpus_clean == corpus_size && mutations.size() == 50 && localized >= 48;
}

// ---------------------------------------------------------------------------
// Criterion 3: automaton equals the brute-force oracle; paper traces match
// ---------------------------------------------------------------------------

bool criterion_oracle(std::string& detail)
{
    const crysl::RuleSpec rule = crysl::parse_rule(testsupport::read_data("keygenerator.crysl"));
    const crysl::Automaton dfa = crysl::build_automaton(rule.order, rule.aliases);
    const testsupport::RegexOracle oracle(rule.order, rule.aliases);

    std::vector<std::string> alphabet;
    for (const crysl::EventDecl& event : rule.events) {
        alphabet.push_back(event.label);
    }

    std::size_t disagreements = 0;
    std::size_t checked = 0;
    for (const auto& sequence : testsupport::all_sequences(alphabet, 5)) {
        ++checked;
        if (dfa.accepts(sequence) != oracle.matches(sequence)) {
            ++disagreements;
        }
    }

    // the two program paths of the worked example
    crysl::EventTrace then_path;
    then_path.object_id = "o1";
    then_path.steps = {{"g1", {{"alg", crysl::Literal{std::string("AES")}}}, 3},
                       {"i1", {{"keySize", crysl::Literal{std::int64_t{512}}}}, 5},
                       {"gk", {}, 8}};
    crysl::EventTrace else_path;
    else_path.object_id = "o1";
    else_path.steps = {{"g1", {{"alg", crysl::Literal{std::string("AES")}}}, 3},
                       {"gk", {}, 7},
                       {"gk", {}, 8}};

    std::multiset<cogni::ErrorType> types;
    std::string constraint_message;
    for (const crysl::EventTrace* trace : {&then_path, &else_path}) {
        for (const cogni::Finding& finding : crysl::evaluate(*trace, rule)) {
            types.insert(finding.error_type);
            if (finding.error_type == cogni::ErrorType::kConstraintError) {
                constraint_message = finding.detail_lines.front();
            }
        }
    }
    const bool types_ok = types
                          == std::multiset<cogni::ErrorType>{cogni::ErrorType::kConstraintError,
                                                             cogni::ErrorType::kTypestateError};
    const bool message_ok =
        constraint_message == "First parameter (with value 512) should be any of {128, 192, 256}";

    std::ostringstream out;
    out << checked << " sequences, " << disagreements << " disagreements; paper traces "
        << (types_ok && message_ok ? "match" : "mismatch");
    detail = out.str();
    return checked == 37449 && disagreements == 0 && types_ok && message_ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: round trips
// ---------------------------------------------------------------------------

bool criterion_round_trips(std::string& detail)
{
    testsupport::Rng rng(1618);
    std::size_t report_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const cogni::TextReport report = testsupport::random_report(rng);
        if (cogni::parse_report(cogni::render_report(report)) != report) {
            ++report_failures;
        }
    }

    std::size_t log_failures = 0;
    std::size_t byte_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const sarif::SarifLog log = testsupport::random_log(rng);
        const std::string once = sarif::write(log);
        const sarif::SarifLog reparsed = sarif::parse(once);
        if (reparsed != log) {
            ++log_failures;
        }
        if (sarif::write(reparsed) != once) {
            ++byte_failures;
        }
    }

    std::ostringstream out;
    out << report_failures << " report, " << log_failures << " log, " << byte_failures
        << " byte-idempotence failures over 1000+1000 cases";
    detail = out.str();
    return report_failures == 0 && log_failures == 0 && byte_failures == 0;
}

// ---------------------------------------------------------------------------
// Criterion 5: conversion scales linearly in the number of findings
// ---------------------------------------------------------------------------

cogni::TextReport synthetic_report(std::size_t findings)
{
    cogni::TextReport report;
    const std::size_t classes = 40;
    const std::size_t per_class = findings / classes;
    for (std::size_t c = 0; c < classes; ++c) {
        cogni::ClassFindings cls;
        cls.class_name = "bench.pkg" + std::to_string(c) + ".Class" + std::to_string(c);
        cogni::MethodFindings method;
        method.method_signature = "void run(int)";
        for (std::size_t f = 0; f < per_class; ++f) {
            cogni::Finding finding;
            finding.error_type = cogni::kAllErrorTypes[f % cogni::kAllErrorTypes.size()];
            finding.rule_class = "javax.crypto.KeyGenerator";
            finding.object_id = "abc123";
            finding.detail_lines = {"First parameter (with value 512) should be any of {128}"};
            finding.line = static_cast<std::int64_t>(f + 1);
            method.findings.push_back(std::move(finding));
        }
        cls.methods.push_back(std::move(method));
        report.classes.push_back(std::move(cls));
    }
    return report;
}

bool criterion_linearity(std::string& detail)
{
    const auto budget_start = Clock::now();

    const std::vector<cogni::TextReport> reports = {
        synthetic_report(1000), synthetic_report(2000), synthetic_report(4000),
        synthetic_report(8000)};
    std::vector<double> best(reports.size(), 1e300);

    // warm the allocator at the largest working-set size, then interleave
    // rounds so every size sees the same process state
    if (cogni::convert(reports.back()).runs.front().results.empty()) {
        detail = "warmup conversion produced no results";
        return false;
    }
    for (int repeat = 0; repeat < 7; ++repeat) {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto start = Clock::now();
            const sarif::SarifLog log = cogni::convert(reports[i]);
            const double elapsed = ms_since(start);
            if (log.runs.front().results.empty()) {
                detail = "conversion produced no results";
                return false;
            }
            best[i] = std::min(best[i], elapsed);
        }
    }

    const double t1k = best[0];
    const double t2k = best[1];
    const double t4k = best[2];
    const double t8k = best[3];
    const double ratio = t8k / t1k;
    const double total_s = ms_since(budget_start) / 1000.0;

    std::ostringstream out;
    out << "convert best-of-7: " << t1k << "/" << t2k << "/" << t4k << "/" << t8k
        << " ms for 1k/2k/4k/8k findings, 8k/1k ratio " << ratio << ", benchmark " << total_s
        << " s";
    detail = out.str();
    return t1k > 0 && ratio <= 10.0 && total_s < 30.0;
}

// ---------------------------------------------------------------------------
// Criterion 6: aggregation counts, associativity, validation preservation
// ---------------------------------------------------------------------------

bool criterion_aggregation(std::string& detail)
{
    testsupport::Rng rng(6174);
    std::size_t failures = 0;

    const auto clean_log = [&rng]() {
        sarif::SarifLog log;
        const int runs = rng.range(1, 3);
        for (int i = 0; i < runs; ++i) {
            sarif::Run run = testsupport::random_run(rng);
            // resolve every ruleId so the input passes validation
            for (const sarif::Result& result : run.results) {
                if (!run.resources.rules.contains(result.rule_id)) {
                    sarif::RuleDescriptor rule;
                    rule.id = result.rule_id;
                    run.resources.rules.insert(result.rule_id, std::move(rule));
                }
            }
            log.runs.push_back(std::move(run));
        }
        return log;
    };

    for (int i = 0; i < 100; ++i) {
        std::vector<sarif::SarifLog> logs;
        const int count = rng.range(1, 4);
        std::size_t total_runs = 0;
        bool inputs_pass = true;
        for (int l = 0; l < count; ++l) {
            logs.push_back(clean_log());
            total_runs += logs.back().runs.size();
            inputs_pass = inputs_pass && !sarif::has_errors(sarif::validate(logs.back()));
        }

        const sarif::AggregationReport merged = sarif::aggregate(logs);
        if (merged.merged.runs.size() != total_runs) {
            ++failures;
        }
        if (inputs_pass && sarif::has_errors(sarif::validate(merged.merged))) {
            ++failures;
        }
    }

    for (int i = 0; i < 100; ++i) {
        const sarif::SarifLog a = clean_log();
        const sarif::SarifLog b = clean_log();
        const sarif::SarifLog c = clean_log();
        const auto nested = sarif::aggregate(
            std::vector<sarif::SarifLog>{sarif::aggregate(std::vector<sarif::SarifLog>{a, b}).merged,
                                         c});
        const auto flat = sarif::aggregate(std::vector<sarif::SarifLog>{a, b, c});
        if (nested.merged.runs != flat.merged.runs) {
            ++failures;
        }
    }

    std::ostringstream out;
    out << failures << " failures over 100 merge trials and 100 associativity triples";
    detail = out.str();
    return failures == 0;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"criterion 1: golden conversion of the published example", criterion_golden},
        {"criterion 2: validator corpus pass + mutation localization", criterion_validator},
        {"criterion 3: automaton/oracle equivalence + paper traces", criterion_oracle},
        {"criterion 4: render/parse and write/parse round trips", criterion_round_trips},
        {"criterion 5: conversion linear in findings", criterion_linearity},
        {"criterion 6: aggregation counts, associativity, validity", criterion_aggregation},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.name
                  << (detail.empty() ? "" : " — " + detail) << "\n";
        failed += ok ? 0 : 1;
    }
    return failed;
}
