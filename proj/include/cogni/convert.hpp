/**
 * @file convert.hpp
 * @brief Maps a parsed CogniCrypt text report onto a SARIF log.
 *
 * One run per report; one files entry per class (mimeType "text/java"); one
 * result per finding; one rule descriptor per distinct error type; logical
 * locations synthesized from the qualified names with full parent chains.
 * Conversion is deterministic and linear in the number of findings.
 */
#pragma once

#include "cogni/report.hpp"
#include "sarif/model.hpp"

#include <stdexcept>
#include <string>

namespace cogni {

class BadClassNameError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ToolConfig
{
    std::string name = "CogniCrypt";
    std::string full_name = "CogniCrypt (en-US)";
    std::string version = "1.0.0";
    std::string semantic_version = "1.0.0";
    std::string language = "en-US";
};

/// Reads a JSON tool-config object ({"name": ..., "fullName": ...,
/// "version": ..., "semanticVersion": ..., "language": ...}); keys that are
/// absent keep their defaults.
[[nodiscard]] ToolConfig tool_config_from_json(const sarif::Json& json);

/// Source-file URI of a fully qualified class name: dots become "/" and
/// ".java" is appended. Throws BadClassNameError when the name is empty or
/// already contains "/".
[[nodiscard]] std::string class_to_uri(const std::string& fqcn);

/// "::"-joined logical name of a method: package/class dots become "::",
/// followed by the bare method name.
[[nodiscard]] std::string logical_name(const std::string& fqcn, const std::string& method_signature);

/// Splits a finding into message text (first detail line, "."-terminated)
/// and rich text ("<errorType> violating CrySL rule for <ruleClass>.").
[[nodiscard]] sarif::Message split_message(const Finding& finding);

/// Logical-location entries (method, class, package segments) for every
/// fullyQualifiedLogicalName appearing in `results`, parent-linked to the top.
[[nodiscard]] sarif::OrderedMap<sarif::LogicalLocation>
derive_logical_locations(const std::vector<sarif::Result>& results);

/// Converts a parsed report to a SARIF log. Total on valid reports.
[[nodiscard]] sarif::SarifLog convert(const TextReport& report, const ToolConfig& config = {});

} // namespace cogni
