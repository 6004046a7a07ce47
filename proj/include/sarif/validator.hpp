/**
 * @file validator.hpp
 * @brief Structural validation of a SARIF document.
 *
 * validate() reports every violation of the SV check catalog; an empty result
 * means the document is valid. Problems are returned, never thrown.
 *
 * Check catalog:
 *   SV001 error    version is "2.0.0"
 *   SV002 error    $schema corresponds to the declared version
 *   SV003 error    every ruleId resolves in resources.rules
 *   SV004 error    parentKey entries resolve and chains are acyclic
 *                  (files and logicalLocations)
 *   SV005 error    nested-file key syntax: key = parentKey + "#" + uri,
 *                  uri starts with "/"
 *   SV006 error    every result has >= 1 location carrying a physicalLocation
 *                  or a fullyQualifiedLogicalName
 *   SV007 error    message / ruleMessageId fallback resolves (richMessageId
 *                  likewise, against richMessageStrings)
 *   SV008 warning  baselineState / suppressionStates values in their closed sets
 *   SV009 error    thread-flow steps strictly increase
 *   SV010 error    region endLine >= startLine
 *   SV011 warning  fullyQualifiedLogicalName has a logicalLocations entry when
 *                  that map is non-empty
 *   SV012 warning  runs array is empty
 */
#pragma once

#include "sarif/model.hpp"

#include <string>
#include <vector>

namespace sarif {

struct Diagnostic
{
    std::string check_id;
    Level severity = Level::kError;
    std::string path;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// Runs the full check catalog over `log`. Diagnostics are ordered by
/// (path, checkId); the function is pure and deterministic.
[[nodiscard]] std::vector<Diagnostic> validate(const SarifLog& log);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// One line per diagnostic: "SEVERITY checkId path: message".
[[nodiscard]] std::string render_text(const std::vector<Diagnostic>& diagnostics);

/// JSON array of {checkId, severity, path, message} objects.
[[nodiscard]] Json render_json(const std::vector<Diagnostic>& diagnostics);

} // namespace sarif
