/**
 * @file model.hpp
 * @brief In-memory model of a SARIF 2.0.0 document.
 *
 * Values are plain immutable-by-convention structs; once built they are never
 * mutated in place, so they can be shared freely across threads. Keys a
 * document carries beyond the modeled ones are kept verbatim in a per-object
 * `extras` list and re-emitted on write, so third-party logs survive a
 * parse/write cycle.
 */
#pragma once

#include "sarif/ordered_map.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sarif {

using Json = nlohmann::ordered_json;

/// Unknown keys of one JSON object, in document order.
using ExtraFields = std::vector<std::pair<std::string, Json>>;

inline constexpr const char* kSarifVersion = "2.0.0";
inline constexpr const char* kSchemaUri = "http://json.schemastore.org/sarif-2.0.0";
inline constexpr const char* kSchemaUriPrefix = "http://json.schemastore.org/sarif-";

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// A structurally well-formed JSON document that violates a model invariant.
class ModelError : public Error
{
public:
    ModelError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path))
    {}

    [[nodiscard]] const std::string& path() const { return path_; }

private:
    std::string path_;
};

class MissingMessageError : public Error
{
    using Error::Error;
};

class BadFragmentError : public Error
{
    using Error::Error;
};

class UnknownKeyError : public Error
{
    using Error::Error;
};

class CyclicParentError : public Error
{
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class Level { kError, kWarning, kNote };

[[nodiscard]] std::string to_string(Level level);
[[nodiscard]] std::optional<Level> level_from_string(const std::string& text);

struct Message
{
    std::string text;
    std::optional<std::string> rich_text;
    ExtraFields extras;

    bool operator==(const Message&) const = default;
};

struct Notification
{
    Level level = Level::kNote;
    Message message;
    ExtraFields extras;

    bool operator==(const Notification&) const = default;
};

/// A bare `{"uri": ...}` object (fileLocation, analysisTarget, responseFiles).
struct FileLocation
{
    std::string uri;
    ExtraFields extras;

    bool operator==(const FileLocation&) const = default;
};

struct Invocation
{
    std::string command_line;
    std::vector<FileLocation> response_files;
    std::optional<std::string> start_time;
    std::optional<std::string> end_time;
    std::optional<std::string> file_name;
    std::optional<std::string> working_directory;
    OrderedMap<std::string> environment_variables;
    std::vector<Notification> configuration_notifications;
    std::vector<Notification> tool_notifications;
    ExtraFields extras;

    bool operator==(const Invocation&) const = default;
};

struct FileEntry
{
    std::optional<std::string> uri;
    std::string mime_type;
    std::optional<std::int64_t> length;
    std::optional<std::string> parent_key;
    ExtraFields extras;

    bool operator==(const FileEntry&) const = default;
};

struct LogicalLocation
{
    std::string name;
    std::string kind;
    std::optional<std::string> parent_key;
    ExtraFields extras;

    bool operator==(const LogicalLocation&) const = default;
};

struct Snippet
{
    std::string text;
    ExtraFields extras;

    bool operator==(const Snippet&) const = default;
};

struct Region
{
    std::int64_t start_line = 1;
    std::optional<std::int64_t> start_column;
    std::optional<std::int64_t> end_line;
    std::optional<std::int64_t> end_column;
    std::optional<std::int64_t> char_length;
    std::optional<std::int64_t> char_offset;
    std::optional<Snippet> snippet;
    ExtraFields extras;

    bool operator==(const Region&) const = default;
};

struct PhysicalLocation
{
    FileLocation file_location;
    std::optional<Region> region;
    ExtraFields extras;

    bool operator==(const PhysicalLocation&) const = default;
};

struct Location
{
    std::optional<PhysicalLocation> physical_location;
    std::optional<std::string> fully_qualified_logical_name;
    ExtraFields extras;

    bool operator==(const Location&) const = default;
};

struct ThreadFlowLocation
{
    std::int64_t step = 1;
    std::optional<std::string> importance;
    std::optional<Message> message;
    Location location;
    std::optional<std::string> module_name; // serialized as "module"
    ExtraFields extras;

    bool operator==(const ThreadFlowLocation&) const = default;
};

struct ThreadFlow
{
    std::optional<std::string> id;
    std::vector<ThreadFlowLocation> locations;
    ExtraFields extras;

    bool operator==(const ThreadFlow&) const = default;
};

struct CodeFlow
{
    std::optional<Message> message;
    std::vector<ThreadFlow> thread_flows;
    ExtraFields extras;

    bool operator==(const CodeFlow&) const = default;
};

struct StackFrame
{
    std::optional<Message> message;
    Location location;
    std::optional<std::int64_t> thread_id;
    std::optional<std::int64_t> address;
    std::optional<std::vector<std::string>> parameters;
    ExtraFields extras;

    bool operator==(const StackFrame&) const = default;
};

struct Stack
{
    std::optional<Message> message;
    std::vector<StackFrame> frames;
    ExtraFields extras;

    bool operator==(const Stack&) const = default;
};

struct Replacement
{
    Region deleted_region;
    std::optional<Snippet> inserted_content;
    ExtraFields extras;

    bool operator==(const Replacement&) const = default;
};

struct FileChange
{
    FileLocation file_location;
    std::vector<Replacement> replacements;
    ExtraFields extras;

    bool operator==(const FileChange&) const = default;
};

struct Fix
{
    Message description;
    std::vector<FileChange> file_changes;
    ExtraFields extras;

    bool operator==(const Fix&) const = default;
};

struct Result
{
    std::string rule_id;
    std::optional<std::string> rule_message_id;
    std::optional<std::string> rich_message_id;
    std::optional<Message> message;
    std::optional<std::vector<std::string>> suppression_states;
    std::optional<std::string> baseline_state;
    std::optional<Level> level;
    std::optional<FileLocation> analysis_target;
    std::vector<Location> locations;
    std::optional<std::vector<CodeFlow>> code_flows;
    std::optional<std::vector<Stack>> stacks;
    std::optional<std::vector<Fix>> fixes;
    std::optional<std::vector<std::string>> work_item_uris;
    ExtraFields extras;

    bool operator==(const Result&) const = default;
};

struct RuleDescriptor
{
    std::string id;
    std::optional<Message> short_description;
    std::optional<Message> full_description;
    std::optional<OrderedMap<std::string>> message_strings;
    std::optional<OrderedMap<std::string>> rich_message_strings;
    ExtraFields extras;

    bool operator==(const RuleDescriptor&) const = default;
};

struct Resources
{
    OrderedMap<RuleDescriptor> rules;
    ExtraFields extras;

    bool operator==(const Resources&) const = default;
};

struct Tool
{
    std::string name;
    std::optional<std::string> full_name;
    std::optional<std::string> version;
    std::optional<std::string> semantic_version;
    std::optional<std::string> language;
    std::optional<OrderedMap<std::string>> properties;
    ExtraFields extras;

    bool operator==(const Tool&) const = default;
};

struct Run
{
    Tool tool;
    std::optional<std::vector<Invocation>> invocations;
    OrderedMap<FileEntry> files;
    OrderedMap<LogicalLocation> logical_locations;
    std::vector<Result> results;
    Resources resources;
    ExtraFields extras;

    bool operator==(const Run&) const = default;
};

struct SarifLog
{
    std::string version = kSarifVersion;
    std::string schema_uri = kSchemaUri;
    std::vector<Run> runs;
    ExtraFields extras;

    bool operator==(const SarifLog&) const = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// The message of a result, falling back to the owning run's rule metadata
/// via ruleMessageId when the result carries no message of its own.
/// Throws MissingMessageError when the fallback chain is exhausted.
[[nodiscard]] Message resolve_message(const Run& run, const Result& result);

/// Map key of a file nested inside `parent_key` at `fragment`.
/// The fragment must start with "/"; throws BadFragmentError otherwise.
[[nodiscard]] std::string nested_file_key(const std::string& parent_key, const std::string& fragment);

/// The logical-location key followed by each successive parentKey up to the
/// top-level entry. Throws UnknownKeyError / CyclicParentError.
[[nodiscard]] std::vector<std::string> parent_chain(const Run& run, const std::string& logical_key);

/// Rule descriptor for `rule_id`, or nullptr when it does not resolve.
[[nodiscard]] const RuleDescriptor* find_rule(const Run& run, const std::string& rule_id);

/// One violated construction invariant.
struct ModelViolation
{
    std::string path;
    std::string message;

    bool operator==(const ModelViolation&) const = default;
};

/// Checks the invariants that are enforced at construction/parse time
/// (the validator's SV-catalog checks are intentionally not repeated here;
/// they are reported as diagnostics, not construction failures).
[[nodiscard]] std::vector<ModelViolation> model_check(const SarifLog& log);

} // namespace sarif
