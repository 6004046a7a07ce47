#include "sarif/writer.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>
#include <type_traits>

namespace sarif {

namespace {

// --------------------------------------------------------------------------
// Model -> JSON
// --------------------------------------------------------------------------

void append_extras(Json& obj, const ExtraFields& extras)
{
    for (const auto& [key, value] : extras) {
        obj[key] = value;
    }
}

template <typename T, typename Fn>
Json map_to_json(const OrderedMap<T>& map, const WriteOptions& options, Fn entry_to_json)
{
    Json obj = Json::object();
    if (options.sort_maps) {
        std::vector<const typename OrderedMap<T>::value_type*> entries;
        entries.reserve(map.size());
        for (const auto& item : map.items()) {
            entries.push_back(&item);
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto* a, const auto* b) { return a->first < b->first; });
        for (const auto* item : entries) {
            obj[item->first] = entry_to_json(item->second);
        }
    } else {
        for (const auto& [key, value] : map) {
            obj[key] = entry_to_json(value);
        }
    }
    return obj;
}

Json string_map_to_json(const OrderedMap<std::string>& map, const WriteOptions& options)
{
    return map_to_json(map, options, [](const std::string& s) { return Json(s); });
}

Json message_to_json(const Message& msg)
{
    Json obj = Json::object();
    obj["text"] = msg.text;
    if (msg.rich_text) {
        obj["richText"] = *msg.rich_text;
    }
    append_extras(obj, msg.extras);
    return obj;
}

Json file_location_to_json(const FileLocation& loc)
{
    Json obj = Json::object();
    obj["uri"] = loc.uri;
    append_extras(obj, loc.extras);
    return obj;
}

Json notification_to_json(const Notification& note)
{
    Json obj = Json::object();
    obj["level"] = to_string(note.level);
    obj["message"] = message_to_json(note.message);
    append_extras(obj, note.extras);
    return obj;
}

Json invocation_to_json(const Invocation& inv, const WriteOptions& options)
{
    Json obj = Json::object();
    obj["commandLine"] = inv.command_line;
    if (!inv.response_files.empty()) {
        Json arr = Json::array();
        for (const FileLocation& file : inv.response_files) {
            arr.push_back(file_location_to_json(file));
        }
        obj["responseFiles"] = std::move(arr);
    }
    if (inv.start_time) {
        obj["startTime"] = *inv.start_time;
    }
    if (inv.end_time) {
        obj["endTime"] = *inv.end_time;
    }
    if (inv.file_name) {
        obj["fileName"] = *inv.file_name;
    }
    if (inv.working_directory) {
        obj["workingDirectory"] = *inv.working_directory;
    }
    if (!inv.environment_variables.empty()) {
        obj["environmentVariables"] = string_map_to_json(inv.environment_variables, options);
    }
    if (!inv.configuration_notifications.empty()) {
        Json arr = Json::array();
        for (const Notification& note : inv.configuration_notifications) {
            arr.push_back(notification_to_json(note));
        }
        obj["configurationNotifications"] = std::move(arr);
    }
    if (!inv.tool_notifications.empty()) {
        Json arr = Json::array();
        for (const Notification& note : inv.tool_notifications) {
            arr.push_back(notification_to_json(note));
        }
        obj["toolNotifications"] = std::move(arr);
    }
    append_extras(obj, inv.extras);
    return obj;
}

Json file_entry_to_json(const FileEntry& entry)
{
    Json obj = Json::object();
    if (entry.uri) {
        obj["uri"] = *entry.uri;
    }
    obj["mimeType"] = entry.mime_type;
    if (entry.parent_key) {
        obj["parentKey"] = *entry.parent_key;
    }
    if (entry.length) {
        obj["length"] = *entry.length;
    }
    append_extras(obj, entry.extras);
    return obj;
}

Json logical_location_to_json(const LogicalLocation& loc)
{
    Json obj = Json::object();
    obj["name"] = loc.name;
    obj["kind"] = loc.kind;
    if (loc.parent_key) {
        obj["parentKey"] = *loc.parent_key;
    }
    append_extras(obj, loc.extras);
    return obj;
}

Json snippet_to_json(const Snippet& snippet)
{
    Json obj = Json::object();
    obj["text"] = snippet.text;
    append_extras(obj, snippet.extras);
    return obj;
}

Json region_to_json(const Region& region)
{
    Json obj = Json::object();
    obj["startLine"] = region.start_line;
    if (region.start_column) {
        obj["startColumn"] = *region.start_column;
    }
    if (region.end_line) {
        obj["endLine"] = *region.end_line;
    }
    if (region.end_column) {
        obj["endColumn"] = *region.end_column;
    }
    if (region.char_length) {
        obj["charLength"] = *region.char_length;
    }
    if (region.char_offset) {
        obj["charOffset"] = *region.char_offset;
    }
    if (region.snippet) {
        obj["snippet"] = snippet_to_json(*region.snippet);
    }
    append_extras(obj, region.extras);
    return obj;
}

Json location_to_json(const Location& loc)
{
    Json obj = Json::object();
    if (loc.physical_location) {
        Json phys = Json::object();
        phys["fileLocation"] = file_location_to_json(loc.physical_location->file_location);
        if (loc.physical_location->region) {
            phys["region"] = region_to_json(*loc.physical_location->region);
        }
        append_extras(phys, loc.physical_location->extras);
        obj["physicalLocation"] = std::move(phys);
    }
    if (loc.fully_qualified_logical_name) {
        obj["fullyQualifiedLogicalName"] = *loc.fully_qualified_logical_name;
    }
    append_extras(obj, loc.extras);
    return obj;
}

Json code_flow_to_json(const CodeFlow& flow)
{
    Json obj = Json::object();
    if (flow.message) {
        obj["message"] = message_to_json(*flow.message);
    }
    Json flows = Json::array();
    for (const ThreadFlow& tf : flow.thread_flows) {
        Json tf_obj = Json::object();
        if (tf.id) {
            tf_obj["id"] = *tf.id;
        }
        Json locs = Json::array();
        for (const ThreadFlowLocation& tfl : tf.locations) {
            Json loc = Json::object();
            loc["step"] = tfl.step;
            if (tfl.importance) {
                loc["importance"] = *tfl.importance;
            }
            if (tfl.message) {
                loc["message"] = message_to_json(*tfl.message);
            }
            loc["location"] = location_to_json(tfl.location);
            if (tfl.module_name) {
                loc["module"] = *tfl.module_name;
            }
            append_extras(loc, tfl.extras);
            locs.push_back(std::move(loc));
        }
        tf_obj["locations"] = std::move(locs);
        append_extras(tf_obj, tf.extras);
        flows.push_back(std::move(tf_obj));
    }
    obj["threadFlows"] = std::move(flows);
    append_extras(obj, flow.extras);
    return obj;
}

Json stack_to_json(const Stack& stack)
{
    Json obj = Json::object();
    if (stack.message) {
        obj["message"] = message_to_json(*stack.message);
    }
    Json frames = Json::array();
    for (const StackFrame& frame : stack.frames) {
        Json frame_obj = Json::object();
        if (frame.message) {
            frame_obj["message"] = message_to_json(*frame.message);
        }
        frame_obj["location"] = location_to_json(frame.location);
        if (frame.thread_id) {
            frame_obj["threadId"] = *frame.thread_id;
        }
        if (frame.address) {
            frame_obj["address"] = *frame.address;
        }
        if (frame.parameters) {
            frame_obj["parameters"] = Json(*frame.parameters);
        }
        append_extras(frame_obj, frame.extras);
        frames.push_back(std::move(frame_obj));
    }
    obj["frames"] = std::move(frames);
    append_extras(obj, stack.extras);
    return obj;
}

Json fix_to_json(const Fix& fix)
{
    Json obj = Json::object();
    obj["description"] = message_to_json(fix.description);
    Json changes = Json::array();
    for (const FileChange& change : fix.file_changes) {
        Json change_obj = Json::object();
        change_obj["fileLocation"] = file_location_to_json(change.file_location);
        Json reps = Json::array();
        for (const Replacement& rep : change.replacements) {
            Json rep_obj = Json::object();
            rep_obj["deletedRegion"] = region_to_json(rep.deleted_region);
            if (rep.inserted_content) {
                rep_obj["insertedContent"] = snippet_to_json(*rep.inserted_content);
            }
            append_extras(rep_obj, rep.extras);
            reps.push_back(std::move(rep_obj));
        }
        change_obj["replacements"] = std::move(reps);
        append_extras(change_obj, change.extras);
        changes.push_back(std::move(change_obj));
    }
    obj["fileChanges"] = std::move(changes);
    append_extras(obj, fix.extras);
    return obj;
}

Json result_to_json(const Result& result)
{
    Json obj = Json::object();
    obj["ruleId"] = result.rule_id;
    if (result.rule_message_id) {
        obj["ruleMessageId"] = *result.rule_message_id;
    }
    if (result.rich_message_id) {
        obj["richMessageId"] = *result.rich_message_id;
    }
    if (result.message) {
        obj["message"] = message_to_json(*result.message);
    }
    if (result.suppression_states) {
        obj["suppressionStates"] = Json(*result.suppression_states);
    }
    if (result.baseline_state) {
        obj["baselineState"] = *result.baseline_state;
    }
    if (result.level) {
        obj["level"] = to_string(*result.level);
    }
    if (result.analysis_target) {
        obj["analysisTarget"] = file_location_to_json(*result.analysis_target);
    }
    Json locs = Json::array();
    for (const Location& loc : result.locations) {
        locs.push_back(location_to_json(loc));
    }
    obj["locations"] = std::move(locs);
    if (result.code_flows) {
        Json arr = Json::array();
        for (const CodeFlow& flow : *result.code_flows) {
            arr.push_back(code_flow_to_json(flow));
        }
        obj["codeFlows"] = std::move(arr);
    }
    if (result.stacks) {
        Json arr = Json::array();
        for (const Stack& stack : *result.stacks) {
            arr.push_back(stack_to_json(stack));
        }
        obj["stacks"] = std::move(arr);
    }
    if (result.fixes) {
        Json arr = Json::array();
        for (const Fix& fix : *result.fixes) {
            arr.push_back(fix_to_json(fix));
        }
        obj["fixes"] = std::move(arr);
    }
    if (result.work_item_uris) {
        obj["workItemUris"] = Json(*result.work_item_uris);
    }
    append_extras(obj, result.extras);
    return obj;
}

Json rule_to_json(const RuleDescriptor& rule, const WriteOptions& options)
{
    Json obj = Json::object();
    obj["id"] = rule.id;
    if (rule.short_description) {
        obj["shortDescription"] = message_to_json(*rule.short_description);
    }
    if (rule.full_description) {
        obj["fullDescription"] = message_to_json(*rule.full_description);
    }
    if (rule.message_strings) {
        obj["messageStrings"] = string_map_to_json(*rule.message_strings, options);
    }
    if (rule.rich_message_strings) {
        obj["richMessageStrings"] = string_map_to_json(*rule.rich_message_strings, options);
    }
    append_extras(obj, rule.extras);
    return obj;
}

Json tool_to_json(const Tool& tool, const WriteOptions& options)
{
    Json obj = Json::object();
    obj["name"] = tool.name;
    if (tool.full_name) {
        obj["fullName"] = *tool.full_name;
    }
    if (tool.version) {
        obj["version"] = *tool.version;
    }
    if (tool.semantic_version) {
        obj["semanticVersion"] = *tool.semantic_version;
    }
    if (tool.language) {
        obj["language"] = *tool.language;
    }
    if (tool.properties) {
        obj["properties"] = string_map_to_json(*tool.properties, options);
    }
    append_extras(obj, tool.extras);
    return obj;
}

Json run_to_json(const Run& run, const WriteOptions& options)
{
    Json obj = Json::object();
    obj["tool"] = tool_to_json(run.tool, options);
    if (run.invocations) {
        Json arr = Json::array();
        for (const Invocation& inv : *run.invocations) {
            arr.push_back(invocation_to_json(inv, options));
        }
        obj["invocations"] = std::move(arr);
    }
    obj["files"] = map_to_json(run.files, options, file_entry_to_json);
    obj["logicalLocations"] = map_to_json(run.logical_locations, options, logical_location_to_json);
    Json results = Json::array();
    for (const Result& result : run.results) {
        results.push_back(result_to_json(result));
    }
    obj["results"] = std::move(results);
    Json resources = Json::object();
    resources["rules"] = map_to_json(run.resources.rules, options,
                                     [&](const RuleDescriptor& r) { return rule_to_json(r, options); });
    append_extras(resources, run.resources.extras);
    obj["resources"] = std::move(resources);
    append_extras(obj, run.extras);
    return obj;
}

// --------------------------------------------------------------------------
// JSON -> Model
// --------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ModelError(path, message);
}

void require_object(const Json& value, const std::string& path)
{
    if (!value.is_object()) {
        fail(path, "must be an object");
    }
}

const Json& require_key(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key)) {
        fail(path + "." + key, "missing required key");
    }
    return obj.at(key);
}

std::string as_string(const Json& value, const std::string& path)
{
    if (!value.is_string()) {
        fail(path, "must be a string");
    }
    return value.get<std::string>();
}

std::string require_string(const Json& obj, const char* key, const std::string& path)
{
    return as_string(require_key(obj, key, path), path + "." + key);
}

std::optional<std::string> optional_string(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    return as_string(obj.at(key), path + "." + key);
}

std::int64_t as_int(const Json& value, const std::string& path)
{
    if (value.is_number_float()) {
        fail(path, "must be an integer, not a fractional number");
    }
    if (!value.is_number_integer()) {
        fail(path, "must be an integer");
    }
    if (value.is_number_unsigned()
        && value.get<std::uint64_t>()
               > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail(path, "integer out of range");
    }
    return value.get<std::int64_t>();
}

std::optional<std::int64_t> optional_int(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    return as_int(obj.at(key), path + "." + key);
}

Level as_level(const Json& value, const std::string& path)
{
    const std::string text = as_string(value, path);
    const std::optional<Level> level = level_from_string(text);
    if (!level) {
        fail(path, "level must be one of \"error\", \"warning\", \"note\"");
    }
    return *level;
}

void collect_extras(const Json& obj, std::initializer_list<std::string_view> known,
                    ExtraFields& extras)
{
    for (const auto& [key, value] : obj.items()) {
        const bool is_known =
            std::find(known.begin(), known.end(), std::string_view(key)) != known.end();
        if (!is_known) {
            extras.emplace_back(key, value);
        }
    }
}

std::vector<std::string> as_string_array(const Json& value, const std::string& path)
{
    if (!value.is_array()) {
        fail(path, "must be an array");
    }
    std::vector<std::string> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(as_string(value.at(i), path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

OrderedMap<std::string> as_string_map(const Json& value, const std::string& path)
{
    require_object(value, path);
    OrderedMap<std::string> out;
    for (const auto& [key, entry] : value.items()) {
        out.insert(key, as_string(entry, path + "[\"" + key + "\"]"));
    }
    return out;
}

Message message_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Message msg;
    msg.text = require_string(value, "text", path);
    msg.rich_text = optional_string(value, "richText", path);
    collect_extras(value, {"text", "richText"}, msg.extras);
    return msg;
}

FileLocation file_location_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    FileLocation loc;
    loc.uri = require_string(value, "uri", path);
    collect_extras(value, {"uri"}, loc.extras);
    return loc;
}

Notification notification_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Notification note;
    note.level = as_level(require_key(value, "level", path), path + ".level");
    note.message = message_from_json(require_key(value, "message", path), path + ".message");
    collect_extras(value, {"level", "message"}, note.extras);
    return note;
}

Invocation invocation_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Invocation inv;
    inv.command_line = require_string(value, "commandLine", path);
    if (value.contains("responseFiles")) {
        const Json& arr = value.at("responseFiles");
        const std::string apath = path + ".responseFiles";
        if (!arr.is_array()) {
            fail(apath, "must be an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            inv.response_files.push_back(
                file_location_from_json(arr.at(i), apath + "[" + std::to_string(i) + "]"));
        }
    }
    inv.start_time = optional_string(value, "startTime", path);
    inv.end_time = optional_string(value, "endTime", path);
    inv.file_name = optional_string(value, "fileName", path);
    inv.working_directory = optional_string(value, "workingDirectory", path);
    if (value.contains("environmentVariables")) {
        inv.environment_variables =
            as_string_map(value.at("environmentVariables"), path + ".environmentVariables");
    }
    const auto parse_notifications = [&](const char* key, std::vector<Notification>& out) {
        if (!value.contains(key)) {
            return;
        }
        const Json& arr = value.at(key);
        const std::string apath = path + "." + key;
        if (!arr.is_array()) {
            fail(apath, "must be an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out.push_back(notification_from_json(arr.at(i), apath + "[" + std::to_string(i) + "]"));
        }
    };
    parse_notifications("configurationNotifications", inv.configuration_notifications);
    parse_notifications("toolNotifications", inv.tool_notifications);
    collect_extras(value,
                   {"commandLine", "responseFiles", "startTime", "endTime", "fileName",
                    "workingDirectory", "environmentVariables", "configurationNotifications",
                    "toolNotifications"},
                   inv.extras);
    return inv;
}

FileEntry file_entry_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    FileEntry entry;
    entry.uri = optional_string(value, "uri", path);
    entry.mime_type = require_string(value, "mimeType", path);
    entry.parent_key = optional_string(value, "parentKey", path);
    entry.length = optional_int(value, "length", path);
    if (entry.length && *entry.length < 0) {
        fail(path + ".length", "must be non-negative");
    }
    collect_extras(value, {"uri", "mimeType", "parentKey", "length"}, entry.extras);
    return entry;
}

LogicalLocation logical_location_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    LogicalLocation loc;
    loc.name = require_string(value, "name", path);
    loc.kind = require_string(value, "kind", path);
    loc.parent_key = optional_string(value, "parentKey", path);
    collect_extras(value, {"name", "kind", "parentKey"}, loc.extras);
    return loc;
}

Snippet snippet_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Snippet snippet;
    snippet.text = require_string(value, "text", path);
    collect_extras(value, {"text"}, snippet.extras);
    return snippet;
}

Region region_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Region region;
    region.start_line = as_int(require_key(value, "startLine", path), path + ".startLine");
    region.start_column = optional_int(value, "startColumn", path);
    region.end_line = optional_int(value, "endLine", path);
    region.end_column = optional_int(value, "endColumn", path);
    region.char_length = optional_int(value, "charLength", path);
    region.char_offset = optional_int(value, "charOffset", path);
    if (value.contains("snippet")) {
        region.snippet = snippet_from_json(value.at("snippet"), path + ".snippet");
    }
    collect_extras(value,
                   {"startLine", "startColumn", "endLine", "endColumn", "charLength", "charOffset",
                    "snippet"},
                   region.extras);
    return region;
}

Location location_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Location loc;
    if (value.contains("physicalLocation")) {
        const Json& phys = value.at("physicalLocation");
        const std::string ppath = path + ".physicalLocation";
        require_object(phys, ppath);
        PhysicalLocation physical;
        physical.file_location =
            file_location_from_json(require_key(phys, "fileLocation", ppath), ppath + ".fileLocation");
        if (phys.contains("region")) {
            physical.region = region_from_json(phys.at("region"), ppath + ".region");
        }
        collect_extras(phys, {"fileLocation", "region"}, physical.extras);
        loc.physical_location = std::move(physical);
    }
    loc.fully_qualified_logical_name = optional_string(value, "fullyQualifiedLogicalName", path);
    collect_extras(value, {"physicalLocation", "fullyQualifiedLogicalName"}, loc.extras);
    return loc;
}

CodeFlow code_flow_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    CodeFlow flow;
    if (value.contains("message")) {
        flow.message = message_from_json(value.at("message"), path + ".message");
    }
    const Json& flows = require_key(value, "threadFlows", path);
    const std::string fpath = path + ".threadFlows";
    if (!flows.is_array()) {
        fail(fpath, "must be an array");
    }
    for (std::size_t t = 0; t < flows.size(); ++t) {
        const Json& tf_json = flows.at(t);
        const std::string tpath = fpath + "[" + std::to_string(t) + "]";
        require_object(tf_json, tpath);
        ThreadFlow tf;
        tf.id = optional_string(tf_json, "id", tpath);
        const Json& locs = require_key(tf_json, "locations", tpath);
        const std::string lpath = tpath + ".locations";
        if (!locs.is_array()) {
            fail(lpath, "must be an array");
        }
        for (std::size_t i = 0; i < locs.size(); ++i) {
            const Json& tfl_json = locs.at(i);
            const std::string ipath = lpath + "[" + std::to_string(i) + "]";
            require_object(tfl_json, ipath);
            ThreadFlowLocation tfl;
            tfl.step = as_int(require_key(tfl_json, "step", ipath), ipath + ".step");
            tfl.importance = optional_string(tfl_json, "importance", ipath);
            if (tfl_json.contains("message")) {
                tfl.message = message_from_json(tfl_json.at("message"), ipath + ".message");
            }
            tfl.location =
                location_from_json(require_key(tfl_json, "location", ipath), ipath + ".location");
            tfl.module_name = optional_string(tfl_json, "module", ipath);
            collect_extras(tfl_json, {"step", "importance", "message", "location", "module"},
                           tfl.extras);
            tf.locations.push_back(std::move(tfl));
        }
        collect_extras(tf_json, {"id", "locations"}, tf.extras);
        flow.thread_flows.push_back(std::move(tf));
    }
    collect_extras(value, {"message", "threadFlows"}, flow.extras);
    return flow;
}

Stack stack_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Stack stack;
    if (value.contains("message")) {
        stack.message = message_from_json(value.at("message"), path + ".message");
    }
    const Json& frames = require_key(value, "frames", path);
    const std::string fpath = path + ".frames";
    if (!frames.is_array()) {
        fail(fpath, "must be an array");
    }
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const Json& frame_json = frames.at(i);
        const std::string ipath = fpath + "[" + std::to_string(i) + "]";
        require_object(frame_json, ipath);
        StackFrame frame;
        if (frame_json.contains("message")) {
            frame.message = message_from_json(frame_json.at("message"), ipath + ".message");
        }
        frame.location =
            location_from_json(require_key(frame_json, "location", ipath), ipath + ".location");
        frame.thread_id = optional_int(frame_json, "threadId", ipath);
        frame.address = optional_int(frame_json, "address", ipath);
        if (frame_json.contains("parameters")) {
            frame.parameters = as_string_array(frame_json.at("parameters"), ipath + ".parameters");
        }
        collect_extras(frame_json, {"message", "location", "threadId", "address", "parameters"},
                       frame.extras);
        stack.frames.push_back(std::move(frame));
    }
    collect_extras(value, {"message", "frames"}, stack.extras);
    return stack;
}

Fix fix_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Fix fix;
    fix.description = message_from_json(require_key(value, "description", path), path + ".description");
    const Json& changes = require_key(value, "fileChanges", path);
    const std::string cpath = path + ".fileChanges";
    if (!changes.is_array()) {
        fail(cpath, "must be an array");
    }
    for (std::size_t c = 0; c < changes.size(); ++c) {
        const Json& change_json = changes.at(c);
        const std::string ipath = cpath + "[" + std::to_string(c) + "]";
        require_object(change_json, ipath);
        FileChange change;
        change.file_location = file_location_from_json(require_key(change_json, "fileLocation", ipath),
                                                       ipath + ".fileLocation");
        const Json& reps = require_key(change_json, "replacements", ipath);
        const std::string rpath = ipath + ".replacements";
        if (!reps.is_array()) {
            fail(rpath, "must be an array");
        }
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const Json& rep_json = reps.at(r);
            const std::string rep_path = rpath + "[" + std::to_string(r) + "]";
            require_object(rep_json, rep_path);
            Replacement rep;
            rep.deleted_region = region_from_json(require_key(rep_json, "deletedRegion", rep_path),
                                                  rep_path + ".deletedRegion");
            if (rep_json.contains("insertedContent")) {
                rep.inserted_content =
                    snippet_from_json(rep_json.at("insertedContent"), rep_path + ".insertedContent");
            }
            collect_extras(rep_json, {"deletedRegion", "insertedContent"}, rep.extras);
            change.replacements.push_back(std::move(rep));
        }
        collect_extras(change_json, {"fileLocation", "replacements"}, change.extras);
        fix.file_changes.push_back(std::move(change));
    }
    collect_extras(value, {"description", "fileChanges"}, fix.extras);
    return fix;
}

Result result_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Result result;
    result.rule_id = require_string(value, "ruleId", path);
    result.rule_message_id = optional_string(value, "ruleMessageId", path);
    result.rich_message_id = optional_string(value, "richMessageId", path);
    if (value.contains("message")) {
        result.message = message_from_json(value.at("message"), path + ".message");
    }
    if (value.contains("suppressionStates")) {
        result.suppression_states =
            as_string_array(value.at("suppressionStates"), path + ".suppressionStates");
    }
    result.baseline_state = optional_string(value, "baselineState", path);
    if (value.contains("level")) {
        result.level = as_level(value.at("level"), path + ".level");
    }
    if (value.contains("analysisTarget")) {
        result.analysis_target =
            file_location_from_json(value.at("analysisTarget"), path + ".analysisTarget");
    }
    if (value.contains("locations")) {
        const Json& locs = value.at("locations");
        const std::string lpath = path + ".locations";
        if (!locs.is_array()) {
            fail(lpath, "must be an array");
        }
        for (std::size_t i = 0; i < locs.size(); ++i) {
            result.locations.push_back(
                location_from_json(locs.at(i), lpath + "[" + std::to_string(i) + "]"));
        }
    }
    const auto parse_array = [&](const char* key, auto parse_fn, auto& target) {
        if (!value.contains(key)) {
            return;
        }
        const Json& arr = value.at(key);
        const std::string apath = path + "." + key;
        if (!arr.is_array()) {
            fail(apath, "must be an array");
        }
        typename std::remove_reference_t<decltype(target)>::value_type out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out.push_back(parse_fn(arr.at(i), apath + "[" + std::to_string(i) + "]"));
        }
        target = std::move(out);
    };
    parse_array("codeFlows", code_flow_from_json, result.code_flows);
    parse_array("stacks", stack_from_json, result.stacks);
    parse_array("fixes", fix_from_json, result.fixes);
    if (value.contains("workItemUris")) {
        result.work_item_uris = as_string_array(value.at("workItemUris"), path + ".workItemUris");
    }
    collect_extras(value,
                   {"ruleId", "ruleMessageId", "richMessageId", "message", "suppressionStates",
                    "baselineState", "level", "analysisTarget", "locations", "codeFlows", "stacks",
                    "fixes", "workItemUris"},
                   result.extras);
    return result;
}

RuleDescriptor rule_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    RuleDescriptor rule;
    rule.id = require_string(value, "id", path);
    if (value.contains("shortDescription")) {
        rule.short_description =
            message_from_json(value.at("shortDescription"), path + ".shortDescription");
    }
    if (value.contains("fullDescription")) {
        rule.full_description =
            message_from_json(value.at("fullDescription"), path + ".fullDescription");
    }
    if (value.contains("messageStrings")) {
        rule.message_strings = as_string_map(value.at("messageStrings"), path + ".messageStrings");
    }
    if (value.contains("richMessageStrings")) {
        rule.rich_message_strings =
            as_string_map(value.at("richMessageStrings"), path + ".richMessageStrings");
    }
    collect_extras(value,
                   {"id", "shortDescription", "fullDescription", "messageStrings",
                    "richMessageStrings"},
                   rule.extras);
    return rule;
}

Tool tool_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Tool tool;
    tool.name = require_string(value, "name", path);
    tool.full_name = optional_string(value, "fullName", path);
    tool.version = optional_string(value, "version", path);
    tool.semantic_version = optional_string(value, "semanticVersion", path);
    tool.language = optional_string(value, "language", path);
    if (value.contains("properties")) {
        tool.properties = as_string_map(value.at("properties"), path + ".properties");
    }
    collect_extras(value, {"name", "fullName", "version", "semanticVersion", "language", "properties"},
                   tool.extras);
    return tool;
}

Run run_from_json(const Json& value, const std::string& path)
{
    require_object(value, path);
    Run run;
    run.tool = tool_from_json(require_key(value, "tool", path), path + ".tool");
    if (value.contains("invocations")) {
        const Json& arr = value.at("invocations");
        const std::string apath = path + ".invocations";
        if (!arr.is_array()) {
            fail(apath, "must be an array");
        }
        std::vector<Invocation> invocations;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            invocations.push_back(
                invocation_from_json(arr.at(i), apath + "[" + std::to_string(i) + "]"));
        }
        run.invocations = std::move(invocations);
    }
    if (value.contains("files")) {
        const Json& files = value.at("files");
        const std::string fpath = path + ".files";
        require_object(files, fpath);
        for (const auto& [key, entry] : files.items()) {
            run.files.insert(key, file_entry_from_json(entry, fpath + "[\"" + key + "\"]"));
        }
    }
    if (value.contains("logicalLocations")) {
        const Json& locs = value.at("logicalLocations");
        const std::string lpath = path + ".logicalLocations";
        require_object(locs, lpath);
        for (const auto& [key, entry] : locs.items()) {
            run.logical_locations.insert(key,
                                         logical_location_from_json(entry, lpath + "[\"" + key + "\"]"));
        }
    }
    if (value.contains("results")) {
        const Json& results = value.at("results");
        const std::string rpath = path + ".results";
        if (!results.is_array()) {
            fail(rpath, "must be an array");
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            run.results.push_back(result_from_json(results.at(i), rpath + "[" + std::to_string(i) + "]"));
        }
    }
    if (value.contains("resources")) {
        const Json& resources = value.at("resources");
        const std::string rpath = path + ".resources";
        require_object(resources, rpath);
        if (resources.contains("rules")) {
            const Json& rules = resources.at("rules");
            const std::string rupath = rpath + ".rules";
            require_object(rules, rupath);
            for (const auto& [key, entry] : rules.items()) {
                run.resources.rules.insert(key, rule_from_json(entry, rupath + "[\"" + key + "\"]"));
            }
        }
        collect_extras(resources, {"rules"}, run.resources.extras);
    }
    collect_extras(value, {"tool", "invocations", "files", "logicalLocations", "results", "resources"},
                   run.extras);
    return run;
}

} // namespace

std::string write(const SarifLog& log, const WriteOptions& options)
{
    if (options.indent_width < 0 || options.indent_width > 8) {
        throw Error("indent width must be between 0 and 8");
    }
    Json doc = Json::object();
    doc["version"] = log.version;
    doc["$schema"] = log.schema_uri;
    Json runs = Json::array();
    for (const Run& run : log.runs) {
        runs.push_back(run_to_json(run, options));
    }
    doc["runs"] = std::move(runs);
    append_extras(doc, log.extras);

    const int indent = options.indent_width == 0 ? -1 : options.indent_width;
    std::string out = doc.dump(indent);
    out.push_back('\n');
    return out;
}

SarifLog parse(std::string_view bytes)
{
    Json doc;
    try {
        doc = Json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonSyntaxError(e.byte, e.what());
    }
    if (!doc.is_object()) {
        fail("$", "top-level JSON value must be an object");
    }

    SarifLog log;
    log.version = require_string(doc, "version", "$");
    if (!doc.contains("$schema")) {
        fail("$.$schema", "missing required key");
    }
    log.schema_uri = as_string(doc.at("$schema"), "$.$schema");
    const Json& runs = require_key(doc, "runs", "$");
    if (!runs.is_array()) {
        fail("$.runs", "must be an array");
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        log.runs.push_back(run_from_json(runs.at(i), "$.runs[" + std::to_string(i) + "]"));
    }
    collect_extras(doc, {"version", "$schema", "runs"}, log.extras);

    const std::vector<ModelViolation> violations = model_check(log);
    if (!violations.empty()) {
        throw ModelError(violations.front().path, violations.front().message);
    }
    return log;
}

} // namespace sarif
