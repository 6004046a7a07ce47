#include "cogni/convert.hpp"

#include <vector>

namespace cogni {

namespace {

std::vector<std::string> split_segments(const std::string& name)
{
    std::vector<std::string> segments;
    std::size_t pos = 0;
    while (true) {
        const std::size_t sep = name.find("::", pos);
        if (sep == std::string::npos) {
            segments.push_back(name.substr(pos));
            return segments;
        }
        segments.push_back(name.substr(pos, sep - pos));
        pos = sep + 2;
    }
}

} // namespace

ToolConfig tool_config_from_json(const sarif::Json& json)
{
    if (!json.is_object()) {
        throw sarif::ModelError("$", "tool config must be a JSON object");
    }
    ToolConfig config;
    const auto read = [&](const char* key, std::string& target) {
        if (!json.contains(key)) {
            return;
        }
        const sarif::Json& value = json.at(key);
        if (!value.is_string()) {
            throw sarif::ModelError("$." + std::string(key), "must be a string");
        }
        target = value.get<std::string>();
    };
    read("name", config.name);
    read("fullName", config.full_name);
    read("version", config.version);
    read("semanticVersion", config.semantic_version);
    read("language", config.language);
    return config;
}

std::string class_to_uri(const std::string& fqcn)
{
    if (fqcn.empty()) {
        throw BadClassNameError("class name must be non-empty");
    }
    if (fqcn.find('/') != std::string::npos) {
        throw BadClassNameError("class name must not contain \"/\": \"" + fqcn + "\"");
    }
    std::string uri = fqcn;
    for (char& c : uri) {
        if (c == '.') {
            c = '/';
        }
    }
    return uri + ".java";
}

std::string logical_name(const std::string& fqcn, const std::string& method_signature)
{
    std::string name;
    name.reserve(fqcn.size() + method_signature.size() + 2);
    for (const char c : fqcn) {
        if (c == '.') {
            name += "::";
        } else {
            name += c;
        }
    }
    name += "::";
    name += bare_method_name(method_signature);
    return name;
}

sarif::Message split_message(const Finding& finding)
{
    sarif::Message msg;
    if (!finding.detail_lines.empty()) {
        msg.text = finding.detail_lines.front();
    } else {
        msg.text = to_string(finding.error_type) + " violating CrySL rule for " + finding.rule_class;
    }
    if (msg.text.empty() || msg.text.back() != '.') {
        msg.text += '.';
    }
    // The rich text restates the header with the object-hash clause stripped.
    msg.rich_text =
        to_string(finding.error_type) + " violating CrySL rule for " + finding.rule_class + ".";
    return msg;
}

sarif::OrderedMap<sarif::LogicalLocation> derive_logical_locations(
    const std::vector<sarif::Result>& results)
{
    sarif::OrderedMap<sarif::LogicalLocation> map;
    for (const sarif::Result& result : results) {
        for (const sarif::Location& location : result.locations) {
            if (!location.fully_qualified_logical_name) {
                continue;
            }
            const std::vector<std::string> segments =
                split_segments(*location.fully_qualified_logical_name);
            const std::size_t depth = segments.size();

            std::vector<std::string> prefixes(depth);
            for (std::size_t d = 0; d < depth; ++d) {
                prefixes[d] = d == 0 ? segments[0] : prefixes[d - 1] + "::" + segments[d];
            }

            // Deepest segment is the member, its container the type, the rest
            // namespaces; entries are emitted deepest-first, each naming its
            // parent, up to the top-level location.
            for (std::size_t d = depth; d >= 1; --d) {
                const std::string& key = prefixes[d - 1];
                if (map.contains(key)) {
                    continue;
                }
                sarif::LogicalLocation entry;
                entry.name = segments[d - 1];
                if (d == depth && depth > 1) {
                    entry.kind = "member";
                } else if (d + 1 == depth) {
                    entry.kind = "type";
                } else {
                    entry.kind = "namespace";
                }
                if (d > 1) {
                    entry.parent_key = prefixes[d - 2];
                }
                map.insert(key, std::move(entry));
            }
        }
    }
    return map;
}

sarif::SarifLog convert(const TextReport& report, const ToolConfig& config)
{
    sarif::SarifLog log;
    log.version = sarif::kSarifVersion;
    log.schema_uri = sarif::kSchemaUri;

    sarif::Run run;
    run.tool.name = config.name;
    run.tool.full_name = config.full_name;
    run.tool.version = config.version;
    run.tool.semantic_version = config.semantic_version;
    run.tool.language = config.language;

    std::size_t finding_count = 0;
    for (const ClassFindings& cls : report.classes) {
        sarif::FileEntry entry;
        entry.mime_type = "text/java";
        run.files.insert(class_to_uri(cls.class_name), std::move(entry));
        for (const MethodFindings& method : cls.methods) {
            finding_count += method.findings.size();
        }
    }
    run.results.reserve(finding_count);

    for (const ClassFindings& cls : report.classes) {
        const std::string uri = class_to_uri(cls.class_name);
        for (const MethodFindings& method : cls.methods) {
            const std::string qualified = logical_name(cls.class_name, method.method_signature);
            for (const Finding& finding : method.findings) {
                sarif::Result result;
                result.rule_id = to_string(finding.error_type);
                result.message = split_message(finding);

                sarif::Location location;
                sarif::PhysicalLocation physical;
                physical.file_location.uri = uri;
                sarif::Region region;
                region.start_line = finding.line;
                physical.region = std::move(region);
                location.physical_location = std::move(physical);
                location.fully_qualified_logical_name = qualified;
                result.locations.push_back(std::move(location));

                if (!run.resources.rules.contains(result.rule_id)) {
                    sarif::RuleDescriptor rule;
                    rule.id = result.rule_id;
                    sarif::Message description;
                    description.text = describe(finding.error_type).full_text;
                    rule.full_description = std::move(description);
                    run.resources.rules.insert(result.rule_id, std::move(rule));
                }

                run.results.push_back(std::move(result));
            }
        }
    }

    run.logical_locations = derive_logical_locations(run.results);
    log.runs.push_back(std::move(run));
    return log;
}

} // namespace cogni
