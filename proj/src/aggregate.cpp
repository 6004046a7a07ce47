#include "sarif/aggregate.hpp"

#include <map>

namespace sarif {

AggregationReport aggregate(std::span<const SarifLog> logs)
{
    if (logs.empty()) {
        throw EmptyInputError("aggregate needs at least one input log");
    }
    for (std::size_t i = 1; i < logs.size(); ++i) {
        if (logs[i].version != logs.front().version) {
            throw VersionMismatchError("input " + std::to_string(i) + " has version \""
                                       + logs[i].version + "\", expected \""
                                       + logs.front().version + "\"");
        }
    }

    AggregationReport report;
    report.source_count = logs.size();
    report.merged.version = logs.front().version;
    report.merged.schema_uri = logs.front().schema_uri;

    std::map<std::string, std::size_t> tool_names;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        if (logs[i].schema_uri != logs.front().schema_uri) {
            report.conflicts.push_back("input " + std::to_string(i) + " has $schema \""
                                       + logs[i].schema_uri + "\"; keeping \""
                                       + logs.front().schema_uri + "\"");
        }
        for (const Run& run : logs[i].runs) {
            ++tool_names[run.tool.name];
            report.merged.runs.push_back(run);
        }
    }
    for (const auto& [name, count] : tool_names) {
        if (count > 1) {
            report.conflicts.push_back("tool \"" + name + "\" appears in " + std::to_string(count)
                                       + " runs");
        }
    }
    return report;
}

} // namespace sarif
