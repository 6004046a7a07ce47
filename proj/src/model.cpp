#include "sarif/model.hpp"

#include <unordered_set>

namespace sarif {

std::string to_string(Level level)
{
    switch (level) {
    case Level::kError:
        return "error";
    case Level::kWarning:
        return "warning";
    case Level::kNote:
        return "note";
    }
    return "note";
}

std::optional<Level> level_from_string(const std::string& text)
{
    if (text == "error") {
        return Level::kError;
    }
    if (text == "warning") {
        return Level::kWarning;
    }
    if (text == "note") {
        return Level::kNote;
    }
    return std::nullopt;
}

Message resolve_message(const Run& run, const Result& result)
{
    if (result.message.has_value()) {
        return *result.message;
    }
    if (result.rule_message_id.has_value()) {
        const RuleDescriptor* rule = run.resources.rules.find(result.rule_id);
        if (rule != nullptr && rule->message_strings.has_value()) {
            const std::string* text = rule->message_strings->find(*result.rule_message_id);
            if (text != nullptr && !text->empty()) {
                Message msg;
                msg.text = *text;
                return msg;
            }
        }
    }
    throw MissingMessageError("result with ruleId \"" + result.rule_id
                              + "\" has no message and no resolvable ruleMessageId");
}

std::string nested_file_key(const std::string& parent_key, const std::string& fragment)
{
    if (fragment.empty() || fragment.front() != '/') {
        throw BadFragmentError("nested file fragment must start with \"/\": \"" + fragment + "\"");
    }
    return parent_key + "#" + fragment;
}

std::vector<std::string> parent_chain(const Run& run, const std::string& logical_key)
{
    std::vector<std::string> chain;
    std::unordered_set<std::string> seen;
    const std::string* key = &logical_key;
    while (true) {
        const LogicalLocation* entry = run.logical_locations.find(*key);
        if (entry == nullptr) {
            throw UnknownKeyError("logicalLocations has no entry \"" + *key + "\"");
        }
        if (!seen.insert(*key).second) {
            throw CyclicParentError("logicalLocations parent chain cycles at \"" + *key + "\"");
        }
        chain.push_back(*key);
        if (!entry->parent_key.has_value()) {
            return chain;
        }
        key = &*entry->parent_key;
    }
}

const RuleDescriptor* find_rule(const Run& run, const std::string& rule_id)
{
    return run.resources.rules.find(rule_id);
}

namespace {

class Checker
{
public:
    std::vector<ModelViolation> violations;

    void require(bool ok, const std::string& path, const std::string& message)
    {
        if (!ok) {
            violations.push_back({path, message});
        }
    }

    void check_message(const Message& msg, const std::string& path)
    {
        require(!msg.text.empty(), path + ".text", "message text must be non-empty");
    }

    void check_region(const Region& region, const std::string& path)
    {
        require(region.start_line >= 1, path + ".startLine", "startLine must be a positive integer");
        require(!region.start_column || *region.start_column >= 1, path + ".startColumn",
                "startColumn must be a positive integer");
        require(!region.end_line || *region.end_line >= 1, path + ".endLine",
                "endLine must be a positive integer");
        require(!region.end_column || *region.end_column >= 1, path + ".endColumn",
                "endColumn must be a positive integer");
        require(!region.char_length || *region.char_length >= 0, path + ".charLength",
                "charLength must be non-negative");
        require(!region.char_offset || *region.char_offset >= 0, path + ".charOffset",
                "charOffset must be non-negative");
    }

    void check_location(const Location& loc, const std::string& path)
    {
        require(loc.physical_location.has_value() || loc.fully_qualified_logical_name.has_value(),
                path, "location needs a physicalLocation or a fullyQualifiedLogicalName");
        if (loc.physical_location && loc.physical_location->region) {
            check_region(*loc.physical_location->region, path + ".physicalLocation.region");
        }
    }

    void check_run(const Run& run, const std::string& path)
    {
        require(!run.tool.name.empty(), path + ".tool.name", "tool name must be non-empty");

        if (run.invocations) {
            for (std::size_t i = 0; i < run.invocations->size(); ++i) {
                const Invocation& inv = (*run.invocations)[i];
                const std::string ipath = path + ".invocations[" + std::to_string(i) + "]";
                if (inv.start_time && inv.end_time) {
                    // RFC-3339 UTC strings compare chronologically as text.
                    require(*inv.start_time <= *inv.end_time, ipath + ".endTime",
                            "endTime precedes startTime");
                }
                for (std::size_t n = 0; n < inv.configuration_notifications.size(); ++n) {
                    check_message(inv.configuration_notifications[n].message,
                                  ipath + ".configurationNotifications[" + std::to_string(n)
                                      + "].message");
                }
                for (std::size_t n = 0; n < inv.tool_notifications.size(); ++n) {
                    check_message(inv.tool_notifications[n].message,
                                  ipath + ".toolNotifications[" + std::to_string(n) + "].message");
                }
            }
        }

        for (const auto& [key, entry] : run.logical_locations) {
            const std::string epath = path + ".logicalLocations[\"" + key + "\"]";
            require(last_segment(key) == entry.name, epath + ".name",
                    "name must equal the last \"::\" segment of the key");
        }

        for (std::size_t r = 0; r < run.results.size(); ++r) {
            check_result(run.results[r], path + ".results[" + std::to_string(r) + "]");
        }

        for (const auto& [key, rule] : run.resources.rules) {
            const std::string rpath = path + ".resources.rules[\"" + key + "\"]";
            require(!rule.id.empty(), rpath + ".id", "rule id must be non-empty");
            require(rule.id == key, rpath + ".id", "rule id must equal its map key");
            if (rule.short_description) {
                check_message(*rule.short_description, rpath + ".shortDescription");
            }
            if (rule.full_description) {
                check_message(*rule.full_description, rpath + ".fullDescription");
            }
        }
    }

    void check_result(const Result& result, const std::string& path)
    {
        if (result.message) {
            check_message(*result.message, path + ".message");
        }
        for (std::size_t l = 0; l < result.locations.size(); ++l) {
            check_location(result.locations[l], path + ".locations[" + std::to_string(l) + "]");
        }
        if (result.code_flows) {
            for (std::size_t c = 0; c < result.code_flows->size(); ++c) {
                const CodeFlow& flow = (*result.code_flows)[c];
                const std::string cpath = path + ".codeFlows[" + std::to_string(c) + "]";
                if (flow.message) {
                    check_message(*flow.message, cpath + ".message");
                }
                for (std::size_t t = 0; t < flow.thread_flows.size(); ++t) {
                    const ThreadFlow& tf = flow.thread_flows[t];
                    const std::string tpath = cpath + ".threadFlows[" + std::to_string(t) + "]";
                    require(!tf.locations.empty(), tpath + ".locations",
                            "thread flow locations must be non-empty");
                    for (std::size_t s = 0; s < tf.locations.size(); ++s) {
                        const ThreadFlowLocation& tfl = tf.locations[s];
                        const std::string spath = tpath + ".locations[" + std::to_string(s) + "]";
                        require(tfl.step >= 1, spath + ".step", "step must be a positive integer");
                        check_location(tfl.location, spath + ".location");
                        if (tfl.message) {
                            check_message(*tfl.message, spath + ".message");
                        }
                    }
                }
            }
        }
        if (result.stacks) {
            for (std::size_t s = 0; s < result.stacks->size(); ++s) {
                const Stack& stack = (*result.stacks)[s];
                const std::string spath = path + ".stacks[" + std::to_string(s) + "]";
                require(!stack.frames.empty(), spath + ".frames", "stack frames must be non-empty");
                for (std::size_t f = 0; f < stack.frames.size(); ++f) {
                    check_location(stack.frames[f].location,
                                   spath + ".frames[" + std::to_string(f) + "].location");
                }
            }
        }
        if (result.fixes) {
            for (std::size_t f = 0; f < result.fixes->size(); ++f) {
                const Fix& fix = (*result.fixes)[f];
                const std::string fpath = path + ".fixes[" + std::to_string(f) + "]";
                check_message(fix.description, fpath + ".description");
                require(!fix.file_changes.empty(), fpath + ".fileChanges",
                        "fileChanges must be non-empty");
                for (std::size_t c = 0; c < fix.file_changes.size(); ++c) {
                    const FileChange& change = fix.file_changes[c];
                    const std::string cpath = fpath + ".fileChanges[" + std::to_string(c) + "]";
                    require(!change.replacements.empty(), cpath + ".replacements",
                            "replacements must be non-empty");
                    for (std::size_t r = 0; r < change.replacements.size(); ++r) {
                        check_region(change.replacements[r].deleted_region,
                                     cpath + ".replacements[" + std::to_string(r)
                                         + "].deletedRegion");
                    }
                }
            }
        }
    }

    static std::string last_segment(const std::string& key)
    {
        const std::size_t pos = key.rfind("::");
        return pos == std::string::npos ? key : key.substr(pos + 2);
    }
};

} // namespace

std::vector<ModelViolation> model_check(const SarifLog& log)
{
    Checker checker;
    for (std::size_t i = 0; i < log.runs.size(); ++i) {
        checker.check_run(log.runs[i], "$.runs[" + std::to_string(i) + "]");
    }
    return checker.violations;
}

} // namespace sarif
