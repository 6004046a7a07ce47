#include "sarif/validator.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace sarif {

namespace {

const std::unordered_set<std::string> kBaselineStates = {"new", "existing", "absent"};
const std::unordered_set<std::string> kSuppressionStates = {"suppressedExternally"};

class Validator
{
public:
    std::vector<Diagnostic> diagnostics;

    void report(const char* check_id, Level severity, std::string path, std::string message)
    {
        diagnostics.push_back({check_id, severity, std::move(path), std::move(message)});
    }

    void check_log(const SarifLog& log)
    {
        if (log.version != kSarifVersion) {
            report("SV001", Level::kError, "$.version",
                   "version must be \"" + std::string(kSarifVersion) + "\", got \"" + log.version
                       + "\"");
        }
        const std::string derived = kSchemaUriPrefix + log.version;
        if (log.schema_uri != derived && log.schema_uri != kSchemaUri) {
            report("SV002", Level::kError, "$.$schema",
                   "$schema \"" + log.schema_uri + "\" does not correspond to version \""
                       + log.version + "\"");
        }
        if (log.runs.empty()) {
            report("SV012", Level::kWarning, "$.runs", "runs array is empty");
        }
        for (std::size_t i = 0; i < log.runs.size(); ++i) {
            check_run(log.runs[i], "$.runs[" + std::to_string(i) + "]");
        }
    }

private:
    void check_run(const Run& run, const std::string& path)
    {
        check_file_map(run, path);
        check_parent_links(run.logical_locations, path + ".logicalLocations",
                           [](const LogicalLocation& loc) -> const std::optional<std::string>& {
                               return loc.parent_key;
                           });

        for (std::size_t r = 0; r < run.results.size(); ++r) {
            check_result(run, run.results[r], path + ".results[" + std::to_string(r) + "]");
        }
    }

    void check_file_map(const Run& run, const std::string& path)
    {
        const std::string fpath = path + ".files";
        check_parent_links(run.files, fpath,
                           [](const FileEntry& e) -> const std::optional<std::string>& {
                               return e.parent_key;
                           });

        for (const auto& [key, entry] : run.files) {
            const std::string epath = fpath + "[\"" + key + "\"]";
            const std::size_t hash = key.find('#');
            if (entry.parent_key) {
                if (!entry.uri) {
                    report("SV005", Level::kError, epath,
                           "nested file entry needs a uri alongside parentKey");
                    continue;
                }
                if (entry.uri->empty() || entry.uri->front() != '/') {
                    report("SV005", Level::kError, epath + ".uri",
                           "nested file uri must start with \"/\"");
                }
                if (key != *entry.parent_key + "#" + *entry.uri) {
                    report("SV005", Level::kError, epath,
                           "key must equal parentKey + \"#\" + uri");
                }
            } else if (hash != std::string::npos) {
                // A "#" in the key marks nesting; the fragment must start with "/".
                if (hash + 1 >= key.size() || key[hash + 1] != '/') {
                    report("SV005", Level::kError, epath,
                           "nested file fragment after \"#\" must start with \"/\"");
                }
            }
        }
    }

    template <typename T, typename ParentFn>
    void check_parent_links(const OrderedMap<T>& map, const std::string& path, ParentFn parent_of)
    {
        for (const auto& [key, entry] : map) {
            const std::optional<std::string>& parent = parent_of(entry);
            if (!parent) {
                continue;
            }
            const std::string epath = path + "[\"" + key + "\"].parentKey";
            if (!map.contains(*parent)) {
                report("SV004", Level::kError, epath,
                       "parentKey \"" + *parent + "\" is not a key of this map");
                continue;
            }
            // Walk up; a repeated key means the chain cycles.
            std::unordered_set<std::string> seen{key};
            const std::string* current = &*parent;
            while (true) {
                if (!seen.insert(*current).second) {
                    report("SV004", Level::kError, epath,
                           "parent chain starting at \"" + key + "\" is cyclic");
                    break;
                }
                const T* next = map.find(*current);
                if (next == nullptr) {
                    report("SV004", Level::kError, epath,
                           "parent chain starting at \"" + key + "\" leaves the map at \""
                               + *current + "\"");
                    break;
                }
                const std::optional<std::string>& up = parent_of(*next);
                if (!up) {
                    break;
                }
                current = &*up;
            }
        }
    }

    void check_result(const Run& run, const Result& result, const std::string& path)
    {
        const RuleDescriptor* rule = run.resources.rules.find(result.rule_id);
        if (rule == nullptr) {
            report("SV003", Level::kError, path + ".ruleId",
                   "ruleId \"" + result.rule_id + "\" does not resolve in resources.rules");
        }

        check_message_fallback(rule, result, path);

        bool any_located = false;
        for (const Location& loc : result.locations) {
            if (loc.physical_location || loc.fully_qualified_logical_name) {
                any_located = true;
                break;
            }
        }
        if (!any_located) {
            report("SV006", Level::kError, path + ".locations",
                   "result needs at least one location with a physicalLocation or a "
                   "fullyQualifiedLogicalName");
        }

        if (result.baseline_state && !kBaselineStates.contains(*result.baseline_state)) {
            report("SV008", Level::kWarning, path + ".baselineState",
                   "unknown baselineState \"" + *result.baseline_state + "\"");
        }
        if (result.suppression_states) {
            for (std::size_t i = 0; i < result.suppression_states->size(); ++i) {
                const std::string& state = (*result.suppression_states)[i];
                if (!kSuppressionStates.contains(state)) {
                    report("SV008", Level::kWarning,
                           path + ".suppressionStates[" + std::to_string(i) + "]",
                           "unknown suppression state \"" + state + "\"");
                }
            }
        }

        for_each_location(result, path, [&](const Location& loc, const std::string& lpath) {
            if (loc.physical_location && loc.physical_location->region) {
                const Region& region = *loc.physical_location->region;
                if (region.end_line && *region.end_line < region.start_line) {
                    report("SV010", Level::kError, lpath + ".physicalLocation.region.endLine",
                           "endLine precedes startLine");
                }
            }
            if (loc.fully_qualified_logical_name && !run.logical_locations.empty()
                && !run.logical_locations.contains(*loc.fully_qualified_logical_name)) {
                report("SV011", Level::kWarning, lpath + ".fullyQualifiedLogicalName",
                       "\"" + *loc.fully_qualified_logical_name
                           + "\" has no logicalLocations entry");
            }
        });

        if (result.code_flows) {
            for (std::size_t c = 0; c < result.code_flows->size(); ++c) {
                const CodeFlow& flow = (*result.code_flows)[c];
                for (std::size_t t = 0; t < flow.thread_flows.size(); ++t) {
                    const ThreadFlow& tf = flow.thread_flows[t];
                    for (std::size_t s = 1; s < tf.locations.size(); ++s) {
                        if (tf.locations[s].step <= tf.locations[s - 1].step) {
                            report("SV009", Level::kError,
                                   path + ".codeFlows[" + std::to_string(c) + "].threadFlows["
                                       + std::to_string(t) + "].locations[" + std::to_string(s)
                                       + "].step",
                                   "thread-flow steps must strictly increase");
                        }
                    }
                }
            }
        }

        if (result.fixes) {
            for (std::size_t f = 0; f < result.fixes->size(); ++f) {
                const Fix& fix = (*result.fixes)[f];
                for (std::size_t c = 0; c < fix.file_changes.size(); ++c) {
                    const FileChange& change = fix.file_changes[c];
                    for (std::size_t r = 0; r < change.replacements.size(); ++r) {
                        const Region& region = change.replacements[r].deleted_region;
                        if (region.end_line && *region.end_line < region.start_line) {
                            report("SV010", Level::kError,
                                   path + ".fixes[" + std::to_string(f) + "].fileChanges["
                                       + std::to_string(c) + "].replacements[" + std::to_string(r)
                                       + "].deletedRegion.endLine",
                                   "endLine precedes startLine");
                        }
                    }
                }
            }
        }
    }

    void check_message_fallback(const RuleDescriptor* rule, const Result& result,
                                const std::string& path)
    {
        const auto resolves = [](const RuleDescriptor* r,
                                 const std::optional<OrderedMap<std::string>>& strings,
                                 const std::string& id) {
            return r != nullptr && strings.has_value() && strings->contains(id);
        };

        if (!result.message.has_value()) {
            if (!result.rule_message_id) {
                report("SV007", Level::kError, path,
                       "result has neither a message nor a ruleMessageId");
            } else if (rule != nullptr
                       && !resolves(rule, rule->message_strings, *result.rule_message_id)) {
                report("SV007", Level::kError, path + ".ruleMessageId",
                       "ruleMessageId \"" + *result.rule_message_id
                           + "\" does not resolve in messageStrings of rule \"" + result.rule_id
                           + "\"");
            }
        } else if (result.rule_message_id && rule != nullptr
                   && !resolves(rule, rule->message_strings, *result.rule_message_id)) {
            report("SV007", Level::kError, path + ".ruleMessageId",
                   "ruleMessageId \"" + *result.rule_message_id
                       + "\" does not resolve in messageStrings of rule \"" + result.rule_id + "\"");
        }

        if (result.rich_message_id && rule != nullptr
            && !resolves(rule, rule->rich_message_strings, *result.rich_message_id)) {
            report("SV007", Level::kError, path + ".richMessageId",
                   "richMessageId \"" + *result.rich_message_id
                       + "\" does not resolve in richMessageStrings of rule \"" + result.rule_id
                       + "\"");
        }
    }

    template <typename Fn>
    static void for_each_location(const Result& result, const std::string& path, Fn visit)
    {
        for (std::size_t l = 0; l < result.locations.size(); ++l) {
            visit(result.locations[l], path + ".locations[" + std::to_string(l) + "]");
        }
        if (result.code_flows) {
            for (std::size_t c = 0; c < result.code_flows->size(); ++c) {
                const CodeFlow& flow = (*result.code_flows)[c];
                for (std::size_t t = 0; t < flow.thread_flows.size(); ++t) {
                    const ThreadFlow& tf = flow.thread_flows[t];
                    for (std::size_t s = 0; s < tf.locations.size(); ++s) {
                        visit(tf.locations[s].location,
                              path + ".codeFlows[" + std::to_string(c) + "].threadFlows["
                                  + std::to_string(t) + "].locations[" + std::to_string(s)
                                  + "].location");
                    }
                }
            }
        }
        if (result.stacks) {
            for (std::size_t s = 0; s < result.stacks->size(); ++s) {
                const Stack& stack = (*result.stacks)[s];
                for (std::size_t f = 0; f < stack.frames.size(); ++f) {
                    visit(stack.frames[f].location,
                          path + ".stacks[" + std::to_string(s) + "].frames[" + std::to_string(f)
                              + "].location");
                }
            }
        }
    }
};

} // namespace

std::vector<Diagnostic> validate(const SarifLog& log)
{
    Validator validator;
    validator.check_log(log);
    std::stable_sort(validator.diagnostics.begin(), validator.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tie(a.path, a.check_id) < std::tie(b.path, b.check_id);
                     });
    return validator.diagnostics;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Level::kError; });
}

std::string render_text(const std::vector<Diagnostic>& diagnostics)
{
    std::string out;
    for (const Diagnostic& diag : diagnostics) {
        out += to_string(diag.severity);
        out += ' ';
        out += diag.check_id;
        out += ' ';
        out += diag.path;
        out += ": ";
        out += diag.message;
        out += '\n';
    }
    return out;
}

Json render_json(const std::vector<Diagnostic>& diagnostics)
{
    Json arr = Json::array();
    for (const Diagnostic& diag : diagnostics) {
        Json obj = Json::object();
        obj["checkId"] = diag.check_id;
        obj["severity"] = to_string(diag.severity);
        obj["path"] = diag.path;
        obj["message"] = diag.message;
        arr.push_back(std::move(obj));
    }
    return arr;
}

} // namespace sarif
