/**
 * @file automaton.hpp
 * @brief Finite automaton compiled from an ORDER expression.
 *
 * The expression (aliases expanded into alternations) is lowered to an
 * epsilon-NFA, then determinized by subset construction. The automaton
 * accepts exactly the event-label sequences in the ORDER language.
 */
#pragma once

#include "crysl/rule.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crysl {

class Automaton
{
public:
    Automaton(int initial, std::vector<std::map<std::string, int>> transitions,
              std::vector<bool> accepting)
        : initial_(initial), transitions_(std::move(transitions)), accepting_(std::move(accepting))
    {}

    [[nodiscard]] int initial() const { return initial_; }
    [[nodiscard]] std::size_t state_count() const { return transitions_.size(); }
    [[nodiscard]] bool is_accepting(int state) const
    {
        return accepting_[static_cast<std::size_t>(state)];
    }

    /// Successor of `state` under `label`, or nullopt when the label is not a
    /// legal continuation there.
    [[nodiscard]] std::optional<int> step(int state, const std::string& label) const
    {
        const auto& edges = transitions_[static_cast<std::size_t>(state)];
        const auto it = edges.find(label);
        if (it == edges.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Labels with an outgoing transition from `state` (alphabetical).
    [[nodiscard]] std::vector<std::string> outgoing_labels(int state) const
    {
        std::vector<std::string> labels;
        for (const auto& [label, target] : transitions_[static_cast<std::size_t>(state)]) {
            labels.push_back(label);
        }
        return labels;
    }

    [[nodiscard]] bool accepts(std::span<const std::string> labels) const
    {
        int state = initial_;
        for (const std::string& label : labels) {
            const std::optional<int> next = step(state, label);
            if (!next) {
                return false;
            }
            state = *next;
        }
        return is_accepting(state);
    }

private:
    int initial_;
    std::vector<std::map<std::string, int>> transitions_;
    std::vector<bool> accepting_;
};

/// Expands alias atoms into alternations over their members, recursively.
[[nodiscard]] OrderExpr expand_aliases(const OrderExpr& order,
                                       const std::map<std::string, std::vector<std::string>>& aliases);

/// Compiles an ORDER expression (aliases resolved against `aliases`) into a
/// deterministic automaton.
[[nodiscard]] Automaton build_automaton(const OrderExpr& order,
                                        const std::map<std::string, std::vector<std::string>>& aliases);

} // namespace crysl
