#include "crysl/automaton.hpp"

#include <algorithm>
#include <set>

namespace crysl {

namespace {

struct NfaState
{
    std::vector<std::pair<std::string, int>> edges;
    std::vector<int> epsilon;
};

struct Nfa
{
    std::vector<NfaState> states;

    int add_state()
    {
        states.emplace_back();
        return static_cast<int>(states.size()) - 1;
    }
};

struct Fragment
{
    int start = 0;
    int accept = 0;
};

Fragment compile(Nfa& nfa, const OrderExpr& expr)
{
    switch (expr.kind) {
    case OrderExpr::Kind::kAtom: {
        const int start = nfa.add_state();
        const int accept = nfa.add_state();
        nfa.states[static_cast<std::size_t>(start)].edges.emplace_back(expr.atom, accept);
        return {start, accept};
    }
    case OrderExpr::Kind::kSeq: {
        Fragment whole = compile(nfa, expr.children.front());
        for (std::size_t i = 1; i < expr.children.size(); ++i) {
            const Fragment next = compile(nfa, expr.children[i]);
            nfa.states[static_cast<std::size_t>(whole.accept)].epsilon.push_back(next.start);
            whole.accept = next.accept;
        }
        return whole;
    }
    case OrderExpr::Kind::kAlt: {
        const int start = nfa.add_state();
        const int accept = nfa.add_state();
        for (const OrderExpr& child : expr.children) {
            const Fragment inner = compile(nfa, child);
            nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(inner.start);
            nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(accept);
        }
        return {start, accept};
    }
    case OrderExpr::Kind::kOpt: {
        const int start = nfa.add_state();
        const int accept = nfa.add_state();
        const Fragment inner = compile(nfa, expr.children.front());
        nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(inner.start);
        nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(accept);
        nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(accept);
        return {start, accept};
    }
    case OrderExpr::Kind::kStar: {
        const int start = nfa.add_state();
        const int accept = nfa.add_state();
        const Fragment inner = compile(nfa, expr.children.front());
        nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(inner.start);
        nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(accept);
        nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(inner.start);
        nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(accept);
        return {start, accept};
    }
    case OrderExpr::Kind::kPlus: {
        const int start = nfa.add_state();
        const int accept = nfa.add_state();
        const Fragment inner = compile(nfa, expr.children.front());
        nfa.states[static_cast<std::size_t>(start)].epsilon.push_back(inner.start);
        nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(inner.start);
        nfa.states[static_cast<std::size_t>(inner.accept)].epsilon.push_back(accept);
        return {start, accept};
    }
    }
    return {0, 0};
}

std::set<int> epsilon_closure(const Nfa& nfa, const std::set<int>& states)
{
    std::set<int> closure = states;
    std::vector<int> stack(states.begin(), states.end());
    while (!stack.empty()) {
        const int state = stack.back();
        stack.pop_back();
        for (const int next : nfa.states[static_cast<std::size_t>(state)].epsilon) {
            if (closure.insert(next).second) {
                stack.push_back(next);
            }
        }
    }
    return closure;
}

} // namespace

OrderExpr expand_aliases(const OrderExpr& order,
                         const std::map<std::string, std::vector<std::string>>& aliases)
{
    if (order.kind == OrderExpr::Kind::kAtom) {
        const auto it = aliases.find(order.atom);
        if (it == aliases.end()) {
            return order;
        }
        OrderExpr alt;
        alt.kind = OrderExpr::Kind::kAlt;
        for (const std::string& member : it->second) {
            OrderExpr atom;
            atom.kind = OrderExpr::Kind::kAtom;
            atom.atom = member;
            alt.children.push_back(expand_aliases(atom, aliases));
        }
        if (alt.children.size() == 1) {
            return std::move(alt.children.front());
        }
        return alt;
    }
    OrderExpr out;
    out.kind = order.kind;
    out.atom = order.atom;
    for (const OrderExpr& child : order.children) {
        out.children.push_back(expand_aliases(child, aliases));
    }
    return out;
}

Automaton build_automaton(const OrderExpr& order,
                          const std::map<std::string, std::vector<std::string>>& aliases)
{
    const OrderExpr expanded = expand_aliases(order, aliases);

    Nfa nfa;
    const Fragment fragment = compile(nfa, expanded);

    // Subset construction.
    std::map<std::set<int>, int> subset_ids;
    std::vector<std::set<int>> subsets;
    std::vector<std::map<std::string, int>> transitions;

    const auto intern = [&](const std::set<int>& subset) {
        const auto it = subset_ids.find(subset);
        if (it != subset_ids.end()) {
            return it->second;
        }
        const int id = static_cast<int>(subsets.size());
        subset_ids.emplace(subset, id);
        subsets.push_back(subset);
        transitions.emplace_back();
        return id;
    };

    const int initial = intern(epsilon_closure(nfa, {fragment.start}));
    for (std::size_t current = 0; current < subsets.size(); ++current) {
        std::map<std::string, std::set<int>> moves;
        for (const int state : subsets[current]) {
            for (const auto& [label, target] : nfa.states[static_cast<std::size_t>(state)].edges) {
                moves[label].insert(target);
            }
        }
        for (const auto& [label, targets] : moves) {
            const int id = intern(epsilon_closure(nfa, targets));
            transitions[current].emplace(label, id);
        }
    }

    std::vector<bool> accepting(subsets.size(), false);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        accepting[i] = subsets[i].contains(fragment.accept);
    }

    return Automaton(initial, std::move(transitions), std::move(accepting));
}

} // namespace crysl
