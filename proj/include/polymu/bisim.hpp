// ============================================================================
//  polymu/bisim.hpp - bisimilarity, twice
//
//  bisim_formula builds the arity-2 characterization: two pebbles are on
//  bisimilar states iff the greatest fixpoint of
//
//      nu X. (AND_p  p(1) -> p(2))  &  (AND_a  [a]_1 <a>_2 X)  &  {1<->2} X
//
//  holds.  Label inclusion and the simulation clause look one-directional
//  but the swap conjunct closes them under symmetry.  Empty alphabets are
//  tolerated (the group simply disappears); with no actions the formula
//  degenerates to label comparison, which callers may want to warn about.
//
//  bisimilar/partition give the independent answer by plain partition
//  refinement: start from label-set classes, repeatedly split on the set of
//  (action, successor block) signatures, stop when stable.
// ============================================================================
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "formula.hpp"
#include "lts.hpp"

namespace polymu {

inline Formula bisim_formula(const std::vector<std::string>& props,
                             const std::vector<std::string>& acts,
                             const std::string& var_name = "X") {
    std::vector<Formula> parts;
    std::vector<Formula> label_clauses;
    for (const auto& p : props) label_clauses.push_back(implies(pos(p, 1), pos(p, 2)));
    if (!label_clauses.empty()) parts.push_back(conj_all(label_clauses));
    std::vector<Formula> step_clauses;
    for (const auto& a : acts) step_clauses.push_back(box(a, 1, dia(a, 2, var(var_name))));
    if (!step_clauses.empty()) parts.push_back(conj_all(step_clauses));
    parts.push_back(repl(Replacement::make_swap(1, 2), var(var_name)));
    return nu(var_name, conj_all(parts));
}

inline Formula bisim_formula(const Lts& lts) {
    return bisim_formula(lts.propositions(), lts.actions());
}

// Coarsest bisimulation as block ids, numbered by first occurrence.
inline std::vector<int> partition(const Lts& lts) {
    int n = lts.state_count();
    std::vector<int> block(static_cast<std::size_t>(n));
    {
        std::map<std::vector<std::string>, int> by_labels;
        for (int s = 0; s < n; ++s) {
            auto [it, fresh] = by_labels.emplace(lts.labels_of(s),
                                                 static_cast<int>(by_labels.size()));
            block[static_cast<std::size_t>(s)] = it->second;
        }
    }
    const auto acts = lts.actions();
    for (;;) {
        // signature: old block plus, per action, the set of successor blocks
        std::map<std::pair<int, std::vector<std::set<int>>>, int> classes;
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) {
            std::vector<std::set<int>> sig;
            sig.reserve(acts.size());
            for (const auto& a : acts) {
                std::set<int> to;
                for (int t : lts.successors(s, a)) to.insert(block[static_cast<std::size_t>(t)]);
                sig.push_back(std::move(to));
            }
            auto key = std::make_pair(block[static_cast<std::size_t>(s)], std::move(sig));
            auto [it, fresh] = classes.emplace(std::move(key), static_cast<int>(classes.size()));
            next[static_cast<std::size_t>(s)] = it->second;
        }
        if (next == block) break;
        block = std::move(next);
    }
    // canonical numbering
    std::map<int, int> renumber;
    for (auto& b : block) {
        auto [it, fresh] = renumber.emplace(b, static_cast<int>(renumber.size()));
        b = it->second;
    }
    return block;
}

inline bool bisimilar(const Lts& lts, int s, int t) {
    if (s < 0 || s >= lts.state_count() || t < 0 || t >= lts.state_count())
        throw lts_error("state out of range");
    auto block = partition(lts);
    return block[static_cast<std::size_t>(s)] == block[static_cast<std::size_t>(t)];
}

}  // namespace polymu
