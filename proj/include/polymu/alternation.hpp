// ============================================================================
//  polymu/alternation.hpp - fixpoint dependency order and alternation classes
//
//  The dependency order is realized as syntactic nesting: X is above Y when
//  the fixpoint formula binding Y sits strictly inside the one binding X.
//  (The free-occurrence phrasing of the order disagrees with the worked
//  numbers everything downstream relies on; nesting reproduces them.)
//
//  ad(X) = 1 + max ad over opposite-typed variables nested strictly inside X
//  (0 if there are none).  The alternation type is the canonical maximal
//  strictly-alternating descending chain, written outermost first; ties are
//  broken towards the first binder in preorder.  A formula with chain length
//  L and top type mu sits in Sigma_L (and Pi_{L+1}); with top type nu in
//  Pi_L (and Sigma_{L+1}).  Fixpoint-free formulas sit in Sigma_0 = Pi_0.
// ============================================================================
#pragma once

#include <map>
#include <string>
#include <vector>

#include "formula.hpp"

namespace polymu {

struct AlternationInfo {
    std::map<std::string, int> depth;       // ad per bound variable
    std::map<std::string, FixKind> type;    // binder type per bound variable
    // Variables bound strictly inside each binder (the strict dependency
    // order, as adjacency: X above Y iff Y in below.at(X)).
    std::map<std::string, std::vector<std::string>> below;
    std::vector<FixKind> alternation_type;  // outermost (deepest ad) first
    int sigma_level = 0;                    // least m with membership in Sigma_m
    int pi_level = 0;                       // least m with membership in Pi_m

    int max_depth() const {
        int d = 0;
        for (const auto& [name, ad] : depth) d = std::max(d, ad);
        return d;
    }
    bool in_sigma(int m) const { return sigma_level <= m; }
    bool in_pi(int m) const { return pi_level <= m; }
    bool is_above(const std::string& x, const std::string& y) const {
        auto it = below.find(x);
        if (it == below.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), y);
    }
};

// The type a variable of alternation depth i must have in a formula that is
// Sigma_m-classified with full alternation: mu exactly when m and i have the
// same parity.  (Flip the result for the Pi_m side.)
inline FixKind type_from_depth(int m, int i) {
    if (i < 1 || i > m)
        throw std::invalid_argument("alternation depth out of range: need 1 <= i <= m");
    return (m - i) % 2 == 0 ? FixKind::Mu : FixKind::Nu;
}

inline AlternationInfo classify(const Formula& phi) {
    AlternationInfo info;
    std::vector<std::string> order;  // binder names in preorder
    std::map<std::string, int> rank;
    for (const auto& f : phi.subformulas()) {
        if (!f.is_fixpoint()) continue;
        const std::string& x = f.name();
        rank.emplace(x, static_cast<int>(order.size()));
        order.push_back(x);
        info.type[x] = f.fix_kind();
        info.below[x] = f.body().bound_variables();
    }

    // Innermost binders have the smaller below-sets; resolving ad by direct
    // recursion with memoization terminates because nesting is acyclic.
    std::map<std::string, int> memo;
    auto ad = [&](auto&& self, const std::string& x) -> int {
        auto hit = memo.find(x);
        if (hit != memo.end()) return hit->second;
        int best = 0;
        for (const auto& y : info.below.at(x))
            if (info.type.at(y) != info.type.at(x)) best = std::max(best, self(self, y));
        return memo[x] = 1 + best;
    };
    for (const auto& x : order) info.depth[x] = ad(ad, x);

    int d = info.max_depth();
    if (d == 0) return info;  // fixpoint-free: Sigma_0 = Pi_0

    // Canonical chain: start at the preorder-first deepest binder, then
    // repeatedly descend to the preorder-first opposite-typed variable one
    // level down inside the current one.
    auto first_by_rank = [&](const std::vector<std::string>& pool, FixKind want,
                             int want_depth) {
        std::string best;
        for (const auto& y : pool)
            if (info.type.at(y) == want && info.depth.at(y) == want_depth &&
                (best.empty() || rank.at(y) < rank.at(best)))
                best = y;
        return best;
    };
    std::string cur = first_by_rank(order, FixKind::Mu, d);
    std::string alt = first_by_rank(order, FixKind::Nu, d);
    if (cur.empty() || (!alt.empty() && rank.at(alt) < rank.at(cur))) cur = alt;
    info.alternation_type.push_back(info.type.at(cur));
    for (int level = d - 1; level >= 1; --level) {
        cur = first_by_rank(info.below.at(cur), flip(info.type.at(cur)), level);
        info.alternation_type.push_back(info.type.at(cur));
    }

    FixKind top = info.alternation_type.front();
    info.sigma_level = d + (top == FixKind::Mu ? 0 : 1);
    info.pi_level = d + (top == FixKind::Nu ? 0 : 1);
    return info;
}

inline std::map<std::string, std::vector<std::string>> dependency_order(const Formula& phi) {
    return classify(phi).below;
}

// Parity-game priority of a fixpoint variable: keep ad when its parity
// already matches the winning convention (nu wants even, mu wants odd),
// otherwise bump by one.  Higher ad never maps below lower ad, and
// opposite-typed variables never collide on the same priority.
inline int game_priority(FixKind t, int ad) {
    bool want_even = (t == FixKind::Nu);
    bool is_even = (ad % 2 == 0);
    return want_even == is_even ? ad : ad + 1;
}

inline std::string to_string(FixKind t) { return t == FixKind::Mu ? "mu" : "nu"; }

inline std::string to_string(const std::vector<FixKind>& chain) {
    std::string out = "(";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += ", ";
        out += to_string(chain[i]);
    }
    return out + ")";
}

}  // namespace polymu
