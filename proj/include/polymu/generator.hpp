// ============================================================================
//  polymu/generator.hpp - seeded random instances for the property suites
//
//  Formulas are generated spine-first: the m binders are laid down as a
//  nested chain whose types alternate and end in the requested class (the
//  deepest binder has alternation depth 1, and a variable of depth i gets
//  the type the class template dictates).  Bodies are then fleshed out with
//  random positive connectives around two forced subtrees per level: the
//  next spine binder and an occurrence of the level's own variable.  This
//  guarantees the classification outright instead of praying to rejection
//  sampling, and every binder's type agrees with its depth, which is what
//  the diagonal suites need from their inputs.
//
//  Transition systems are built spanning-tree-first (state j > 0 gets an
//  incoming edge from a random earlier state), so every state is reachable
//  from the initial one by construction; extra edges and labels are
//  sprinkled afterwards.  Everything is a pure function of the seed.
// ============================================================================
#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "alternation.hpp"
#include "formula.hpp"
#include "lts.hpp"

namespace polymu {

enum class FormulaClass : std::uint8_t { Sigma, Pi };

struct GenConfig {
    int arity = 1;             // k: maximal position index
    int alternation = 0;       // m: spine length (0 = fixpoint-free)
    FormulaClass cls = FormulaClass::Sigma;
    int budget = 8;            // node-count ceiling
    int prop_count = 2;        // propositions p0..p<n-1> (or explicit names)
    int act_count = 1;         // actions a0..a<n-1>
    int states = 4;            // LTS state-count ceiling
    std::uint64_t seed = 0;
    bool normalized = true;       // only simple replacements
    bool force_nonsimple = false; // require >= 1 non-simple replacement (needs arity >= 3)
    std::vector<std::string> prop_names;  // overrides prop_count when nonempty
    std::vector<std::string> act_names;   // overrides act_count when nonempty

    std::vector<std::string> props() const {
        if (!prop_names.empty()) return prop_names;
        std::vector<std::string> out;
        for (int j = 0; j < prop_count; ++j) out.push_back("p" + std::to_string(j));
        return out;
    }
    std::vector<std::string> acts() const {
        if (!act_names.empty()) return act_names;
        std::vector<std::string> out;
        for (int j = 0; j < act_count; ++j) out.push_back("a" + std::to_string(j));
        return out;
    }
};

namespace detail {

class FormulaGen {
public:
    FormulaGen(const GenConfig& cfg, std::mt19937_64& rng)
        : cfg_(cfg), rng_(rng), props_(cfg.props()), acts_(cfg.acts()) {}

    Formula run() {
        if (cfg_.arity < 1 || cfg_.alternation < 0 || cfg_.budget < 1 ||
            props_.empty() || acts_.empty())
            throw std::invalid_argument("generator bounds must be >= 1");
        if (cfg_.force_nonsimple && cfg_.arity < 3)
            throw std::invalid_argument(
                "non-simple replacements need arity >= 3: every almost-identity map "
                "on {1,2} is already a swap or a copy");
        int m = cfg_.alternation;
        // spine binders + one variable occurrence and one leaf each
        int needed = m == 0 ? 1 : 3 * m;
        if (cfg_.budget < needed)
            throw std::invalid_argument("node budget " + std::to_string(cfg_.budget) +
                                        " cannot fit " + std::to_string(m) +
                                        " alternating binders (need >= " +
                                        std::to_string(needed) + ")");
        pending_nonsimple_ = cfg_.force_nonsimple;
        int spare = cfg_.budget - needed;
        Formula out = spine(m, spare, {});
        if (pending_nonsimple_)
            out = repl(random_nonsimple(), out);
        return out;
    }

private:
    const GenConfig& cfg_;
    std::mt19937_64& rng_;
    std::vector<std::string> props_, acts_;
    bool pending_nonsimple_ = false;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }
    const std::string& pick_of(const std::vector<std::string>& v) {
        return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
    }

    FixKind spine_type(int depth) const {
        FixKind t = type_from_depth(cfg_.alternation, depth);
        return cfg_.cls == FormulaClass::Sigma ? t : flip(t);
    }

    Replacement random_simple() {
        int i = pick(1, cfg_.arity), j = pick(1, cfg_.arity);
        if (i == j) return Replacement();
        return coin() ? Replacement::make_swap(i, j) : Replacement::make_copy(i, j);
    }

    Replacement random_nonsimple() {
        for (;;) {
            std::map<int, int> entries;
            for (int p = 1; p <= cfg_.arity; ++p)
                if (pick(0, 2) != 0) entries[p] = pick(1, cfg_.arity);
            Replacement r = Replacement::from_map(entries);
            if (!r.is_identity() && !r.is_simple()) return r;
        }
    }

    Formula random_leaf(const std::vector<std::string>& scope) {
        int roll = pick(0, scope.empty() ? 2 : 4);
        if (roll >= 3) return var(pick_of(scope));
        int i = pick(1, cfg_.arity);
        const std::string& p = pick_of(props_);
        return roll == 0 ? neg(p, i) : pos(p, i);
    }

    Formula wrap_unary(Formula f) {
        switch (pick(0, cfg_.arity >= 2 ? 2 : 1)) {
            case 0:
                return dia(pick_of(acts_), pick(1, cfg_.arity), std::move(f));
            case 1:
                return box(pick_of(acts_), pick(1, cfg_.arity), std::move(f));
            default: {
                if (pending_nonsimple_ && pick(0, 2) == 0) {
                    pending_nonsimple_ = false;
                    return repl(random_nonsimple(), std::move(f));
                }
                Replacement r = cfg_.normalized && !cfg_.force_nonsimple
                                    ? random_simple()
                                    : (coin() ? random_simple() : random_nonsimple());
                if (r.is_identity()) return f;
                return repl(r, std::move(f));
            }
        }
    }

    // Random positive tree around the required pieces, spending at most
    // `extra` further nodes (an added leaf costs 2: itself plus the
    // connective that joins it; connectives between required pieces are
    // already charged to the caller's floor).
    Formula grow(std::vector<Formula> pieces, int extra,
                 const std::vector<std::string>& scope) {
        while (extra >= 2 && coin()) {
            pieces.push_back(random_leaf(scope));
            extra -= 2;
        }
        std::shuffle(pieces.begin(), pieces.end(), rng_);
        Formula acc = pieces.front();
        for (std::size_t i = 1; i < pieces.size(); ++i)
            acc = coin() ? conj(acc, pieces[i]) : disj(acc, pieces[i]);
        while (extra-- > 0) acc = wrap_unary(std::move(acc));
        return acc;
    }

    // Build binders X_depth .. X_1 (depth counts down); scope tracks the
    // spine variables already bound around us.
    Formula spine(int depth, int spare, std::vector<std::string> scope) {
        if (depth == 0) return grow({random_leaf(scope)}, spare, scope);
        std::string name = "X" + std::to_string(depth);
        int inner_share = depth > 1 ? pick(0, spare) : 0;
        scope.push_back(name);
        std::vector<Formula> pieces;
        pieces.push_back(depth > 1 ? spine(depth - 1, inner_share, scope)
                                   : grow({var(name)}, 0, scope));
        if (depth > 1) pieces.push_back(var(name));
        return fix(spine_type(depth), name, grow(std::move(pieces), spare - inner_share, scope));
    }
};

}  // namespace detail

inline Formula gen_formula(const GenConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    return detail::FormulaGen(cfg, rng).run();
}

inline Lts gen_lts(const GenConfig& cfg) {
    if (cfg.states < 1) throw std::invalid_argument("state bound must be >= 1");
    std::mt19937_64 rng(cfg.seed ^ 0x4c7453656564ull);  // decorrelate from gen_formula
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    int n = pick(1, cfg.states);
    Lts lts(n, 0);
    auto props = cfg.props();
    auto acts = cfg.acts();
    for (int s = 1; s < n; ++s)
        lts.add_transition(pick(0, s - 1), acts[static_cast<std::size_t>(
                                               pick(0, static_cast<int>(acts.size()) - 1))],
                           s);
    int extra = pick(0, 2 * n);
    for (int e = 0; e < extra; ++e)
        lts.add_transition(pick(0, n - 1),
                           acts[static_cast<std::size_t>(pick(0, static_cast<int>(acts.size()) - 1))],
                           pick(0, n - 1));
    for (int s = 0; s < n; ++s)
        for (const auto& p : props)
            if (pick(0, 1)) lts.add_label(s, p);
    return lts;
}

}  // namespace polymu
