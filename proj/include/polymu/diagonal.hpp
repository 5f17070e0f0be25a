// ============================================================================
//  polymu/diagonal.hpp - the self-application pipeline over parameterized
//  operator-kind propositions
//
//  encode_lts turns a closed formula phi into the transition system of its
//  own syntax DAG: one state per structurally distinct subformula, one
//  action "a", and exactly one operator-kind label per state.  Literal
//  states carry the proposition index and the position they talk about;
//  binder and variable states carry the binder's alternation depth; every
//  other state carries its connective.
//
//  diagonal_formula builds the arity-(k+1) simulator: a block of binders
//  X_m .. X_1 around one big conjunction of guarded clauses, one clause per
//  operator kind.  Pebble k+1 walks the syntax DAG while pebbles 1..k play
//  the object-level game with the roles of the two players swapped, so the
//  simulator holds on the diagonal tuple exactly when the walked formula
//  fails there.  The binder types are therefore the flip of the types a
//  depth-compliant formula of the requested class would use.
//
//  diagonal_check runs both sides on the diagonal tuple and reports the
//  pair of verdicts; they must always disagree.  Class admission alone is
//  not enough for that: the depth-indexed labels make the simulator re-enter
//  X_{ad(X)}, whose type is fixed by the alternation parity, so the checker
//  insists that every binder's type matches its depth.  A formula like
//  mu X.(nu Y.Y & mu W.W) sits in the right class for m = 2 but carries a
//  depth-1 mu binder where the parity demands nu, and the simulation would
//  agree with it instead of disagreeing; such inputs are rejected.
// ============================================================================
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alternation.hpp"
#include "formula.hpp"
#include "games.hpp"
#include "lts.hpp"
#include "semantics.hpp"

namespace polymu {

enum class Engine : std::uint8_t { Naive, Game };

inline bool check_with(Engine engine, const Formula& phi, const Lts& lts,
                       const std::vector<int>& tuple) {
    return engine == Engine::Naive ? check(phi, lts, tuple)
                                   : check_via_game(phi, lts, tuple);
}

// ---------------------------------------------------------------------------
//  Operator-kind label names.
// ---------------------------------------------------------------------------

inline std::string prop_pos(int j, int i) {
    return "pp_" + std::to_string(j) + "_" + std::to_string(i);
}
inline std::string prop_neg(int j, int i) {
    return "pn_" + std::to_string(j) + "_" + std::to_string(i);
}
inline std::string prop_dia(int i) { return "pdia_" + std::to_string(i); }
inline std::string prop_box(int i) { return "pbox_" + std::to_string(i); }
inline std::string prop_fp(int depth) { return "pfp_" + std::to_string(depth); }
inline std::string prop_rp(const Replacement& kappa) { return "prp_" + kappa.code(); }

// ---------------------------------------------------------------------------
//  encode_lts: phi's syntax DAG as a transition system.
// ---------------------------------------------------------------------------

inline Lts encode_lts(const Formula& phi, std::vector<std::string> props = {}) {
    if (!phi.is_closed()) throw std::invalid_argument("encode_lts needs a closed formula");
    if (props.empty()) props = phi.propositions();
    std::map<std::string, int> prop_index;
    for (std::size_t j = 0; j < props.size(); ++j)
        prop_index[props[j]] = static_cast<int>(j);
    for (const auto& p : phi.propositions())
        if (!prop_index.count(p))
            throw std::invalid_argument("formula proposition '" + p +
                                        "' missing from the proposition list");

    std::vector<Formula> subs = phi.subformulas();
    std::unordered_map<Formula, int, Formula::Hash> id;
    for (std::size_t i = 0; i < subs.size(); ++i) id.emplace(subs[i], static_cast<int>(i));
    auto binders = phi.binder_map();
    AlternationInfo info = classify(phi);

    Lts lts(static_cast<int>(subs.size()), 0);
    const std::string act = "a";
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const Formula& f = subs[i];
        int s = static_cast<int>(i);
        lts.set_name(s, f.to_string());
        switch (f.kind()) {
            case NodeKind::PosLit:
                lts.add_label(s, prop_pos(prop_index.at(f.name()), f.index()));
                break;
            case NodeKind::NegLit:
                lts.add_label(s, prop_neg(prop_index.at(f.name()), f.index()));
                break;
            case NodeKind::And:
                lts.add_label(s, "pand");
                lts.add_transition(s, act, id.at(f.left()));
                lts.add_transition(s, act, id.at(f.right()));
                break;
            case NodeKind::Or:
                lts.add_label(s, "por");
                lts.add_transition(s, act, id.at(f.left()));
                lts.add_transition(s, act, id.at(f.right()));
                break;
            case NodeKind::Diamond:
                lts.add_label(s, prop_dia(f.index()));
                lts.add_transition(s, act, id.at(f.body()));
                break;
            case NodeKind::Box:
                lts.add_label(s, prop_box(f.index()));
                lts.add_transition(s, act, id.at(f.body()));
                break;
            case NodeKind::Repl:
                lts.add_label(s, prop_rp(f.kappa()));
                lts.add_transition(s, act, id.at(f.body()));
                break;
            case NodeKind::Mu:
            case NodeKind::Nu:
                lts.add_label(s, prop_fp(info.depth.at(f.name())));
                lts.add_transition(s, act, id.at(f.body()));
                break;
            case NodeKind::Var:
                lts.add_label(s, prop_fp(info.depth.at(f.name())));
                lts.add_transition(s, act, id.at(binders.at(f.name()).body()));
                break;
        }
    }
    return lts;
}

// ---------------------------------------------------------------------------
//  diagonal_formula: the arity-(k+1) simulator.
// ---------------------------------------------------------------------------

inline std::vector<Replacement> all_simple_replacements(int k) {
    std::vector<Replacement> out;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) out.push_back(Replacement::make_swap(i, j));
    for (int u = 1; u <= k; ++u)
        for (int v = 1; v <= k; ++v)
            if (u != v) out.push_back(Replacement::make_copy(u, v));
    return out;
}

struct DiagonalOptions {
    bool dual = false;  // simulate Pi-class inputs instead of Sigma-class ones
    std::optional<std::vector<Replacement>> kappas;  // clause set override
};

inline Formula diagonal_formula(int k, int m, const std::vector<std::string>& props,
                                const DiagonalOptions& opts = {}) {
    if (k < 1) throw std::invalid_argument("diagonal_formula needs k >= 1");
    if (m < 1)
        throw std::invalid_argument(
            "diagonal_formula needs m >= 1: the clauses re-enter X_1, which does "
            "not exist under an empty binder block");
    if (props.empty()) throw std::invalid_argument("diagonal_formula needs propositions");

    const int walker = k + 1;
    auto clause_var = [m](int i) { return "X" + std::to_string(i); };
    std::vector<Replacement> kappas =
        opts.kappas ? *opts.kappas : all_simple_replacements(k);
    std::sort(kappas.begin(), kappas.end(),
              [](const Replacement& a, const Replacement& b) { return a.code() < b.code(); });
    kappas.erase(std::unique(kappas.begin(), kappas.end(),
                             [](const Replacement& a, const Replacement& b) {
                                 return a.code() == b.code();
                             }),
                 kappas.end());

    std::vector<Formula> clauses;
    for (std::size_t j = 0; j < props.size(); ++j)
        for (int i = 1; i <= k; ++i) {
            clauses.push_back(implies(pos(prop_pos(static_cast<int>(j), i), walker),
                                      neg(props[j], i)));
            clauses.push_back(implies(pos(prop_neg(static_cast<int>(j), i), walker),
                                      pos(props[j], i)));
        }
    clauses.push_back(implies(pos("pand", walker), dia("a", walker, var(clause_var(1)))));
    clauses.push_back(implies(pos("por", walker), box("a", walker, var(clause_var(1)))));
    for (int i = 1; i <= k; ++i)
        clauses.push_back(implies(pos(prop_dia(i), walker),
                                  box("a", i, box("a", walker, var(clause_var(1))))));
    for (int i = 1; i <= k; ++i)
        clauses.push_back(implies(pos(prop_box(i), walker),
                                  dia("a", i, box("a", walker, var(clause_var(1))))));
    for (const auto& kappa : kappas)
        clauses.push_back(implies(pos(prop_rp(kappa), walker),
                                  repl(kappa, box("a", walker, var(clause_var(1))))));
    for (int i = 1; i <= m; ++i)
        clauses.push_back(implies(pos(prop_fp(i), walker),
                                  box("a", walker, var(clause_var(i)))));

    Formula body = conj_all(clauses);
    for (int i = 1; i <= m; ++i) {
        FixKind t = type_from_depth(m, i);
        if (!opts.dual) t = flip(t);  // the simulator plays the dual game
        body = fix(t, clause_var(i), std::move(body));
    }
    return body;
}

// ---------------------------------------------------------------------------
//  diagonal_check: both verdicts on the diagonal tuple.
// ---------------------------------------------------------------------------

struct DiagonalReport {
    bool phi_holds = false;
    bool Phi_holds = false;
    bool ok() const { return phi_holds != Phi_holds; }
};

inline std::vector<Replacement> replacements_of(const Formula& phi) {
    std::vector<Replacement> out;
    for (const auto& f : phi.subformulas())
        if (f.kind() == NodeKind::Repl) out.push_back(f.kappa());
    return out;
}

// Every binder's type must match what its depth dictates for the class; the
// depth-indexed clause p^FP_i -> []X_i bakes that parity into the simulator.
inline void require_depth_typed(const AlternationInfo& info, int m, bool dual) {
    for (const auto& [name, t] : info.type) {
        FixKind want = type_from_depth(m, info.depth.at(name));
        if (dual) want = flip(want);
        if (t != want)
            throw std::invalid_argument(
                "binder " + name + " has type " + to_string(t) + " but depth " +
                std::to_string(info.depth.at(name)) + " demands " + to_string(want) +
                " under m = " + std::to_string(m) +
                "; the simulation is only faithful for depth-typed formulas");
    }
}

inline DiagonalReport diagonal_check(const Formula& phi, int k, int m,
                                     std::vector<std::string> props = {},
                                     Engine engine = Engine::Naive,
                                     bool dual = false) {
    if (!phi.is_closed()) throw std::invalid_argument("diagonal_check needs a closed formula");
    if (k < 1 || phi.arity() > k)
        throw std::invalid_argument("formula arity exceeds the requested k");
    for (const auto& act : phi.actions())
        if (act != "a")
            throw std::invalid_argument(
                "diagonal_check needs a formula over the singleton action set {a}: "
                "the simulator walks the syntax DAG and moves the object pebbles "
                "along the same edges, so the two alphabets must coincide");
    if (props.empty()) props = phi.propositions();
    AlternationInfo info = classify(phi);
    bool admitted = dual ? info.in_pi(m) : info.in_sigma(m);
    if (!admitted)
        throw std::invalid_argument("formula is not in the requested class at m = " +
                                    std::to_string(m) + " (levels " +
                                    std::to_string(info.sigma_level) + "/" +
                                    std::to_string(info.pi_level) + ")");
    require_depth_typed(info, m, dual);

    Lts t_phi = encode_lts(phi, props);
    DiagonalOptions opts;
    opts.dual = dual;
    opts.kappas = replacements_of(phi);
    Formula Phi = diagonal_formula(k, m, props, opts);

    DiagonalReport report;
    std::vector<int> diag_k(static_cast<std::size_t>(k), t_phi.initial());
    std::vector<int> diag_k1(static_cast<std::size_t>(k + 1), t_phi.initial());
    report.phi_holds = check_with(engine, phi, t_phi, diag_k);
    report.Phi_holds = check_with(engine, Phi, t_phi, diag_k1);
    return report;
}

}  // namespace polymu
