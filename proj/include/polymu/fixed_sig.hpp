// ============================================================================
//  polymu/fixed_sig.hpp - the diagonal pipeline over ten fixed propositions
//
//  The parameterized operator labels of diagonal.hpp (proposition index,
//  position, alternation depth, replacement shape) are traded for a fixed
//  ten-name signature; the dropped parameters move into the graph structure
//  as freshly attached marker paths.  GADGETS.md holds the normative offset
//  table.  The conventions, briefly:
//
//    - Hosts keep exactly one bare operator label (pp pn pand por pdia pbox
//      pfp prp psw); pdot appears only on fresh gadget states; no state
//      carries two labels.
//    - A gadget chain hangs off its host and ends with one extra edge onto
//      the target host, so a walk that stops at the final marker hops back
//      onto labelled ground before the simulation resumes.
//    - Walks are guarded on pebble k+1: a marked state forces the stop
//      action, an unmarked one forces another step, so the decode is
//      deterministic no matter which player drives the modalities.
//    - A walk of w steps has applied its per-step shift w-1 times (the
//      first step is free), so a marker at depth i leaves the original
//      pebble i at position 1 after cycling with kappa_cycle_left.
//
//  Chain layouts (depth = distance from the host, marker positions):
//    literal q_j(i):  i+j states, marker at i, index j = distance from the
//                     marker to the dead end, decoded by a chain of
//                     at-the-dead-end proposition probes
//    binder/variable: ad(X) states, marker at ad(X)
//    modality <>_i/[]_i: 2i states, markers at i and 2i
//    swap {i<->j}, i<j: 2j states, markers at i, j, 2j-i, 2j
//    copy [u<-v], i=min, j=max: 2j+1 states, markers at i, j, 2j-i+1, 2j+1,
//                     plus a flag state at j+1 that is marked iff u > v
//
//  The five-phase replacement choreography cycles pebble min(u,v) to
//  position 1 and max(u,v) to position 2, swaps or copies there, and
//  cycles everything back, reading each leg's length off the markers.
// ============================================================================
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "alternation.hpp"
#include "diagonal.hpp"
#include "formula.hpp"
#include "lts.hpp"

namespace polymu {

inline constexpr std::array<const char*, 10> kProp1 = {
    "pp", "pn", "pand", "por", "pdia", "pbox", "pfp", "prp", "psw", "pdot"};

inline int prop1_index(const std::string& name) {
    for (std::size_t j = 0; j < kProp1.size(); ++j)
        if (name == kProp1[j]) return static_cast<int>(j);
    return -1;
}

// ---------------------------------------------------------------------------
//  The cyclic pebble shifts used by the walk formulas.
// ---------------------------------------------------------------------------

// Position 1 reads pebble 2, position 2 reads pebble 3, ..., position k
// reads pebble 1: each application brings the next pebble to the front.
inline Replacement kappa_cycle_left(int k) {
    std::map<int, int> entries;
    for (int p = 1; p < k; ++p) entries[p] = p + 1;
    entries[k] = 1;
    return Replacement::from_map(entries);
}

inline Replacement kappa_cycle_right(int k) {
    std::map<int, int> entries;
    entries[1] = k;
    for (int p = 2; p <= k; ++p) entries[p] = p - 1;
    return Replacement::from_map(entries);
}

// The same cycles on the ring {2..k}, leaving position 1 pinned.
inline Replacement kappa_sub_left(int k) {
    std::map<int, int> entries;
    for (int p = 2; p < k; ++p) entries[p] = p + 1;
    if (k >= 2) entries[k] = 2;
    return Replacement::from_map(entries);
}

inline Replacement kappa_sub_right(int k) {
    std::map<int, int> entries;
    if (k >= 2) entries[2] = k;
    for (int p = 3; p <= k; ++p) entries[p] = p - 1;
    return Replacement::from_map(entries);
}

// ---------------------------------------------------------------------------
//  encode_lts_fixed: hosts plus marker chains.
// ---------------------------------------------------------------------------

namespace detail {

inline void require_simple_or_throw(const Replacement& kappa) {
    if (!kappa.is_simple())
        throw std::invalid_argument(
            "encode_lts_fixed needs a normalized formula: replacement {" +
            kappa.to_text() + "} is not a swap or a copy");
}

// Chain length and marker offsets for one host, per the table above.
struct GadgetPlan {
    int length = 0;
    std::vector<int> marks;
};

inline GadgetPlan gadget_plan(const Formula& f, const AlternationInfo& info) {
    GadgetPlan plan;
    switch (f.kind()) {
        case NodeKind::PosLit:
        case NodeKind::NegLit: {
            int i = f.index();
            int j = prop1_index(f.name());
            if (j < 0)
                throw std::invalid_argument("proposition '" + f.name() +
                                            "' is outside the fixed ten-name signature");
            plan.length = i + j;
            plan.marks = {i};
            break;
        }
        case NodeKind::Diamond:
        case NodeKind::Box: {
            int i = f.index();
            plan.length = 2 * i;
            plan.marks = {i, 2 * i};
            break;
        }
        case NodeKind::Mu:
        case NodeKind::Nu:
        case NodeKind::Var: {
            int d = info.depth.at(f.name());
            plan.length = d;
            plan.marks = {d};
            break;
        }
        case NodeKind::Repl: {
            require_simple_or_throw(f.kappa());
            if (f.kappa().is_swap()) {
                auto [i, j] = f.kappa().swap_pair();
                plan.length = 2 * j;
                plan.marks = {i, j, 2 * j - i, 2 * j};
            } else {
                auto [u, v] = f.kappa().copy_pair();
                int i = std::min(u, v), j = std::max(u, v);
                plan.length = 2 * j + 1;
                plan.marks = {i, j, 2 * j - i + 1, 2 * j + 1};
                if (u > v) plan.marks.push_back(j + 1);
            }
            break;
        }
        default:
            break;  // And/Or keep their direct edges
    }
    return plan;
}

}  // namespace detail

inline Lts encode_lts_fixed(const Formula& phi) {
    if (!phi.is_closed())
        throw std::invalid_argument("encode_lts_fixed needs a closed formula");
    for (const auto& act : phi.actions())
        if (act != "a")
            throw std::invalid_argument(
                "encode_lts_fixed needs a formula over the singleton action set {a}");

    std::vector<Formula> subs = phi.subformulas();
    std::unordered_map<Formula, int, Formula::Hash> id;
    for (std::size_t i = 0; i < subs.size(); ++i) id.emplace(subs[i], static_cast<int>(i));
    auto binders = phi.binder_map();
    AlternationInfo info = classify(phi);

    std::vector<detail::GadgetPlan> plans;
    plans.reserve(subs.size());
    int total = static_cast<int>(subs.size());
    for (const auto& f : subs) {
        plans.push_back(detail::gadget_plan(f, info));
        total += plans.back().length;
    }

    Lts lts(total, 0);
    const std::string act = "a";
    int next = static_cast<int>(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const Formula& f = subs[i];
        int s = static_cast<int>(i);
        lts.set_name(s, f.to_string());
        switch (f.kind()) {
            case NodeKind::PosLit: lts.add_label(s, "pp"); break;
            case NodeKind::NegLit: lts.add_label(s, "pn"); break;
            case NodeKind::And:    lts.add_label(s, "pand"); break;
            case NodeKind::Or:     lts.add_label(s, "por"); break;
            case NodeKind::Diamond: lts.add_label(s, "pdia"); break;
            case NodeKind::Box:     lts.add_label(s, "pbox"); break;
            case NodeKind::Mu:
            case NodeKind::Nu:
            case NodeKind::Var:     lts.add_label(s, "pfp"); break;
            case NodeKind::Repl:
                lts.add_label(s, f.kappa().is_swap() ? "psw" : "prp");
                break;
        }
        if (f.kind() == NodeKind::And || f.kind() == NodeKind::Or) {
            lts.add_transition(s, act, id.at(f.left()));
            lts.add_transition(s, act, id.at(f.right()));
            continue;
        }
        if (f.kind() == NodeKind::PosLit || f.kind() == NodeKind::NegLit) {
            // dead-end tail
            int prev = s;
            const auto& plan = plans[i];
            for (int t = 1; t <= plan.length; ++t) {
                int g = next++;
                lts.set_name(g, "g" + std::to_string(s) + "_" + std::to_string(t));
                for (int mk : plan.marks)
                    if (mk == t) lts.add_label(g, "pdot");
                lts.add_transition(prev, act, g);
                prev = g;
            }
            continue;
        }
        // single-successor hosts: chain through the gadget onto the target
        int target;
        switch (f.kind()) {
            case NodeKind::Mu:
            case NodeKind::Nu:
            case NodeKind::Repl:
            case NodeKind::Diamond:
            case NodeKind::Box: target = id.at(f.body()); break;
            case NodeKind::Var: target = id.at(binders.at(f.name()).body()); break;
            default: continue;  // unreachable
        }
        const auto& plan = plans[i];
        int prev = s;
        for (int t = 1; t <= plan.length; ++t) {
            int g = next++;
            lts.set_name(g, "g" + std::to_string(s) + "_" + std::to_string(t));
            for (int mk : plan.marks)
                if (mk == t) lts.add_label(g, "pdot");
            lts.add_transition(prev, act, g);
            prev = g;
        }
        lts.add_transition(prev, act, target);
    }
    return lts;
}

// ---------------------------------------------------------------------------
//  The walk formulas.
// ---------------------------------------------------------------------------

namespace detail {

// Guarded marker walk for pebble k+1: stops[t] is asserted at the t-th step
// if that state is marked; otherwise the shift is applied and the walk
// continues.  The first step applies no shift, so stopping after w steps
// has shifted w-1 times.
class FixedBuilder {
public:
    FixedBuilder(int k, int m) : k_(k), m_(m), walker_(k + 1) {}

    Formula build(bool dual) const {
        std::vector<Formula> clauses;
        clauses.push_back(implies(pos("pp", walker_), search_peb(true)));
        clauses.push_back(implies(pos("pn", walker_), search_peb(false)));
        clauses.push_back(implies(pos("pand", walker_), step_dia(var("X1"))));
        clauses.push_back(implies(pos("por", walker_), step_box(var("X1"))));
        clauses.push_back(implies(pos("pdia", walker_), modality_walk(false)));
        clauses.push_back(implies(pos("pbox", walker_), modality_walk(true)));
        if (k_ >= 2) {
            clauses.push_back(implies(pos("prp", walker_), replacement_walk(true)));
            clauses.push_back(implies(pos("psw", walker_), replacement_walk(false)));
        }
        clauses.push_back(implies(pos("pfp", walker_), fixpoint_walk()));
        Formula body = conj_all(clauses);
        for (int i = 1; i <= m_; ++i) {
            FixKind t = type_from_depth(m_, i);
            if (!dual) t = flip(t);
            body = fix(t, "X" + std::to_string(i), std::move(body));
        }
        return body;
    }

    Formula step_dia(Formula f) const { return dia("a", walker_, std::move(f)); }
    Formula step_box(Formula f) const { return box("a", walker_, std::move(f)); }
    Formula marked() const { return pos("pdot", walker_); }
    Formula unmarked() const { return neg("pdot", walker_); }
    Formula dead_end() const {
        return box("a", walker_, conj(pos("pdot", 1), neg("pdot", 1)));
    }

    // stops[t-1] holds at the t-th step; the result is the formula to place
    // right after the first step.
    Formula walk(const std::vector<Formula>& stops, const Replacement& shift,
                 bool dia_steps) const {
        Formula acc = conj(marked(), stops.back());
        for (std::size_t t = stops.size() - 1; t-- > 0;) {
            Formula next = dia_steps ? step_dia(std::move(acc)) : step_box(std::move(acc));
            if (!shift.is_identity()) next = repl(shift, std::move(next));
            acc = disj(conj(marked(), stops[t]), conj(unmarked(), std::move(next)));
        }
        return acc;
    }

    Formula walk_uniform(int levels, Formula stop, const Replacement& shift,
                         bool dia_steps) const {
        return walk(std::vector<Formula>(static_cast<std::size_t>(levels), std::move(stop)),
                    shift, dia_steps);
    }

    // Index decode at the end of a literal tail: at the dead end, j steps
    // past the marker, the j-th fixed proposition is probed on position 1.
    Formula search_prop(bool negate) const {
        auto probe = [&](std::size_t j) {
            Formula lit = negate ? neg(kProp1[j], 1) : pos(kProp1[j], 1);
            return conj(dead_end(), std::move(lit));
        };
        Formula acc = probe(kProp1.size() - 1);
        for (std::size_t j = kProp1.size() - 1; j-- > 0;)
            acc = disj(probe(j), step_dia(std::move(acc)));
        return acc;
    }

    // Literal clause body: cycle to the marker, then decode the index.
    Formula search_peb(bool negate) const {
        return step_dia(walk_uniform(k_, search_prop(negate), kappa_cycle_left(k_), true));
    }

    // Modality clause body: cycle to the first marker, move pebble 1, cycle
    // back to the second marker, hop onto the operand.
    Formula modality_walk(bool verifier_moves) const {
        Formula back =
            step_box(walk_uniform(k_, step_box(var("X1")), kappa_cycle_right(k_), false));
        Formula act = verifier_moves ? dia("a", 1, std::move(back))
                                     : box("a", 1, std::move(back));
        return step_box(walk_uniform(k_, std::move(act), kappa_cycle_left(k_), false));
    }

    // Binder/variable clause body: the marker depth picks the re-entry level.
    Formula fixpoint_walk() const {
        std::vector<Formula> stops;
        for (int i = 1; i <= m_; ++i)
            stops.push_back(step_box(var("X" + std::to_string(i))));
        return step_box(walk(stops, Replacement(), false));
    }

    // Replacement clause body: the five-phase choreography.  Swap and copy
    // share every leg; they differ at the middle stop, where the copy visits
    // its direction flag first.
    Formula replacement_walk(bool is_copy) const {
        Formula back_outer =
            step_box(walk_uniform(k_ - 1, step_box(var("X1")), kappa_cycle_right(k_), false));
        Formula back_inner =
            step_box(walk_uniform(k_ - 1, std::move(back_outer), kappa_sub_right(k_), false));
        Formula middle;
        if (is_copy) {
            // one step onto the flag state; its mark picks the direction
            Formula take = repl(Replacement::make_copy(2, 1), back_inner);
            Formula give = repl(Replacement::make_copy(1, 2), back_inner);
            middle = step_box(disj(conj(marked(), std::move(take)),
                                   conj(unmarked(), std::move(give))));
        } else {
            middle = repl(Replacement::make_swap(1, 2), std::move(back_inner));
        }
        Formula in_sub =
            step_box(walk_uniform(k_ - 1, std::move(middle), kappa_sub_left(k_), false));
        return step_box(walk_uniform(k_ - 1, std::move(in_sub), kappa_cycle_left(k_), false));
    }

private:
    int k_, m_, walker_;
};

}  // namespace detail

inline Formula diagonal_formula_fixed(int k, int m, bool dual = false) {
    if (k < 1) throw std::invalid_argument("diagonal_formula_fixed needs k >= 1");
    if (m < 1) throw std::invalid_argument("diagonal_formula_fixed needs m >= 1");
    return detail::FixedBuilder(k, m).build(dual);
}

// ---------------------------------------------------------------------------
//  diagonal_check_fixed: both verdicts on the diagonal tuple of T'_phi.
// ---------------------------------------------------------------------------

inline DiagonalReport diagonal_check_fixed(const Formula& phi, int k, int m,
                                           Engine engine = Engine::Naive,
                                           bool dual = false) {
    if (!phi.is_closed())
        throw std::invalid_argument("diagonal_check_fixed needs a closed formula");
    if (k < 1 || phi.arity() > k)
        throw std::invalid_argument("formula arity exceeds the requested k");
    for (const auto& p : phi.propositions())
        if (prop1_index(p) < 0)
            throw std::invalid_argument("proposition '" + p +
                                        "' is outside the fixed ten-name signature");
    AlternationInfo info = classify(phi);
    bool admitted = dual ? info.in_pi(m) : info.in_sigma(m);
    if (!admitted)
        throw std::invalid_argument("formula is not in the requested class at m = " +
                                    std::to_string(m) + " (levels " +
                                    std::to_string(info.sigma_level) + "/" +
                                    std::to_string(info.pi_level) + ")");
    require_depth_typed(info, m, dual);

    Lts t_phi = encode_lts_fixed(phi);
    Formula Phi = diagonal_formula_fixed(k, m, dual);

    DiagonalReport report;
    std::vector<int> diag_k(static_cast<std::size_t>(k), t_phi.initial());
    std::vector<int> diag_k1(static_cast<std::size_t>(k + 1), t_phi.initial());
    report.phi_holds = check_with(engine, phi, t_phi, diag_k);
    report.Phi_holds = check_with(engine, Phi, t_phi, diag_k1);
    return report;
}

}  // namespace polymu
