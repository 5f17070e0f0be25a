// ============================================================================
//  polymu/normalize.hpp - rewriting replacements into simple ones
//
//  A normalised formula uses only swaps [i <-> j] and copies [u <- v].  An
//  arbitrary almost-identity kappa factors as pi . gamma (apply gamma first):
//
//    * gamma collapses every position onto the minimal preimage of its
//      kappa-image (a product of independent copies, one per non-minimal
//      preimage), and
//    * pi is the permutation sending each such representative to its image,
//      completed by pairing the remaining sources and targets in sorted
//      order, then split cycle by cycle into adjacent transpositions.
//
//  The emitted chain is deterministic: cycles ordered by minimal element,
//  each cycle (a1 a2 ... al) as {a1<->a2}{a2<->a3}...{a(l-1)<->al}, then
//  copies ordered by the position they rewrite.  The chain composes back to
//  kappa under the nesting law  {k1}{k2}psi == {k1 . k2}psi.
// ============================================================================
#pragma once

#include <map>
#include <set>
#include <vector>

#include "formula.hpp"

namespace polymu {

// The simple factors of kappa, outermost first.
inline std::vector<Replacement> decompose_replacement(const Replacement& kappa) {
    if (kappa.is_identity()) return {};
    if (kappa.is_simple()) return {kappa};
    int k = kappa.support_max();

    // representative of each image value: its minimal preimage
    std::map<int, int> rep;  // image value -> representative position
    for (int p = 1; p <= k; ++p) {
        int q = kappa.apply(p);
        if (!rep.count(q)) rep[q] = p;
    }

    // gamma: every non-representative position copies from its representative
    std::vector<Replacement> copies;
    for (int p = 1; p <= k; ++p) {
        int r = rep.at(kappa.apply(p));
        if (r != p) copies.push_back(Replacement::make_copy(r, p));
    }

    // pi: representative -> image, completed on the unmatched positions
    std::map<int, int> pi;
    std::set<int> used_src, used_dst;
    for (const auto& [q, p] : rep) {
        pi[p] = q;
        used_src.insert(p);
        used_dst.insert(q);
    }
    std::vector<int> spare_src, spare_dst;
    for (int p = 1; p <= k; ++p) {
        if (!used_src.count(p)) spare_src.push_back(p);
        if (!used_dst.count(p)) spare_dst.push_back(p);
    }
    for (std::size_t i = 0; i < spare_src.size(); ++i) pi[spare_src[i]] = spare_dst[i];

    // split pi into cycles, each cycle into adjacent transpositions
    std::vector<Replacement> swaps;
    std::set<int> seen;
    for (int start = 1; start <= k; ++start) {
        if (seen.count(start) || pi.at(start) == start) continue;
        std::vector<int> cycle{start};
        seen.insert(start);
        for (int next = pi.at(start); next != start; next = pi.at(next)) {
            cycle.push_back(next);
            seen.insert(next);
        }
        for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
            swaps.push_back(Replacement::make_swap(cycle[i], cycle[i + 1]));
    }

    swaps.insert(swaps.end(), copies.begin(), copies.end());
    return swaps;
}

inline Formula normalize_replacements(const Formula& phi) {
    switch (phi.kind()) {
        case NodeKind::PosLit:
        case NodeKind::NegLit:
        case NodeKind::Var:
            return phi;
        case NodeKind::Or:
            return disj(normalize_replacements(phi.left()), normalize_replacements(phi.right()));
        case NodeKind::And:
            return conj(normalize_replacements(phi.left()), normalize_replacements(phi.right()));
        case NodeKind::Diamond:
            return dia(phi.action(), phi.index(), normalize_replacements(phi.body()));
        case NodeKind::Box:
            return box(phi.action(), phi.index(), normalize_replacements(phi.body()));
        case NodeKind::Mu:
        case NodeKind::Nu:
            return fix(phi.fix_kind(), phi.name(), normalize_replacements(phi.body()));
        case NodeKind::Repl: {
            Formula body = normalize_replacements(phi.body());
            std::vector<Replacement> chain = decompose_replacement(phi.kappa());
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) body = repl(*it, body);
            return body;
        }
    }
    throw std::logic_error("unreachable formula kind");
}

inline bool is_normalized(const Formula& phi) {
    for (const auto& f : phi.subformulas())
        if (f.kind() == NodeKind::Repl && !f.kappa().is_simple()) return false;
    return true;
}

}  // namespace polymu
