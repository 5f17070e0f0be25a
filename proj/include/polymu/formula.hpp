// ============================================================================
//  polymu/formula.hpp - syntax of the polyadic modal mu-calculus
//
//  Formulas are in positive normal form: negation appears only on literals.
//  Every connective that touches a component of the state tuple carries an
//  explicit position index (1-based), so a formula denotes a k-ary relation
//  over states rather than a state set.  Replacements ("{2<-1} phi" style
//  operators) rearrange the tuple before evaluating the operand.
//
//  Design notes
//   * Formula is an immutable handle (shared_ptr to a const node).  Structural
//     equality and hashing are O(size) worst case but use cached hashes as a
//     fast path; subformula sets therefore behave like syntax DAGs.
//   * Nodes cache size, arity, and the sorted free/bound variable name lists.
//     That keeps well-formedness checks (unique binding) cheap at build time.
//   * Builders throw std::invalid_argument on contract violations; there is
//     deliberately no way to construct a formula with two binders of the same
//     name.
// ============================================================================
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace polymu {

// ── Replacements ────────────────────────────────────────────────────────────
//
// A replacement is an almost-identity map kappa on position indices; only the
// entries with kappa(i) != i are stored.  Applied to a tuple s it yields the
// tuple t with t[i] = s[kappa(i)] (the substitution reading: the pebble seen
// at position i after the move is the one that sat at kappa(i) before).

class Replacement {
public:
    Replacement() = default;

    static Replacement from_map(const std::map<int, int>& entries) {
        Replacement r;
        for (auto [arg, val] : entries) {
            if (arg < 1 || val < 1)
                throw std::invalid_argument("replacement indices must be >= 1");
            if (arg != val)
                r.entries_.emplace(arg, val);
        }
        return r;
    }

    // The written form [i <-> j]: exchanges positions i and j.
    static Replacement make_swap(int i, int j) {
        if (i == j)
            throw std::invalid_argument("swap needs two distinct positions");
        return from_map({{i, j}, {j, i}});
    }

    // The written form [u <- v]: kappa(v) = u, every other position fixed.
    static Replacement make_copy(int u, int v) {
        if (u == v)
            throw std::invalid_argument("copy needs two distinct positions");
        return from_map({{v, u}});
    }

    int apply(int i) const {
        auto it = entries_.find(i);
        return it == entries_.end() ? i : it->second;
    }

    const std::map<int, int>& entries() const { return entries_; }
    bool is_identity() const { return entries_.empty(); }

    bool is_swap() const {
        if (entries_.size() != 2) return false;
        auto a = entries_.begin(), b = std::next(a);
        return a->second == b->first && b->second == a->first;
    }

    bool is_copy() const { return entries_.size() == 1; }
    bool is_simple() const { return is_swap() || is_copy(); }

    // The (i, j) of a swap {i<->j}, with i < j.
    std::pair<int, int> swap_pair() const {
        if (!is_swap()) throw std::logic_error("not a swap");
        auto a = entries_.begin(), b = std::next(a);
        return {a->first, b->first};
    }

    // The (u, v) of a copy [u<-v]: position v reads pebble u.
    std::pair<int, int> copy_pair() const {
        if (!is_copy()) throw std::logic_error("not a copy");
        auto a = entries_.begin();
        return {a->second, a->first};
    }

    // Largest position mentioned; 0 for the identity.
    int support_max() const {
        int m = 0;
        for (auto [arg, val] : entries_) m = std::max({m, arg, val});
        return m;
    }

    // Function composition: result(i) = outer(inner(i)).  Matches nesting of
    // replacement operators, i.e. {outer}{inner} phi == {compose} phi.
    static Replacement compose(const Replacement& outer, const Replacement& inner) {
        std::map<int, int> m;
        int span = std::max(outer.support_max(), inner.support_max());
        for (int i = 1; i <= span; ++i) m[i] = outer.apply(inner.apply(i));
        return from_map(m);
    }

    bool operator==(const Replacement& o) const { return entries_ == o.entries_; }
    bool operator!=(const Replacement& o) const { return !(*this == o); }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto [arg, val] : entries_)
            h = h * 1099511628211ull + static_cast<std::size_t>(arg * 131 + val);
        return h;
    }

    // Canonical source form, e.g. "1<->2" or "3<-1, 2<-4".  Swapped pairs are
    // folded into the <-> shorthand; items are sorted by argument.
    std::string to_text() const {
        std::ostringstream os;
        bool first = true;
        std::unordered_set<int> done;
        for (auto [arg, val] : entries_) {
            if (done.count(arg)) continue;
            if (!first) os << ", ";
            first = false;
            auto back = entries_.find(val);
            if (back != entries_.end() && back->second == arg && arg < val) {
                os << arg << "<->" << val;
                done.insert(val);
            } else {
                os << val << "<-" << arg;
            }
        }
        return os.str();
    }

    // Compact identifier-safe encoding used for proposition names derived
    // from a replacement, e.g. [1<->2] becomes "2c1_1c2" (val 'c' arg pairs).
    std::string code() const {
        std::ostringstream os;
        bool first = true;
        for (auto [arg, val] : entries_) {
            if (!first) os << '_';
            first = false;
            os << val << 'c' << arg;
        }
        return os.str();
    }

private:
    std::map<int, int> entries_;
};

// ── Formula nodes ───────────────────────────────────────────────────────────

enum class NodeKind : std::uint8_t {
    PosLit,   // p(i)
    NegLit,   // ~p(i)
    Var,      // X
    Or,       // phi | psi
    And,      // phi & psi
    Diamond,  // <a>_i phi
    Box,      // [a]_i phi
    Mu,       // mu X. phi
    Nu,       // nu X. phi
    Repl      // {kappa} phi
};

enum class FixKind : std::uint8_t { Mu, Nu };

inline FixKind flip(FixKind t) { return t == FixKind::Mu ? FixKind::Nu : FixKind::Mu; }

class Formula {
    struct Node {
        NodeKind kind;
        std::string label;            // proposition or variable name
        std::string act;              // action name (modalities only)
        int index = 0;                // position index (literals, modalities)
        Replacement kappa;            // replacements only
        std::vector<Formula> kids;    // 0, 1 or 2 children

        // Cached structural data, filled in by finish().
        std::size_t hash = 0;
        int size = 1;
        int arity = 1;
        std::vector<std::string> free_vars;   // sorted, unique
        std::vector<std::string> bound_vars;  // sorted, unique
    };

public:
    Formula() = default;

    bool valid() const { return node_ != nullptr; }

    NodeKind kind() const { return ref().kind; }
    bool is_literal() const { return kind() == NodeKind::PosLit || kind() == NodeKind::NegLit; }
    bool is_fixpoint() const { return kind() == NodeKind::Mu || kind() == NodeKind::Nu; }
    bool is_modality() const { return kind() == NodeKind::Diamond || kind() == NodeKind::Box; }

    // Proposition name (literals) or variable name (Var, Mu, Nu).
    const std::string& name() const { return ref().label; }
    const std::string& action() const { return ref().act; }
    int index() const { return ref().index; }
    const Replacement& kappa() const { return ref().kappa; }

    std::size_t child_count() const { return ref().kids.size(); }
    const Formula& child(std::size_t i) const {
        if (i >= ref().kids.size()) throw std::invalid_argument("formula child out of range");
        return ref().kids[i];
    }
    const Formula& left() const { return child(0); }
    const Formula& right() const { return child(1); }
    const Formula& body() const { return child(0); }

    int size() const { return ref().size; }
    int arity() const { return ref().arity; }
    const std::vector<std::string>& free_variables() const { return ref().free_vars; }
    const std::vector<std::string>& bound_variables() const { return ref().bound_vars; }
    bool is_closed() const { return ref().free_vars.empty(); }
    std::size_t hash() const { return ref().hash; }

    FixKind fix_kind() const {
        if (!is_fixpoint()) throw std::invalid_argument("fix_kind on non-fixpoint");
        return kind() == NodeKind::Mu ? FixKind::Mu : FixKind::Nu;
    }

    bool operator==(const Formula& o) const {
        if (node_ == o.node_) return true;
        if (!node_ || !o.node_) return false;
        return equal_nodes(*node_, *o.node_);
    }
    bool operator!=(const Formula& o) const { return !(*this == o); }

    // Distinct subformulas, in order of first occurrence in a preorder walk.
    std::vector<Formula> subformulas() const;

    // Variable name -> binding fixpoint subformula.  Well defined because
    // binder names are unique in any constructible formula.
    std::map<std::string, Formula> binder_map() const;

    // All proposition names / action names occurring, sorted and unique.
    std::vector<std::string> propositions() const;
    std::vector<std::string> actions() const;

    std::string to_string() const;

    struct Hash {
        std::size_t operator()(const Formula& f) const { return f.hash(); }
    };

    // Builders --------------------------------------------------------------

    friend Formula pos(std::string prop, int i);
    friend Formula neg(std::string prop, int i);
    friend Formula var(std::string name);
    friend Formula disj(Formula a, Formula b);
    friend Formula conj(Formula a, Formula b);
    friend Formula dia(std::string act, int i, Formula f);
    friend Formula box(std::string act, int i, Formula f);
    friend Formula make_fixpoint(NodeKind kind, std::string name, Formula body);
    friend Formula repl(Replacement kappa, Formula f);

private:
    std::shared_ptr<const Node> node_;

    const Node& ref() const {
        if (!node_) throw std::invalid_argument("use of empty formula handle");
        return *node_;
    }

    static bool equal_nodes(const Node& a, const Node& b) {
        if (a.hash != b.hash || a.kind != b.kind || a.index != b.index ||
            a.label != b.label || a.act != b.act || a.kappa != b.kappa ||
            a.kids.size() != b.kids.size())
            return false;
        for (std::size_t i = 0; i < a.kids.size(); ++i)
            if (a.kids[i] != b.kids[i]) return false;
        return true;
    }

    static std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                                 const std::vector<std::string>& b) {
        std::vector<std::string> out;
        out.reserve(a.size() + b.size());
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    static void check_disjoint_binders(const Formula& a, const Formula& b) {
        const auto& x = a.ref().bound_vars;
        const auto& y = b.ref().bound_vars;
        std::vector<std::string> common;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                              std::back_inserter(common));
        if (!common.empty())
            throw std::invalid_argument("duplicate binder name '" + common.front() +
                                        "': every fixpoint variable must be bound exactly once");
    }

    static Formula finish(Node n) {
        std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ull;
        auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
        mix(std::hash<std::string>{}(n.label));
        mix(std::hash<std::string>{}(n.act));
        mix(static_cast<std::size_t>(n.index));
        mix(n.kappa.hash());
        n.size = 1;
        n.arity = std::max(1, std::max(n.index, n.kappa.support_max()));
        for (const auto& k : n.kids) {
            mix(k.hash());
            n.size += k.size();
            n.arity = std::max(n.arity, k.arity());
            n.free_vars = merge_sorted(n.free_vars, k.free_variables());
            n.bound_vars = merge_sorted(n.bound_vars, k.bound_variables());
        }
        if (n.kind == NodeKind::Var) n.free_vars = {n.label};
        if (n.kind == NodeKind::Mu || n.kind == NodeKind::Nu) {
            n.free_vars.erase(std::remove(n.free_vars.begin(), n.free_vars.end(), n.label),
                              n.free_vars.end());
            n.bound_vars = merge_sorted(n.bound_vars, {n.label});
        }
        n.hash = h;
        Formula f;
        f.node_ = std::make_shared<const Node>(std::move(n));
        return f;
    }

    void print(std::ostream& os, bool tail) const;
};

// ── Builders ────────────────────────────────────────────────────────────────

inline void check_prop_name(const std::string& p) {
    if (p.empty() || p[0] < 'a' || p[0] > 'z')
        throw std::invalid_argument("proposition name must start with a lowercase letter: '" + p + "'");
}

inline void check_var_name(const std::string& v) {
    if (v.empty() || v[0] < 'A' || v[0] > 'Z')
        throw std::invalid_argument("variable name must start with an uppercase letter: '" + v + "'");
}

inline Formula pos(std::string prop, int i) {
    check_prop_name(prop);
    if (i < 1) throw std::invalid_argument("position index must be >= 1");
    Formula::Node n;
    n.kind = NodeKind::PosLit;
    n.label = std::move(prop);
    n.index = i;
    return Formula::finish(std::move(n));
}

inline Formula neg(std::string prop, int i) {
    check_prop_name(prop);
    if (i < 1) throw std::invalid_argument("position index must be >= 1");
    Formula::Node n;
    n.kind = NodeKind::NegLit;
    n.label = std::move(prop);
    n.index = i;
    return Formula::finish(std::move(n));
}

inline Formula var(std::string name) {
    check_var_name(name);
    Formula::Node n;
    n.kind = NodeKind::Var;
    n.label = std::move(name);
    return Formula::finish(std::move(n));
}

inline Formula disj(Formula a, Formula b) {
    Formula::check_disjoint_binders(a, b);
    Formula::Node n;
    n.kind = NodeKind::Or;
    n.kids = {std::move(a), std::move(b)};
    return Formula::finish(std::move(n));
}

inline Formula conj(Formula a, Formula b) {
    Formula::check_disjoint_binders(a, b);
    Formula::Node n;
    n.kind = NodeKind::And;
    n.kids = {std::move(a), std::move(b)};
    return Formula::finish(std::move(n));
}

inline Formula dia(std::string act, int i, Formula f) {
    if (i < 1) throw std::invalid_argument("position index must be >= 1");
    Formula::Node n;
    n.kind = NodeKind::Diamond;
    n.act = std::move(act);
    n.index = i;
    n.kids = {std::move(f)};
    return Formula::finish(std::move(n));
}

inline Formula box(std::string act, int i, Formula f) {
    if (i < 1) throw std::invalid_argument("position index must be >= 1");
    Formula::Node n;
    n.kind = NodeKind::Box;
    n.act = std::move(act);
    n.index = i;
    n.kids = {std::move(f)};
    return Formula::finish(std::move(n));
}

inline Formula make_fixpoint(NodeKind kind, std::string name, Formula body) {
    check_var_name(name);
    const auto& bound = body.bound_variables();
    if (std::binary_search(bound.begin(), bound.end(), name))
        throw std::invalid_argument("duplicate binder name '" + name +
                                    "': every fixpoint variable must be bound exactly once");
    Formula::Node n;
    n.kind = kind;
    n.label = std::move(name);
    n.kids = {std::move(body)};
    return Formula::finish(std::move(n));
}

inline Formula mu(std::string name, Formula body) {
    return make_fixpoint(NodeKind::Mu, std::move(name), std::move(body));
}

inline Formula nu(std::string name, Formula body) {
    return make_fixpoint(NodeKind::Nu, std::move(name), std::move(body));
}

inline Formula fix(FixKind t, std::string name, Formula body) {
    return t == FixKind::Mu ? mu(std::move(name), std::move(body))
                            : nu(std::move(name), std::move(body));
}

inline Formula repl(Replacement kappa, Formula f) {
    Formula::Node n;
    n.kind = NodeKind::Repl;
    n.kappa = std::move(kappa);
    n.kids = {std::move(f)};
    return Formula::finish(std::move(n));
}

// "lit -> phi" sugar: the antecedent must be a literal; the result is the
// positive-normal-form disjunction (complement of lit) | phi.
inline Formula implies(const Formula& lit, Formula f) {
    if (lit.kind() == NodeKind::PosLit) return disj(neg(lit.name(), lit.index()), std::move(f));
    if (lit.kind() == NodeKind::NegLit) return disj(pos(lit.name(), lit.index()), std::move(f));
    throw std::invalid_argument("implication antecedent must be a literal");
}

// Left fold of a nonempty list with disj/conj; matches how the parser
// associates the binary connectives, so printing round-trips.
inline Formula disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) throw std::invalid_argument("disj_all needs at least one operand");
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
    return acc;
}

inline Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) throw std::invalid_argument("conj_all needs at least one operand");
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
    return acc;
}

// ── Derived queries ─────────────────────────────────────────────────────────

inline std::vector<Formula> Formula::subformulas() const {
    std::vector<Formula> out;
    std::unordered_set<Formula, Formula::Hash> seen;
    std::vector<Formula> stack{*this};
    while (!stack.empty()) {
        Formula f = stack.back();
        stack.pop_back();
        if (!seen.insert(f).second) continue;
        out.push_back(f);
        // Push children in reverse so the walk visits them left to right.
        for (std::size_t i = f.child_count(); i > 0; --i) stack.push_back(f.child(i - 1));
    }
    return out;
}

inline std::map<std::string, Formula> Formula::binder_map() const {
    std::map<std::string, Formula> out;
    for (const auto& f : subformulas())
        if (f.is_fixpoint()) out.emplace(f.name(), f);
    return out;
}

inline std::vector<std::string> Formula::propositions() const {
    std::vector<std::string> out;
    for (const auto& f : subformulas())
        if (f.is_literal()) out.push_back(f.name());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::string> Formula::actions() const {
    std::vector<std::string> out;
    for (const auto& f : subformulas())
        if (f.is_modality()) out.push_back(f.action());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ── Printing ────────────────────────────────────────────────────────────────
//
// The printer emits the same concrete grammar the parser reads, adding
// parentheses only where reparsing would otherwise associate differently.
// "tail" marks positions where the formula extends to the end of the
// enclosing scope, which is where an unparenthesised fixpoint is safe
// (its body soaks up everything to the right).

inline void Formula::print(std::ostream& os, bool tail) const {
    const Node& n = ref();
    auto print_unit_operand = [&os, tail](const Formula& f) {
        NodeKind k = f.kind();
        bool needs_parens = k == NodeKind::Or || k == NodeKind::And ||
                            ((k == NodeKind::Mu || k == NodeKind::Nu) && !tail);
        if (needs_parens) {
            os << '(';
            f.print(os, true);
            os << ')';
        } else {
            f.print(os, tail);
        }
    };
    switch (n.kind) {
        case NodeKind::PosLit:
            os << n.label << '(' << n.index << ')';
            break;
        case NodeKind::NegLit:
            os << '~' << n.label << '(' << n.index << ')';
            break;
        case NodeKind::Var:
            os << n.label;
            break;
        case NodeKind::Or: {
            const Formula& l = n.kids[0];
            if (l.is_fixpoint()) {
                os << '(';
                l.print(os, true);
                os << ')';
            } else {
                l.print(os, false);
            }
            os << " | ";
            const Formula& r = n.kids[1];
            if (r.kind() == NodeKind::Or || (r.is_fixpoint() && !tail)) {
                os << '(';
                r.print(os, true);
                os << ')';
            } else {
                r.print(os, tail);
            }
            break;
        }
        case NodeKind::And: {
            const Formula& l = n.kids[0];
            if (l.kind() == NodeKind::Or || l.is_fixpoint()) {
                os << '(';
                l.print(os, true);
                os << ')';
            } else {
                l.print(os, false);
            }
            os << " & ";
            const Formula& r = n.kids[1];
            if (r.kind() == NodeKind::Or || r.kind() == NodeKind::And ||
                (r.is_fixpoint() && !tail)) {
                os << '(';
                r.print(os, true);
                os << ')';
            } else {
                r.print(os, tail);
            }
            break;
        }
        case NodeKind::Diamond:
            os << '<' << n.act << ">_" << n.index << ' ';
            print_unit_operand(n.kids[0]);
            break;
        case NodeKind::Box:
            os << '[' << n.act << "]_" << n.index << ' ';
            print_unit_operand(n.kids[0]);
            break;
        case NodeKind::Mu:
        case NodeKind::Nu:
            os << (n.kind == NodeKind::Mu ? "mu " : "nu ") << n.label << ". ";
            n.kids[0].print(os, true);
            break;
        case NodeKind::Repl:
            os << '{' << n.kappa.to_text() << "} ";
            print_unit_operand(n.kids[0]);
            break;
    }
}

inline std::string Formula::to_string() const {
    std::ostringstream os;
    print(os, true);
    return os.str();
}

inline std::string pretty_print(const Formula& f) { return f.to_string(); }

inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
    Formula copy = f;
    os << copy.to_string();
    return os;
}

}  // namespace polymu
