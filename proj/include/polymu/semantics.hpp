// ============================================================================
//  polymu/semantics.hpp - denotational evaluation over finite systems
//
//  A formula of arity <= k denotes a set of k-tuples of states.  Relations
//  are bitsets over the n^k tuple indices with position 1 as the most
//  significant digit: index(s1..sk) = s1*n^(k-1) + ... + sk.
//
//  evaluate() is the naive Knaster-Tarski oracle: mu iterates up from the
//  empty relation, nu down from the full one, and every inner fixpoint is
//  recomputed from scratch whenever an enclosing binder changes its value.
//  The only shortcut is duplicate-subtree reuse: results are memoized per
//  (subformula, current versions of its free variables), so a subformula is
//  evaluated once per environment snapshot and closed subformulas once per
//  evaluate() call.  A key containing a stale version can never be hit
//  again, so this never skips a recomputation the iteration needs.
// ============================================================================
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"
#include "lts.hpp"

namespace polymu {

// ── Tuple relations ─────────────────────────────────────────────────────────

class TupleRelation {
public:
    TupleRelation() = default;

    // n^k, refusing sizes past 2^28 tuples (32 MiB of bits).
    static std::size_t checked_universe(int n, int k) {
        if (n < 1 || k < 1) throw std::invalid_argument("relation needs n >= 1, k >= 1");
        std::size_t total = 1;
        for (int i = 0; i < k; ++i) {
            if (total > (std::size_t{1} << 28) / static_cast<std::size_t>(n))
                throw std::invalid_argument("tuple space too large: " + std::to_string(n) +
                                            "^" + std::to_string(k) + " exceeds 2^28");
            total *= static_cast<std::size_t>(n);
        }
        return total;
    }

    TupleRelation(int n, int k) : n_(n), k_(k), size_(checked_universe(n, k)) {
        bits_.assign((size_ + 63) / 64, 0);
    }

    static TupleRelation empty_rel(int n, int k) { return TupleRelation(n, k); }

    static TupleRelation full_rel(int n, int k) {
        TupleRelation r(n, k);
        r.bits_.assign(r.bits_.size(), ~std::uint64_t{0});
        r.trim();
        return r;
    }

    int states() const { return n_; }
    int arity() const { return k_; }
    std::size_t universe_size() const { return size_; }

    bool test(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1; }
    void set(std::size_t idx) { bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63); }
    void reset(std::size_t idx) { bits_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63)); }

    std::size_t index_of(const std::vector<int>& tuple) const {
        if (static_cast<int>(tuple.size()) != k_)
            throw std::invalid_argument("tuple arity mismatch");
        std::size_t idx = 0;
        for (int s : tuple) {
            if (s < 0 || s >= n_) throw std::invalid_argument("tuple component out of range");
            idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(s);
        }
        return idx;
    }

    bool contains(const std::vector<int>& tuple) const { return test(index_of(tuple)); }
    void insert(const std::vector<int>& tuple) { set(index_of(tuple)); }

    std::vector<int> decode(std::size_t idx) const {
        std::vector<int> tuple(k_);
        for (int p = k_ - 1; p >= 0; --p) {
            tuple[p] = static_cast<int>(idx % static_cast<std::size_t>(n_));
            idx /= static_cast<std::size_t>(n_);
        }
        return tuple;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool is_empty() const {
        for (auto w : bits_)
            if (w) return false;
        return true;
    }

    void for_each(const std::function<void(const std::vector<int>&)>& fn) const {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                int bit = __builtin_ctzll(word);
                word &= word - 1;
                fn(decode(w * 64 + static_cast<std::size_t>(bit)));
            }
        }
    }

    TupleRelation& operator|=(const TupleRelation& o) {
        check_same(o);
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }
    TupleRelation& operator&=(const TupleRelation& o) {
        check_same(o);
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
        return *this;
    }

    TupleRelation complement() const {
        TupleRelation r(*this);
        for (auto& w : r.bits_) w = ~w;
        r.trim();
        return r;
    }

    bool subset_of(const TupleRelation& o) const {
        check_same(o);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }

    bool operator==(const TupleRelation& o) const {
        return n_ == o.n_ && k_ == o.k_ && bits_ == o.bits_;
    }
    bool operator!=(const TupleRelation& o) const { return !(*this == o); }

private:
    int n_ = 0, k_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> bits_;

    void check_same(const TupleRelation& o) const {
        if (n_ != o.n_ || k_ != o.k_)
            throw std::invalid_argument("relation shape mismatch");
    }
    void trim() {
        if (size_ % 64) bits_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
};

inline TupleRelation operator|(TupleRelation a, const TupleRelation& b) { return a |= b; }
inline TupleRelation operator&(TupleRelation a, const TupleRelation& b) { return a &= b; }

// (s1..sk) is in the result iff (s_{kappa(1)}..s_{kappa(k)}) is in rel: every
// position reads the pebble its kappa entry points at.
inline TupleRelation apply_replacement(const Replacement& kappa, const TupleRelation& rel) {
    int k = rel.arity();
    if (kappa.support_max() > k)
        throw std::invalid_argument("replacement touches position " +
                                    std::to_string(kappa.support_max()) +
                                    " beyond arity " + std::to_string(k));
    if (kappa.is_identity()) return rel;
    int n = rel.states();
    // weight[j] = combined stride of every target position reading source j
    std::vector<std::size_t> stride(static_cast<std::size_t>(k) + 1);
    stride[static_cast<std::size_t>(k)] = 1;
    for (int p = k - 1; p >= 1; --p)
        stride[static_cast<std::size_t>(p)] =
            stride[static_cast<std::size_t>(p) + 1] * static_cast<std::size_t>(n);
    std::vector<std::size_t> weight(static_cast<std::size_t>(k) + 1, 0);
    for (int p = 1; p <= k; ++p) weight[static_cast<std::size_t>(kappa.apply(p))] += stride[static_cast<std::size_t>(p)];

    TupleRelation out(n, k);
    std::vector<int> digit(static_cast<std::size_t>(k), 0);
    std::size_t src = 0;
    for (std::size_t idx = 0;; ++idx) {
        if (rel.test(src)) out.set(idx);
        // odometer step on the digits, keeping src in sync
        int p = k - 1;
        while (p >= 0 && digit[static_cast<std::size_t>(p)] == n - 1) {
            src -= static_cast<std::size_t>(n - 1) * weight[static_cast<std::size_t>(p) + 1];
            digit[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        if (p < 0) break;
        ++digit[static_cast<std::size_t>(p)];
        src += weight[static_cast<std::size_t>(p) + 1];
    }
    return out;
}

// ── Evaluation ──────────────────────────────────────────────────────────────

using Environment = std::map<std::string, TupleRelation>;

namespace detail {

class Evaluator {
public:
    Evaluator(const Lts& lts, int k) : lts_(lts), n_(lts.state_count()), k_(k) {
        universe_ = TupleRelation::checked_universe(n_, k_);
        stride_.assign(static_cast<std::size_t>(k_) + 1, 1);
        for (int p = k_ - 1; p >= 1; --p)
            stride_[static_cast<std::size_t>(p)] =
                stride_[static_cast<std::size_t>(p) + 1] * static_cast<std::size_t>(n_);
    }

    void bind(const std::string& name, TupleRelation rel) {
        env_[name] = {std::move(rel), ++version_counter_};
    }

    TupleRelation eval(const Formula& f) {
        MemoKey key = make_key(f);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        TupleRelation result = eval_uncached(f);
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    struct Binding {
        TupleRelation rel;
        std::uint64_t version = 0;
    };
    struct MemoKey {
        std::size_t formula_hash;
        Formula formula;
        std::vector<std::uint64_t> versions;  // one per sorted free variable
        bool operator==(const MemoKey& o) const {
            return formula_hash == o.formula_hash && versions == o.versions &&
                   formula == o.formula;
        }
    };
    struct MemoHash {
        std::size_t operator()(const MemoKey& k) const {
            std::size_t h = k.formula_hash;
            for (auto v : k.versions) h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        }
    };

    const Lts& lts_;
    int n_, k_;
    std::size_t universe_ = 0;
    std::vector<std::size_t> stride_;
    std::map<std::string, Binding> env_;
    std::uint64_t version_counter_ = 0;
    std::unordered_map<MemoKey, TupleRelation, MemoHash> memo_;

    MemoKey make_key(const Formula& f) {
        MemoKey key{f.hash(), f, {}};
        for (const auto& x : f.free_variables()) {
            auto it = env_.find(x);
            if (it == env_.end())
                throw std::invalid_argument("unbound variable '" + x + "'");
            key.versions.push_back(it->second.version);
        }
        return key;
    }

    // One pass over all tuple indices as an odometer, handing the callback
    // the flat index and the digit of one fixed position.
    template <typename Fn>
    void scan_position(int pos, Fn&& fn) const {
        std::size_t stride = stride_[static_cast<std::size_t>(pos)];
        std::size_t period = stride * static_cast<std::size_t>(n_);
        for (std::size_t base = 0; base < universe_; base += period)
            for (int s = 0; s < n_; ++s) {
                std::size_t lo = base + static_cast<std::size_t>(s) * stride;
                for (std::size_t off = 0; off < stride; ++off) fn(lo + off, s, stride);
            }
    }

    TupleRelation literal(const std::string& prop, int pos, bool positive) const {
        TupleRelation out(n_, k_);
        scan_position(pos, [&](std::size_t idx, int s, std::size_t) {
            if (lts_.has_prop(s, prop) == positive) out.set(idx);
        });
        return out;
    }

    TupleRelation diamond(const std::string& act, int pos, const TupleRelation& r) const {
        TupleRelation out(n_, k_);
        std::size_t stride = stride_[static_cast<std::size_t>(pos)];
        scan_position(pos, [&](std::size_t idx, int s, std::size_t) {
            for (int t : lts_.successors(s, act)) {
                std::size_t other = idx + (static_cast<std::size_t>(t) - static_cast<std::size_t>(s)) * stride;
                if (r.test(other)) {
                    out.set(idx);
                    return;
                }
            }
        });
        return out;
    }

    TupleRelation boxop(const std::string& act, int pos, const TupleRelation& r) const {
        TupleRelation out(n_, k_);
        std::size_t stride = stride_[static_cast<std::size_t>(pos)];
        scan_position(pos, [&](std::size_t idx, int s, std::size_t) {
            for (int t : lts_.successors(s, act)) {
                std::size_t other = idx + (static_cast<std::size_t>(t) - static_cast<std::size_t>(s)) * stride;
                if (!r.test(other)) return;
            }
            out.set(idx);
        });
        return out;
    }

    TupleRelation fixpoint(const Formula& f) {
        const std::string& x = f.name();
        bool greatest = f.kind() == NodeKind::Nu;
        auto saved = env_.find(x) != env_.end() ? std::optional<Binding>(env_[x])
                                                : std::optional<Binding>();
        TupleRelation current =
            greatest ? TupleRelation::full_rel(n_, k_) : TupleRelation(n_, k_);
        bind(x, current);
        std::size_t rounds = 0;
        for (;;) {
            TupleRelation next = eval(f.body());
            if (next == current) break;
            if (++rounds > universe_ + 1)
                throw std::logic_error("fixpoint iteration failed to converge");
            current = std::move(next);
            bind(x, current);
        }
        if (saved)
            env_[x] = std::move(*saved);
        else
            env_.erase(x);
        return current;
    }

    TupleRelation eval_uncached(const Formula& f) {
        switch (f.kind()) {
            case NodeKind::PosLit:
                return literal(f.name(), f.index(), true);
            case NodeKind::NegLit:
                return literal(f.name(), f.index(), false);
            case NodeKind::Var: {
                auto it = env_.find(f.name());
                if (it == env_.end())
                    throw std::invalid_argument("unbound variable '" + f.name() + "'");
                return it->second.rel;
            }
            case NodeKind::Or:
                return eval(f.left()) | eval(f.right());
            case NodeKind::And:
                return eval(f.left()) & eval(f.right());
            case NodeKind::Diamond:
                return diamond(f.action(), f.index(), eval(f.body()));
            case NodeKind::Box:
                return boxop(f.action(), f.index(), eval(f.body()));
            case NodeKind::Mu:
            case NodeKind::Nu:
                return fixpoint(f);
            case NodeKind::Repl:
                return apply_replacement(f.kappa(), eval(f.body()));
        }
        throw std::logic_error("unreachable formula kind");
    }
};

}  // namespace detail

inline TupleRelation evaluate(const Formula& phi, const Lts& lts, int k,
                              const Environment& rho = {}) {
    if (k < phi.arity())
        throw std::invalid_argument("arity " + std::to_string(phi.arity()) +
                                    " formula cannot be evaluated at k = " + std::to_string(k));
    detail::Evaluator ev(lts, k);
    for (const auto& [name, rel] : rho) {
        if (rel.states() != lts.state_count() || rel.arity() != k)
            throw std::invalid_argument("environment entry '" + name + "' has wrong shape");
        ev.bind(name, rel);
    }
    return ev.eval(phi);
}

inline bool check(const Formula& phi, const Lts& lts, const std::vector<int>& tuple,
                  const Environment& rho = {}) {
    if (static_cast<int>(tuple.size()) < phi.arity())
        throw std::invalid_argument("tuple shorter than formula arity");
    return evaluate(phi, lts, static_cast<int>(tuple.size()), rho).contains(tuple);
}

// The diagonal convention: a single state stands for the constant tuple.
inline bool check(const Formula& phi, const Lts& lts, int state, const Environment& rho = {}) {
    return check(phi, lts, std::vector<int>(static_cast<std::size_t>(phi.arity()), state), rho);
}

}  // namespace polymu
