// ============================================================================
//  polymu/games.hpp - model-checking parity games
//
//  A configuration pairs a tuple of pebbled states with a subformula; the
//  game graph is laid out densely as position = tuple_index * |sub| + sub_id.
//  Verifier owns disjunctions and diamonds, Refuter conjunctions and boxes;
//  binders, variables and replacements are forced single-edge moves.  A
//  literal is a dead end owned by whichever player loses it, matching the
//  stuck-player convention: whoever cannot move loses.  Variable positions
//  carry the only nonzero priorities (every cycle in the graph passes one),
//  derived from alternation depth so that along any dependency chain deeper
//  variables never outrank shallower ones and opposite types never tie.
//
//  The solver is Zielonka's recursive attractor decomposition over a
//  dead-end-free augmentation (two absorbing sinks).  Returned strategies
//  are audited before return: each region must be closed under the
//  opponent's moves, follow its own strategy edges inside itself, and admit
//  no strategy-respecting cycle whose maximum priority favours the opponent.
// ============================================================================
#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "alternation.hpp"
#include "formula.hpp"
#include "lts.hpp"
#include "semantics.hpp"

namespace polymu {

enum class Player : std::uint8_t { Verifier, Refuter };

inline Player opponent(Player p) {
    return p == Player::Verifier ? Player::Refuter : Player::Verifier;
}

inline char player_letter(Player p) { return p == Player::Verifier ? 'V' : 'R'; }

struct ParityGame {
    std::vector<Player> owner;
    std::vector<int> priority;
    std::vector<std::vector<int>> succ;
    std::vector<std::string> label;  // optional, for dumps

    int size() const { return static_cast<int>(owner.size()); }

    int add_position(Player own, int prio, std::string lbl = {}) {
        owner.push_back(own);
        priority.push_back(prio);
        succ.emplace_back();
        label.push_back(std::move(lbl));
        return size() - 1;
    }

    void add_edge(int from, int to) { succ[static_cast<std::size_t>(from)].push_back(to); }
};

struct GameSolution {
    std::vector<Player> winner;
    // strategy[v] = successor the owner should take when winning at v, -1 when
    // v is a dead end or owned by the losing player.
    std::vector<int> strategy;
};

// ── Zielonka solver ─────────────────────────────────────────────────────────

namespace detail {

class ZielonkaSolver {
public:
    explicit ZielonkaSolver(const ParityGame& g) : original_(g) {
        int n = g.size();
        owner_ = g.owner;
        priority_ = g.priority;
        succ_ = g.succ;
        // Absorbing sinks so the recursion never sees a dead end: a stuck
        // player is redirected to the sink where their opponent wins.
        sink_v_ = add_internal(Player::Refuter, 0);
        sink_r_ = add_internal(Player::Verifier, 1);
        succ_[static_cast<std::size_t>(sink_v_)] = {sink_v_};
        succ_[static_cast<std::size_t>(sink_r_)] = {sink_r_};
        for (int v = 0; v < n; ++v)
            if (succ_[static_cast<std::size_t>(v)].empty())
                succ_[static_cast<std::size_t>(v)].push_back(
                    owner_[static_cast<std::size_t>(v)] == Player::Verifier ? sink_r_ : sink_v_);
        pred_.resize(succ_.size());
        for (std::size_t v = 0; v < succ_.size(); ++v)
            for (int w : succ_[v]) pred_[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
        winner_.assign(succ_.size(), Player::Verifier);
        strategy_.assign(succ_.size(), -1);
    }

    GameSolution run() {
        std::vector<char> alive(succ_.size(), 1);
        solve(alive);
        GameSolution out;
        out.winner.assign(winner_.begin(), winner_.begin() + original_.size());
        out.strategy.assign(strategy_.begin(), strategy_.begin() + original_.size());
        // Edges into the sinks are artifacts of the augmentation, and inner
        // recursion levels may leave stale prescriptions at positions their
        // owner ultimately loses; neither is part of a winning strategy.
        for (std::size_t v = 0; v < out.strategy.size(); ++v) {
            if (out.strategy[v] >= original_.size()) out.strategy[v] = -1;
            if (original_.owner[v] != out.winner[v]) out.strategy[v] = -1;
        }
        verify();
        return out;
    }

private:
    const ParityGame& original_;
    std::vector<Player> owner_;
    std::vector<int> priority_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
    std::vector<Player> winner_;
    std::vector<int> strategy_;
    int sink_v_ = -1, sink_r_ = -1;

    int add_internal(Player own, int prio) {
        owner_.push_back(own);
        priority_.push_back(prio);
        succ_.emplace_back();
        return static_cast<int>(succ_.size()) - 1;
    }

    // Attractor of `target` for player z inside `alive`; newly attracted
    // nodes of z get their witnessing edge recorded in strat.
    std::vector<char> attractor(const std::vector<char>& alive, const std::vector<int>& target,
                                Player z, std::vector<int>& strat) {
        std::vector<char> in_attr(succ_.size(), 0);
        std::vector<int> degree(succ_.size(), 0);
        for (std::size_t v = 0; v < succ_.size(); ++v) {
            if (!alive[v]) continue;
            int d = 0;
            for (int w : succ_[v])
                if (alive[static_cast<std::size_t>(w)]) ++d;
            degree[v] = d;
        }
        std::vector<int> queue;
        for (int v : target)
            if (alive[static_cast<std::size_t>(v)] && !in_attr[static_cast<std::size_t>(v)]) {
                in_attr[static_cast<std::size_t>(v)] = 1;
                queue.push_back(v);
            }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int w = queue[qi];
            for (int v : pred_[static_cast<std::size_t>(w)]) {
                auto uv = static_cast<std::size_t>(v);
                if (!alive[uv] || in_attr[uv]) continue;
                if (owner_[uv] == z) {
                    in_attr[uv] = 1;
                    strat[uv] = w;
                    queue.push_back(v);
                } else if (--degree[uv] == 0) {
                    in_attr[uv] = 1;
                    queue.push_back(v);
                }
            }
        }
        return in_attr;
    }

    void solve(std::vector<char>& alive) {
        int top = -1;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v]) top = std::max(top, priority_[v]);
        if (top < 0) return;  // empty subgame
        Player z = (top % 2 == 0) ? Player::Verifier : Player::Refuter;

        std::vector<int> top_set;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v] && priority_[v] == top) top_set.push_back(static_cast<int>(v));

        std::vector<int> attract_strat(succ_.size(), -1);
        std::vector<char> area = attractor(alive, top_set, z, attract_strat);

        std::vector<char> rest(succ_.size(), 0);
        bool rest_empty = true;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v] && !area[v]) {
                rest[v] = 1;
                rest_empty = false;
            }
        if (!rest_empty) solve(rest);

        bool opponent_absent = true;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v] && !area[v] && winner_[v] != z) opponent_absent = false;

        if (opponent_absent) {
            // z sweeps this whole subgame: attractor edges lead to the top
            // set, where any move that stays alive revisits priority `top`
            // or drops into territory already won by z.
            for (std::size_t v = 0; v < succ_.size(); ++v) {
                if (!alive[v]) continue;
                if (area[v]) {
                    winner_[v] = z;
                    if (owner_[v] == z) {
                        if (attract_strat[v] >= 0) {
                            strategy_[v] = attract_strat[v];
                        } else {
                            strategy_[v] = -1;
                            for (int w : succ_[v])
                                if (alive[static_cast<std::size_t>(w)]) {
                                    strategy_[v] = w;
                                    break;
                                }
                        }
                    }
                }
            }
            return;
        }

        // Opponent holds part of the remainder; their full region here is the
        // attractor of it, and the rest is settled by one more recursion.
        std::vector<int> opp_seed;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v] && !area[v] && winner_[v] != z) opp_seed.push_back(static_cast<int>(v));
        std::vector<int> opp_strat(succ_.size(), -1);
        std::vector<char> opp_area = attractor(alive, opp_seed, opponent(z), opp_strat);
        for (std::size_t v = 0; v < succ_.size(); ++v) {
            if (!alive[v] || !opp_area[v]) continue;
            Player before = winner_[v];
            winner_[v] = opponent(z);
            if (owner_[v] == opponent(z)) {
                bool was_seed = !area[v] && before == opponent(z);
                if (!was_seed && opp_strat[v] >= 0) strategy_[v] = opp_strat[v];
            }
        }
        std::vector<char> remaining(succ_.size(), 0);
        bool any = false;
        for (std::size_t v = 0; v < succ_.size(); ++v)
            if (alive[v] && !opp_area[v]) {
                remaining[v] = 1;
                any = true;
            }
        if (any) solve(remaining);
    }

    // Post-solve audit on the augmented (dead-end-free) graph.
    void verify() const {
        std::size_t n = succ_.size();
        const std::vector<Player>& win = winner_;
        const std::vector<int>& strat = strategy_;
        if (win[static_cast<std::size_t>(sink_v_)] != Player::Verifier ||
            win[static_cast<std::size_t>(sink_r_)] != Player::Refuter)
            throw std::logic_error("solver audit: sink positions misclassified");

        // Region closure and strategy sanity.  (Each sink is owned by the
        // player losing at it, so sinks take the closure branch.)
        for (std::size_t v = 0; v < n; ++v) {
            Player w = win[v];
            if (owner_[v] == w) {
                int s = strat[v];
                if (s < 0 || win[static_cast<std::size_t>(s)] != w)
                    throw std::logic_error("solver audit: winner has no strategy edge inside "
                                           "their region at position " + std::to_string(v));
                bool found = false;
                for (int u : succ_[v]) found = found || u == s;
                if (!found)
                    throw std::logic_error("solver audit: strategy edge is not a game edge");
            } else {
                for (int u : succ_[v])
                    if (win[static_cast<std::size_t>(u)] != w)
                        throw std::logic_error(
                            "solver audit: region not closed under opponent moves at position " +
                            std::to_string(v));
            }
        }

        // Cycle audit: inside each region, following the winner's strategy and
        // all opponent choices, no cycle may have an adverse maximum priority.
        for (Player z : {Player::Verifier, Player::Refuter}) {
            int want = (z == Player::Verifier) ? 0 : 1;  // acceptable parity
            int maxp = 0;
            for (std::size_t v = 0; v < n; ++v) maxp = std::max(maxp, priority_[v]);
            for (int p = 0; p <= maxp; ++p) {
                if (p % 2 == want) continue;  // only adverse priorities matter
                // subgraph: region of z, strategy-restricted, priorities <= p
                std::vector<char> node_in(n, 0);
                for (std::size_t v = 0; v < n; ++v)
                    node_in[v] = win[v] == z && priority_[v] <= p;
                if (has_marked_cycle(node_in, win, strat, z, p))
                    throw std::logic_error("solver audit: adverse cycle of priority " +
                                           std::to_string(p) + " inside winning region");
            }
        }
    }

    // Does the strategy-restricted subgraph on node_in contain a cycle through
    // a node of priority exactly p?  (Iterative Tarjan SCC.)
    bool has_marked_cycle(const std::vector<char>& node_in, const std::vector<Player>& win,
                          const std::vector<int>& strat, Player z, int p) const {
        std::size_t n = succ_.size();
        // Sinks are owned by the player losing at them, so inside region z
        // they always fall under the all-successors branch.
        auto edges_of = [&](std::size_t v, std::vector<int>& out) {
            out.clear();
            if (owner_[v] == z) {
                int s = strat[v];
                if (s >= 0 && node_in[static_cast<std::size_t>(s)]) out.push_back(s);
            } else {
                for (int u : succ_[v])
                    if (node_in[static_cast<std::size_t>(u)]) out.push_back(u);
            }
        };
        std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
        std::vector<int> stack;
        int next_index = 0;
        struct Frame {
            int v;
            std::size_t child;
            std::vector<int> edges;
        };
        for (std::size_t root = 0; root < n; ++root) {
            if (!node_in[root] || index[root] >= 0) continue;
            std::vector<Frame> call;
            call.push_back({static_cast<int>(root), 0, {}});
            edges_of(root, call.back().edges);
            index[root] = low[root] = next_index++;
            stack.push_back(static_cast<int>(root));
            on_stack[root] = 1;
            while (!call.empty()) {
                Frame& f = call.back();
                auto fv = static_cast<std::size_t>(f.v);
                if (f.child < f.edges.size()) {
                    int u = f.edges[f.child++];
                    auto uu = static_cast<std::size_t>(u);
                    if (index[uu] < 0) {
                        index[uu] = low[uu] = next_index++;
                        stack.push_back(u);
                        on_stack[uu] = 1;
                        call.push_back({u, 0, {}});
                        edges_of(uu, call.back().edges);
                    } else if (on_stack[uu]) {
                        low[fv] = std::min(low[fv], index[uu]);
                    }
                } else {
                    if (low[fv] == index[fv]) {
                        // pop the SCC rooted here
                        std::vector<int> comp;
                        for (;;) {
                            int w = stack.back();
                            stack.pop_back();
                            on_stack[static_cast<std::size_t>(w)] = 0;
                            comp.push_back(w);
                            if (w == f.v) break;
                        }
                        bool nontrivial = comp.size() > 1;
                        if (!nontrivial) {
                            std::vector<int> es;
                            edges_of(fv, es);
                            for (int u : es) nontrivial = nontrivial || u == f.v;
                        }
                        if (nontrivial)
                            for (int w : comp)
                                if (priority_[static_cast<std::size_t>(w)] == p &&
                                    (win[static_cast<std::size_t>(w)] == z))
                                    return true;
                    }
                    int parent_low = low[fv];
                    call.pop_back();
                    if (!call.empty()) {
                        auto pv = static_cast<std::size_t>(call.back().v);
                        low[pv] = std::min(low[pv], parent_low);
                    }
                }
            }
        }
        return false;
    }
};

}  // namespace detail

inline GameSolution solve_parity(const ParityGame& game) {
    return detail::ZielonkaSolver(game).run();
}

// ── Model-checking game construction ────────────────────────────────────────

struct ModelCheckingGame {
    ParityGame game;
    int n = 0, k = 0;
    std::vector<Formula> subs;  // position layout: tuple_index * subs.size() + sub_id

    int position_of(std::size_t tuple_index, int sub_id) const {
        return static_cast<int>(tuple_index * subs.size() + static_cast<std::size_t>(sub_id));
    }
    int seed(const std::vector<int>& tuple) const {
        TupleRelation probe(n, k);
        return position_of(probe.index_of(tuple), 0);
    }
};

inline ModelCheckingGame build_game(const Formula& phi, const Lts& lts, int k) {
    if (!phi.is_closed())
        throw std::invalid_argument("model-checking games need a closed formula");
    if (k < phi.arity())
        throw std::invalid_argument("arity " + std::to_string(phi.arity()) +
                                    " formula cannot be played at k = " + std::to_string(k));
    ModelCheckingGame mc;
    mc.n = lts.state_count();
    mc.k = k;
    mc.subs = phi.subformulas();  // root is sub_id 0 by preorder construction

    std::unordered_map<Formula, int, Formula::Hash> sub_id;
    for (std::size_t i = 0; i < mc.subs.size(); ++i)
        sub_id.emplace(mc.subs[i], static_cast<int>(i));
    auto binders = phi.binder_map();
    AlternationInfo alt = classify(phi);

    std::size_t universe = TupleRelation::checked_universe(mc.n, k);
    std::size_t total = universe * mc.subs.size();
    if (total > (std::size_t{1} << 26))
        throw std::invalid_argument("game too large: " + std::to_string(total) + " positions");

    TupleRelation scratch(mc.n, k);  // index helper
    ParityGame& g = mc.game;
    g.owner.assign(total, Player::Verifier);
    g.priority.assign(total, 0);
    g.succ.assign(total, {});
    g.label.assign(total, {});

    std::vector<std::size_t> stride(static_cast<std::size_t>(k) + 1, 1);
    for (int p = k - 1; p >= 1; --p)
        stride[static_cast<std::size_t>(p)] =
            stride[static_cast<std::size_t>(p) + 1] * static_cast<std::size_t>(mc.n);

    std::vector<int> tuple(static_cast<std::size_t>(k), 0);
    for (std::size_t idx = 0; idx < universe; ++idx) {
        for (std::size_t i = 0; i < mc.subs.size(); ++i) {
            const Formula& f = mc.subs[i];
            int v = mc.position_of(idx, static_cast<int>(i));
            switch (f.kind()) {
                case NodeKind::PosLit:
                case NodeKind::NegLit: {
                    int s = tuple[static_cast<std::size_t>(f.index() - 1)];
                    bool verifier_wins =
                        lts.has_prop(s, f.name()) == (f.kind() == NodeKind::PosLit);
                    // dead end owned by the loser: being stuck loses
                    g.owner[static_cast<std::size_t>(v)] =
                        verifier_wins ? Player::Refuter : Player::Verifier;
                    break;
                }
                case NodeKind::Or:
                case NodeKind::And:
                    g.owner[static_cast<std::size_t>(v)] =
                        f.kind() == NodeKind::Or ? Player::Verifier : Player::Refuter;
                    g.succ[static_cast<std::size_t>(v)] = {
                        mc.position_of(idx, sub_id.at(f.left())),
                        mc.position_of(idx, sub_id.at(f.right()))};
                    if (f.left() == f.right())
                        g.succ[static_cast<std::size_t>(v)].pop_back();
                    break;
                case NodeKind::Diamond:
                case NodeKind::Box: {
                    g.owner[static_cast<std::size_t>(v)] =
                        f.kind() == NodeKind::Diamond ? Player::Verifier : Player::Refuter;
                    int p = f.index();
                    int s = tuple[static_cast<std::size_t>(p - 1)];
                    int body = sub_id.at(f.body());
                    for (int t : lts.successors(s, f.action())) {
                        std::size_t moved =
                            idx + (static_cast<std::size_t>(t) - static_cast<std::size_t>(s)) *
                                      stride[static_cast<std::size_t>(p)];
                        g.add_edge(v, mc.position_of(moved, body));
                    }
                    break;
                }
                case NodeKind::Repl: {
                    std::vector<int> moved(tuple.size());
                    for (int p = 1; p <= k; ++p)
                        moved[static_cast<std::size_t>(p - 1)] =
                            tuple[static_cast<std::size_t>(f.kappa().apply(p) - 1)];
                    g.add_edge(v, mc.position_of(scratch.index_of(moved), sub_id.at(f.body())));
                    break;
                }
                case NodeKind::Mu:
                case NodeKind::Nu:
                    g.add_edge(v, mc.position_of(idx, sub_id.at(f.body())));
                    break;
                case NodeKind::Var: {
                    g.priority[static_cast<std::size_t>(v)] =
                        game_priority(alt.type.at(f.name()), alt.depth.at(f.name()));
                    g.add_edge(v, mc.position_of(idx, sub_id.at(binders.at(f.name()).body())));
                    break;
                }
            }
        }
        // odometer
        int p = k - 1;
        while (p >= 0 && tuple[static_cast<std::size_t>(p)] == mc.n - 1) tuple[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++tuple[static_cast<std::size_t>(p)];
    }
    return mc;
}

inline bool check_via_game(const Formula& phi, const Lts& lts, const std::vector<int>& tuple) {
    ModelCheckingGame mc = build_game(phi, lts, static_cast<int>(tuple.size()));
    GameSolution sol = solve_parity(mc.game);
    return sol.winner[static_cast<std::size_t>(mc.seed(tuple))] == Player::Verifier;
}

inline bool check_via_game(const Formula& phi, const Lts& lts, int state) {
    return check_via_game(phi, lts,
                          std::vector<int>(static_cast<std::size_t>(phi.arity()), state));
}

// One position per line: id, owner, priority, comma-joined successors, label.
inline void dump_game(const ParityGame& g, std::ostream& os) {
    for (int v = 0; v < g.size(); ++v) {
        auto uv = static_cast<std::size_t>(v);
        os << v << ' ' << player_letter(g.owner[uv]) << ' ' << g.priority[uv] << ' ';
        if (g.succ[uv].empty()) {
            os << '-';
        } else {
            for (std::size_t i = 0; i < g.succ[uv].size(); ++i)
                os << (i ? "," : "") << g.succ[uv][i];
        }
        if (!g.label[uv].empty()) os << ' ' << g.label[uv];
        os << '\n';
    }
}

// Labels for the dense model-checking layout are generated on demand; they
// would dominate memory if stored for every position.
inline void dump_game(const ModelCheckingGame& mc, std::ostream& os) {
    std::size_t nsubs = mc.subs.size();
    TupleRelation probe(mc.n, mc.k);
    for (int v = 0; v < mc.game.size(); ++v) {
        auto uv = static_cast<std::size_t>(v);
        os << v << ' ' << player_letter(mc.game.owner[uv]) << ' ' << mc.game.priority[uv] << ' ';
        if (mc.game.succ[uv].empty()) {
            os << '-';
        } else {
            for (std::size_t i = 0; i < mc.game.succ[uv].size(); ++i)
                os << (i ? "," : "") << mc.game.succ[uv][i];
        }
        std::vector<int> tuple = probe.decode(uv / nsubs);
        os << " (";
        for (std::size_t i = 0; i < tuple.size(); ++i) os << (i ? "," : "") << tuple[i];
        os << ") |- " << mc.subs[uv % nsubs].to_string() << '\n';
    }
    os.flush();
}

}  // namespace polymu
