#pragma once
// ─────────────────────────────────────────────────────────────────────────────
//  Seeded property sweeps.
//
//  Each sweep runs a batch of independent, individually seeded instances over
//  a small worker pool and aggregates pass counts.  Every failure report
//  carries the instance seed and a serialized copy of the inputs, so any red
//  result can be replayed in isolation.  Aggregation is order independent:
//  instance i is fully determined by (base seed, i), never by which worker
//  picked it up.
//
//  The runners here back both the command-line `selftest` command and the
//  acceptance binary; they are the single source of truth for what each
//  property checks.
// ─────────────────────────────────────────────────────────────────────────────

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "alternation.hpp"
#include "bisim.hpp"
#include "diagonal.hpp"
#include "fixed_sig.hpp"
#include "games.hpp"
#include "generator.hpp"
#include "normalize.hpp"
#include "parser.hpp"
#include "semantics.hpp"

namespace polymu {

// ── Worker pool ──────────────────────────────────────────────────────────────

struct SweepFailure {
    int index = 0;            // instance number within the sweep
    std::uint64_t seed = 0;   // instance seed; with the config this replays it
    std::string detail;       // serialized instance and verdicts
};

struct SweepResult {
    int total = 0;
    int passed = 0;
    std::vector<SweepFailure> failures;  // lowest-index failures, capped

    bool ok() const { return total > 0 ? passed == total : true; }
    std::string ratio() const {
        return std::to_string(passed) + "/" + std::to_string(total);
    }
};

// Derives the per-instance seed from the base seed (splitmix64 finalizer, so
// neighbouring indices land far apart).
inline std::uint64_t instance_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace detail {

constexpr int kMaxFailureReports = 4;

inline int resolve_jobs(int requested, int count) {
    if (requested > 0) return std::min(requested, count);
    unsigned hw = std::thread::hardware_concurrency();
    int fallback = hw == 0 ? 2 : static_cast<int>(hw);
    return std::max(1, std::min(fallback, count));
}

}  // namespace detail

// Runs fn(index, seed) for index in [0, count); nullopt means pass, a string
// is a failure detail, and a thrown exception counts as a failure with the
// exception text.
inline SweepResult run_sweep(
    int count, std::uint64_t base_seed,
    const std::function<std::optional<std::string>(int, std::uint64_t)>& fn,
    int jobs = 0) {
    SweepResult result;
    result.total = count;
    if (count <= 0) return result;

    std::atomic<int> next{0};
    std::atomic<int> passed{0};
    std::mutex sink;
    std::vector<SweepFailure> failures;

    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            std::uint64_t seed = instance_seed(base_seed, static_cast<std::uint64_t>(i));
            std::optional<std::string> verdict;
            try {
                verdict = fn(i, seed);
            } catch (const std::exception& e) {
                verdict = std::string("exception: ") + e.what();
            }
            if (!verdict) {
                passed.fetch_add(1);
            } else {
                std::lock_guard<std::mutex> lock(sink);
                failures.push_back({i, seed, std::move(*verdict)});
            }
        }
    };

    int pool = detail::resolve_jobs(jobs, count);
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(pool));
        for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    result.passed = passed.load();
    std::sort(failures.begin(), failures.end(),
              [](const SweepFailure& a, const SweepFailure& b) { return a.index < b.index; });
    if (static_cast<int>(failures.size()) > detail::kMaxFailureReports)
        failures.resize(static_cast<std::size_t>(detail::kMaxFailureReports));
    result.failures = std::move(failures);
    return result;
}

// ── Engine agreement ─────────────────────────────────────────────────────────
//  Random formula + random system + random tuple; the direct fixpoint
//  evaluator and the parity-game route must return the same verdict.

struct AgreementConfig {
    int count = 500;
    std::uint64_t seed = 1;
    int max_arity = 3;
    int max_alternation = 2;
    int max_budget = 12;
    int max_states = 5;
    int prop_count = 2;
    int act_count = 2;
    int jobs = 0;
};

inline SweepResult engine_agreement_sweep(const AgreementConfig& c) {
    return run_sweep(c.count, c.seed, [&](int, std::uint64_t seed) -> std::optional<std::string> {
        std::mt19937_64 rng(seed);
        auto pick = [&](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        GenConfig g;
        g.arity = pick(1, c.max_arity);
        g.alternation = pick(0, c.max_alternation);
        g.cls = pick(0, 1) ? FormulaClass::Sigma : FormulaClass::Pi;
        int needed = g.alternation == 0 ? 1 : 3 * g.alternation;
        g.budget = pick(needed, std::max(needed, c.max_budget));
        g.prop_count = c.prop_count;
        g.act_count = c.act_count;
        g.states = c.max_states;
        g.seed = rng();

        Formula phi = gen_formula(g);
        Lts lts = gen_lts(g);
        std::vector<int> tuple(static_cast<std::size_t>(g.arity));
        for (auto& s : tuple) s = pick(0, lts.state_count() - 1);

        bool naive = check(phi, lts, tuple);
        bool game = check_via_game(phi, lts, tuple);
        if (naive == game) return std::nullopt;

        std::ostringstream out;
        out << "engines disagree: naive=" << naive << " game=" << game
            << "\n  formula: " << phi.to_string() << "\n  tuple:";
        for (int s : tuple) out << ' ' << s;
        out << "\n" << serialize(lts);
        return out.str();
    }, c.jobs);
}

// ── Diagonal XOR sweeps ──────────────────────────────────────────────────────
//  Encode a random compliant formula as a system, build the simulating
//  formula one level up, and insist exactly one of the two holds at the
//  diagonal.  `fixed` switches to the ten-proposition fixed-signature
//  pipeline.  Every tenth instance reruns through the game engine.

struct DiagSweepConfig {
    int k = 1;
    int m = 1;
    int count = 100;
    std::uint64_t seed = 7;
    bool fixed = false;
    int game_stride = 10;  // every game_stride-th instance uses the game engine
    int extra_budget = 4;  // head-room above the structural minimum
    std::vector<std::string> props;  // signature for the non-fixed pipeline
    int jobs = 0;
};

inline SweepResult diagonal_sweep(const DiagSweepConfig& c) {
    if (c.k < 1 || c.m < 1)
        throw std::invalid_argument("diagonal sweeps need k >= 1 and m >= 1");
    std::vector<std::string> props = c.props;
    if (props.empty())
        props = c.fixed ? std::vector<std::string>{"pp", "pn", "pand", "pdot"}
                        : std::vector<std::string>{"p0"};
    return run_sweep(c.count, c.seed, [&, props](int i, std::uint64_t seed) -> std::optional<std::string> {
        std::mt19937_64 rng(seed);
        auto pick = [&](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        GenConfig g;
        g.arity = c.k;
        g.alternation = c.m;
        bool dual = pick(0, 1) == 1;
        g.cls = dual ? FormulaClass::Pi : FormulaClass::Sigma;
        int needed = 3 * c.m;
        g.budget = needed + pick(0, c.extra_budget);
        g.prop_names = props;
        g.act_names = {"a"};
        g.seed = rng();

        Formula phi = gen_formula(g);
        Engine engine = (c.game_stride > 0 && i % c.game_stride == 0) ? Engine::Game
                                                                      : Engine::Naive;
        DiagonalReport report =
            c.fixed ? diagonal_check_fixed(phi, c.k, c.m, engine, dual)
                    : diagonal_check(phi, c.k, c.m, props, engine, dual);
        if (report.ok()) return std::nullopt;

        std::ostringstream out;
        out << "diagonal XOR failed: phi_holds=" << report.phi_holds
            << " Phi_holds=" << report.Phi_holds
            << " k=" << c.k << " m=" << c.m << " dual=" << dual
            << " engine=" << (engine == Engine::Game ? "game" : "naive")
            << (c.fixed ? " pipeline=fixed" : " pipeline=encoded")
            << "\n  formula: " << phi.to_string();
        return out.str();
    }, c.jobs);
}

// ── Simulator classification ─────────────────────────────────────────────────
//  Both simulating-formula generators must land exactly in Pi level m at
//  arity k+1 (alternation chain of length m, topmost binder a nu).

struct ClassificationIssue {
    int k = 0, m = 0;
    bool fixed = false;
    std::string detail;
};

struct ClassificationReport {
    int checked = 0;
    std::vector<ClassificationIssue> issues;
    bool ok() const { return issues.empty(); }
};

inline ClassificationReport classification_audit(int max_k = 3, int max_m = 4) {
    ClassificationReport report;
    for (int k = 1; k <= max_k; ++k) {
        for (int m = 1; m <= max_m; ++m) {
            for (int fixed = 0; fixed <= 1; ++fixed) {
                Formula Phi = fixed ? diagonal_formula_fixed(k, m)
                                    : diagonal_formula(k, m, {"p0"});
                AlternationInfo info = classify(Phi);
                std::ostringstream why;
                if (Phi.arity() != k + 1)
                    why << "arity " << Phi.arity() << " != " << k + 1 << "; ";
                if (info.max_depth() != m)
                    why << "alternation depth " << info.max_depth() << " != " << m << "; ";
                if (info.pi_level != m)
                    why << "pi level " << info.pi_level << " != " << m << "; ";
                if (info.sigma_level != m + 1)
                    why << "sigma level " << info.sigma_level << " != " << m + 1 << "; ";
                report.checked += 1;
                if (!why.str().empty())
                    report.issues.push_back({k, m, fixed == 1, why.str()});
            }
        }
    }
    return report;
}

// ── Bisimilarity formula vs partition refinement ─────────────────────────────

struct BisimSweepConfig {
    int count = 50;
    std::uint64_t seed = 11;
    int max_states = 6;
    int prop_count = 2;
    int act_count = 2;
    int jobs = 0;
};

inline SweepResult bisim_sweep(const BisimSweepConfig& c) {
    return run_sweep(c.count, c.seed, [&](int, std::uint64_t seed) -> std::optional<std::string> {
        std::mt19937_64 rng(seed);
        GenConfig g;
        g.states = c.max_states;
        g.prop_count = c.prop_count;
        g.act_count = c.act_count;
        g.seed = rng();
        Lts lts = gen_lts(g);

        Formula phi = bisim_formula(lts);
        std::vector<int> blocks = partition(lts);
        TupleRelation rel = evaluate(phi, lts, 2);
        for (int s = 0; s < lts.state_count(); ++s) {
            for (int t = 0; t < lts.state_count(); ++t) {
                bool by_formula = rel.contains({s, t});
                bool by_partition = blocks[static_cast<std::size_t>(s)] ==
                                    blocks[static_cast<std::size_t>(t)];
                if (by_formula != by_partition) {
                    std::ostringstream out;
                    out << "bisimilarity mismatch at (" << s << ", " << t
                        << "): formula=" << by_formula << " partition=" << by_partition
                        << "\n" << serialize(lts);
                    return out.str();
                }
            }
        }
        return std::nullopt;
    }, c.jobs);
}

// ── Replacement normalization ────────────────────────────────────────────────
//  Decomposing non-simple replacements must preserve the denoted relation on
//  random systems, emit only simple replacements, and keep the class levels.

struct NormalizeSweepConfig {
    int count = 200;
    std::uint64_t seed = 13;
    int systems_per_instance = 3;
    int max_states = 4;
    int jobs = 0;
};

inline SweepResult normalization_sweep(const NormalizeSweepConfig& c) {
    return run_sweep(c.count, c.seed, [&](int, std::uint64_t seed) -> std::optional<std::string> {
        std::mt19937_64 rng(seed);
        auto pick = [&](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        GenConfig g;
        g.arity = pick(3, 4);
        g.alternation = pick(0, 2);
        g.cls = pick(0, 1) ? FormulaClass::Sigma : FormulaClass::Pi;
        g.normalized = false;
        g.force_nonsimple = true;
        int needed = (g.alternation == 0 ? 1 : 3 * g.alternation) + 1;
        g.budget = needed + pick(0, 4);
        g.prop_count = 2;
        g.act_count = 2;
        g.states = c.max_states;
        g.seed = rng();

        Formula phi = gen_formula(g);
        Formula psi = normalize_replacements(phi);

        std::ostringstream out;
        if (!is_normalized(psi)) {
            out << "normalized output still has non-simple replacements\n  before: "
                << phi.to_string() << "\n  after: " << psi.to_string();
            return out.str();
        }
        AlternationInfo before = classify(phi);
        AlternationInfo after = classify(psi);
        if (before.sigma_level != after.sigma_level || before.pi_level != after.pi_level) {
            out << "class drift: sigma " << before.sigma_level << " -> " << after.sigma_level
                << ", pi " << before.pi_level << " -> " << after.pi_level
                << "\n  before: " << phi.to_string() << "\n  after: " << psi.to_string();
            return out.str();
        }
        for (int j = 0; j < c.systems_per_instance; ++j) {
            GenConfig lg = g;
            lg.seed = rng();
            Lts lts = gen_lts(lg);
            if (evaluate(phi, lts, g.arity) != evaluate(psi, lts, g.arity)) {
                out << "denotation drift on system " << j << "\n  before: " << phi.to_string()
                    << "\n  after: " << psi.to_string() << "\n" << serialize(lts);
                return out.str();
            }
        }
        return std::nullopt;
    }, c.jobs);
}

// ── Parity-solver oracle ─────────────────────────────────────────────────────
//  On tiny games the Zielonka solver is cross-checked against exhaustive
//  enumeration of memoryless strategies (exact by memoryless determinacy).

inline ParityGame random_parity_game(std::mt19937_64& rng, int max_positions,
                                     int max_priority) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    ParityGame g;
    int n = pick(1, max_positions);
    for (int v = 0; v < n; ++v)
        g.add_position(pick(0, 1) ? Player::Verifier : Player::Refuter,
                       pick(0, max_priority));
    for (int v = 0; v < n; ++v) {
        int degree = pick(0, 3);
        for (int e = 0; e < degree; ++e) g.add_edge(v, pick(0, n - 1));
    }
    return g;
}

namespace detail {

// Winner of the unique play from `start` under a fixed memoryless strategy
// pair (choice[v] = -1 at dead ends).
inline Player play_winner(const ParityGame& g, const std::vector<int>& choice, int start) {
    std::vector<int> seen_at(static_cast<std::size_t>(g.size()), -1);
    std::vector<int> path;
    int v = start;
    for (;;) {
        if (seen_at[static_cast<std::size_t>(v)] >= 0) {
            int best = -1;
            for (std::size_t t = static_cast<std::size_t>(seen_at[static_cast<std::size_t>(v)]);
                 t < path.size(); ++t)
                best = std::max(best, g.priority[static_cast<std::size_t>(path[t])]);
            return best % 2 == 0 ? Player::Verifier : Player::Refuter;
        }
        seen_at[static_cast<std::size_t>(v)] = static_cast<int>(path.size());
        path.push_back(v);
        int next = choice[static_cast<std::size_t>(v)];
        if (next < 0) return opponent(g.owner[static_cast<std::size_t>(v)]);
        v = next;
    }
}

// All memoryless strategies for `who`, as full choice vectors (other player's
// positions left at -1; dead ends stay -1).
inline std::vector<std::vector<int>> strategies_for(const ParityGame& g, Player who) {
    std::vector<int> spots;
    for (int v = 0; v < g.size(); ++v)
        if (g.owner[static_cast<std::size_t>(v)] == who &&
            !g.succ[static_cast<std::size_t>(v)].empty())
            spots.push_back(v);
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> odo(spots.size(), 0);
    for (;;) {
        std::vector<int> choice(static_cast<std::size_t>(g.size()), -1);
        for (std::size_t p = 0; p < spots.size(); ++p)
            choice[static_cast<std::size_t>(spots[p])] =
                g.succ[static_cast<std::size_t>(spots[p])][odo[p]];
        out.push_back(std::move(choice));
        std::size_t p = 0;
        while (p < spots.size()) {
            if (++odo[p] < g.succ[static_cast<std::size_t>(spots[p])].size()) break;
            odo[p] = 0;
            ++p;
        }
        if (p == spots.size()) break;
    }
    return out;
}

}  // namespace detail

// Exhaustive solver: v is won by `who` iff some memoryless strategy of `who`
// beats every memoryless counter-strategy.  Checks both players and insists
// the two verdicts partition the positions.
inline std::vector<Player> solve_by_enumeration(const ParityGame& g) {
    auto sigmas = detail::strategies_for(g, Player::Verifier);
    auto taus = detail::strategies_for(g, Player::Refuter);
    int n = g.size();

    auto exists_forall = [&](Player who, const std::vector<std::vector<int>>& own,
                             const std::vector<std::vector<int>>& other) {
        std::vector<bool> won(static_cast<std::size_t>(n), false);
        for (const auto& mine : own) {
            std::vector<bool> all(static_cast<std::size_t>(n), true);
            for (const auto& theirs : other) {
                std::vector<int> choice(static_cast<std::size_t>(n), -1);
                for (int v = 0; v < n; ++v) {
                    std::size_t u = static_cast<std::size_t>(v);
                    choice[u] = g.owner[u] == who ? mine[u] : theirs[u];
                }
                for (int v = 0; v < n; ++v) {
                    std::size_t u = static_cast<std::size_t>(v);
                    if (all[u] && detail::play_winner(g, choice, v) != who) all[u] = false;
                }
            }
            for (int v = 0; v < n; ++v) {
                std::size_t u = static_cast<std::size_t>(v);
                if (all[u]) won[u] = true;
            }
        }
        return won;
    };

    std::vector<bool> v_wins = exists_forall(Player::Verifier, sigmas, taus);
    std::vector<bool> r_wins = exists_forall(Player::Refuter, taus, sigmas);
    std::vector<Player> winner(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::size_t u = static_cast<std::size_t>(v);
        if (v_wins[u] == r_wins[u])
            throw std::logic_error("strategy enumeration is inconsistent at position " +
                                   std::to_string(v));
        winner[u] = v_wins[u] ? Player::Verifier : Player::Refuter;
    }
    return winner;
}

struct GameOracleConfig {
    int count = 300;
    std::uint64_t seed = 17;
    int max_positions = 5;
    int max_priority = 3;
    int jobs = 0;
};

inline SweepResult game_oracle_sweep(const GameOracleConfig& c) {
    return run_sweep(c.count, c.seed, [&](int, std::uint64_t seed) -> std::optional<std::string> {
        std::mt19937_64 rng(seed);
        ParityGame g = random_parity_game(rng, c.max_positions, c.max_priority);
        GameSolution fast = solve_parity(g);
        std::vector<Player> slow = solve_by_enumeration(g);
        for (int v = 0; v < g.size(); ++v) {
            if (fast.winner[static_cast<std::size_t>(v)] != slow[static_cast<std::size_t>(v)]) {
                std::ostringstream out;
                out << "solver disagrees with enumeration at position " << v << " (solver="
                    << player_letter(fast.winner[static_cast<std::size_t>(v)])
                    << " enumeration=" << player_letter(slow[static_cast<std::size_t>(v)])
                    << ")\n";
                dump_game(g, out);
                return out.str();
            }
        }
        return std::nullopt;
    }, c.jobs);
}

// ── Self-check suite ─────────────────────────────────────────────────────────
//  The eight properties the artifact must hold, each reported on one line.

struct CriterionOutcome {
    std::string name;
    bool passed = false;
    std::string summary;  // counts or first failure
};

struct SelfCheckOptions {
    std::uint64_t seed = 2026;
    int jobs = 0;
    double scale = 1.0;  // multiplies every instance count (min 1 each)
};

namespace detail {

inline int scaled(int count, double scale) {
    int out = static_cast<int>(count * scale);
    return std::max(1, out);
}

inline std::string first_failure(const SweepResult& r) {
    if (r.failures.empty()) return {};
    std::ostringstream out;
    out << "; first failure (instance " << r.failures[0].index << ", seed "
        << r.failures[0].seed << "): " << r.failures[0].detail;
    return out.str();
}

}  // namespace detail

inline std::vector<CriterionOutcome> run_selfcheck(const SelfCheckOptions& opt = {}) {
    std::vector<CriterionOutcome> out;
    auto add_sweep = [&out](std::string name, const SweepResult& r, std::string extra = {}) {
        CriterionOutcome c;
        c.name = std::move(name);
        c.passed = r.ok();
        c.summary = r.ratio() + " instances" + std::move(extra) + detail::first_failure(r);
        out.push_back(std::move(c));
    };

    {
        AgreementConfig c;
        c.count = detail::scaled(500, opt.scale);
        c.seed = instance_seed(opt.seed, 1);
        c.jobs = opt.jobs;
        add_sweep("engine-agreement", engine_agreement_sweep(c));
    }
    {
        SweepResult merged;
        for (int k = 1; k <= 2; ++k) {
            for (int m = 1; m <= 2; ++m) {
                DiagSweepConfig c;
                c.k = k;
                c.m = m;
                c.count = detail::scaled(100, opt.scale);
                c.seed = instance_seed(opt.seed, 100 + static_cast<std::uint64_t>(10 * k + m));
                c.jobs = opt.jobs;
                SweepResult r = diagonal_sweep(c);
                merged.total += r.total;
                merged.passed += r.passed;
                for (auto& f : r.failures) merged.failures.push_back(std::move(f));
            }
        }
        add_sweep("diagonal-encoded", merged, " over k,m in {1,2}^2");
    }
    {
        SweepResult merged;
        for (int k = 1; k <= 2; ++k) {
            for (int m = 1; m <= 2; ++m) {
                DiagSweepConfig c;
                c.k = k;
                c.m = m;
                c.count = detail::scaled(40, opt.scale);
                c.seed = instance_seed(opt.seed, 200 + static_cast<std::uint64_t>(10 * k + m));
                c.fixed = true;
                c.jobs = opt.jobs;
                SweepResult r = diagonal_sweep(c);
                merged.total += r.total;
                merged.passed += r.passed;
                for (auto& f : r.failures) merged.failures.push_back(std::move(f));
            }
        }
        add_sweep("diagonal-fixed", merged, " over k,m in {1,2}^2");
    }
    {
        ClassificationReport r = classification_audit(3, 4);
        CriterionOutcome c;
        c.name = "simulator-classification";
        c.passed = r.ok();
        std::ostringstream s;
        s << r.checked << " formulas, k <= 3, m <= 4";
        if (!r.ok())
            s << "; first issue: k=" << r.issues[0].k << " m=" << r.issues[0].m
              << (r.issues[0].fixed ? " fixed: " : " encoded: ") << r.issues[0].detail;
        c.summary = s.str();
        out.push_back(std::move(c));
    }
    {
        CriterionOutcome c;
        c.name = "alternation-example";
        Formula phi = parse_formula(
            "mu X. p(2) | <b>_1 (nu Y. q(1) & nu Y2. (mu Z. Y2 | <a>_1 Z) & [b]_2 Y)");
        AlternationInfo info = classify(phi);
        std::ostringstream s;
        bool ok = true;
        auto expect = [&](const std::string& what, bool got) {
            if (!got) {
                ok = false;
                s << what << " wrong; ";
            }
        };
        expect("ad(X)=3", info.depth.at("X") == 3);
        expect("ad(Y)=2", info.depth.at("Y") == 2);
        expect("ad(Y2)=2", info.depth.at("Y2") == 2);
        expect("ad(Z)=1", info.depth.at("Z") == 1);
        expect("type (mu,nu,mu)",
               info.alternation_type ==
                   std::vector<FixKind>{FixKind::Mu, FixKind::Nu, FixKind::Mu});
        expect("in Sigma_3", info.in_sigma(3));
        expect("not in Pi_2", !info.in_pi(2));
        c.passed = ok;
        c.summary = ok ? "nested three-level formula matches the frozen table" : s.str();
        out.push_back(std::move(c));
    }
    {
        BisimSweepConfig c;
        c.count = detail::scaled(50, opt.scale);
        c.seed = instance_seed(opt.seed, 6);
        c.jobs = opt.jobs;
        add_sweep("bisimilarity-formula", bisim_sweep(c), " (all state pairs each)");
    }
    {
        NormalizeSweepConfig c;
        c.count = detail::scaled(200, opt.scale);
        c.seed = instance_seed(opt.seed, 7);
        c.jobs = opt.jobs;
        add_sweep("replacement-normalization", normalization_sweep(c), " (3 systems each)");
    }
    {
        GameOracleConfig c;
        c.count = detail::scaled(300, opt.scale);
        c.seed = instance_seed(opt.seed, 8);
        c.jobs = opt.jobs;
        add_sweep("parity-solver-oracle", game_oracle_sweep(c));
    }
    return out;
}

}  // namespace polymu
