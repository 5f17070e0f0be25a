// ============================================================================
//  polymu - workbench for arity-k relational fixpoint formulas
//
//  Subcommands wire the library into scriptable pipelines: evaluate formulas
//  on labelled transition systems (two independent engines), analyze
//  alternation structure, normalize replacements, run both self-application
//  encodings with their simulating formulas, decide bisimilarity, generate
//  seeded random instances, solve model-checking parity games, and run the
//  full acceptance self-check.
//
//  Exit codes: 0 success, 1 a boolean verdict came out false, 2 two
//  independent routes disagreed, 3 bad input (files, syntax, parameters).
// ============================================================================
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polymu/bisim.hpp"
#include "polymu/diagonal.hpp"
#include "polymu/fixed_sig.hpp"
#include "polymu/games.hpp"
#include "polymu/generator.hpp"
#include "polymu/normalize.hpp"
#include "polymu/parser.hpp"
#include "polymu/sweep.hpp"

namespace {

using namespace polymu;

constexpr int kExitFalse = 1;
constexpr int kExitDisagree = 2;
constexpr int kExitInput = 3;

// ---------------------------------------------------------------------------
//  Input helpers: every formula/system argument is a file path when such a
//  file exists, otherwise the argument text itself is parsed.
// ---------------------------------------------------------------------------

std::string slurp_or_self(const std::string& arg) {
    std::ifstream in(arg);
    if (!in.good()) {
        bool looks_like_path =
            arg.find('/') != std::string::npos ||
            (arg.size() > 4 && arg.compare(arg.size() - 4, 4, ".lts") == 0) ||
            (arg.size() > 3 && arg.compare(arg.size() - 3, 3, ".mu") == 0);
        if (looks_like_path)
            throw std::invalid_argument("cannot open file '" + arg + "'");
        return arg;
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Formula load_formula(const std::string& arg) { return parse_formula(slurp_or_self(arg)); }

Lts load_lts(const std::string& arg) { return parse_lts(slurp_or_self(arg)); }

Engine engine_from(const std::string& name) {
    return name == "game" ? Engine::Game : Engine::Naive;
}

std::string tuple_text(const std::vector<int>& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i)
        out += (i ? "," : "") + std::to_string(tuple[i]);
    return out + ")";
}

void require_under_cap(int k, int max_arity) {
    if (k > max_arity)
        throw std::invalid_argument(
            "tuple width " + std::to_string(k) + " exceeds the cap " +
            std::to_string(max_arity) +
            "; relations cost |S|^k, raise --max-arity to proceed anyway");
}

// The tuple a command plays at: the given one, or the initial state repeated
// once per formula position.
std::vector<int> effective_tuple(const Formula& phi, const Lts& lts,
                                 std::vector<int> tuple) {
    if (tuple.empty())
        tuple.assign(static_cast<std::size_t>(std::max(1, phi.arity())), lts.initial());
    return tuple;
}

int print_sweep(const std::string& head, const SweepResult& r, double ms) {
    std::printf("%s\n", head.c_str());
    std::printf("result: %s XOR pass (%.0f ms)\n", r.ratio().c_str(), ms);
    for (const auto& f : r.failures)
        std::printf("FAIL instance %d (seed %llu):\n%s\n", f.index,
                    static_cast<unsigned long long>(f.seed), f.detail.c_str());
    if (r.total > r.passed + static_cast<int>(r.failures.size()))
        std::printf("(%d further failures not shown)\n",
                    r.total - r.passed - static_cast<int>(r.failures.size()));
    return r.ok() ? 0 : kExitFalse;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---------------------------------------------------------------------------
//  check: evaluate a formula on a system at a state tuple.
// ---------------------------------------------------------------------------

int run_check(const std::string& formula_arg, const std::string& lts_arg,
              std::vector<int> tuple, const std::string& engine, bool both,
              int max_arity) {
    Formula phi = load_formula(formula_arg);
    Lts lts = load_lts(lts_arg);
    tuple = effective_tuple(phi, lts, tuple);
    require_under_cap(static_cast<int>(tuple.size()), max_arity);

    if (both) {
        bool naive = check(phi, lts, tuple);
        bool game = check_via_game(phi, lts, tuple);
        std::printf("naive: %s\n", naive ? "true" : "false");
        std::printf("game:  %s\n", game ? "true" : "false");
        if (naive != game) {
            std::fprintf(stderr, "error: the engines disagree at %s\n",
                         tuple_text(tuple).c_str());
            return kExitDisagree;
        }
        return naive ? 0 : kExitFalse;
    }
    bool verdict = engine_from(engine) == Engine::Naive ? check(phi, lts, tuple)
                                                        : check_via_game(phi, lts, tuple);
    std::printf("%s\n", verdict ? "true" : "false");
    return verdict ? 0 : kExitFalse;
}

// ---------------------------------------------------------------------------
//  analyze: alternation structure of a formula.
// ---------------------------------------------------------------------------

int run_analyze(const std::string& formula_arg) {
    Formula phi = load_formula(formula_arg);
    AlternationInfo info = classify(phi);
    std::printf("formula: %s\n", phi.to_string().c_str());
    std::printf("nodes: %d\n", phi.size());
    std::printf("arity: %d\n", phi.arity());
    std::printf("closed: %s\n", phi.is_closed() ? "yes" : "no");
    if (!info.type.empty()) {
        std::printf("binders:\n");
        for (const auto& [name, t] : info.type)
            std::printf("  %s: %s, depth %d, game priority %d\n", name.c_str(),
                        to_string(t).c_str(), info.depth.at(name),
                        game_priority(t, info.depth.at(name)));
    }
    std::printf("alternation type: %s\n", to_string(info.alternation_type).c_str());
    std::printf("sigma level: %d (in Sigma_m for all m >= %d)\n", info.sigma_level,
                info.sigma_level);
    std::printf("pi level: %d (in Pi_m for all m >= %d)\n", info.pi_level, info.pi_level);
    return 0;
}

// ---------------------------------------------------------------------------
//  normalize: rewrite every replacement into swaps and copies.
// ---------------------------------------------------------------------------

int run_normalize(const std::string& formula_arg) {
    Formula phi = load_formula(formula_arg);
    std::printf("%s\n", normalize_replacements(phi).to_string().c_str());
    return 0;
}

// ---------------------------------------------------------------------------
//  encode: a formula's syntax DAG as a transition system.
// ---------------------------------------------------------------------------

int run_encode(const std::string& formula_arg, bool fixed,
               const std::vector<std::string>& props) {
    Formula phi = load_formula(formula_arg);
    if (fixed) {
        if (!props.empty())
            throw std::invalid_argument("the fixed encoding admits no --props override");
        std::cout << serialize(encode_lts_fixed(phi));
    } else {
        std::cout << serialize(encode_lts(phi, props));
    }
    return 0;
}

// ---------------------------------------------------------------------------
//  diagonal: seeded random self-application sweeps.
// ---------------------------------------------------------------------------

int run_diagonal(const DiagSweepConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r = diagonal_sweep(cfg);
    std::ostringstream head;
    head << "diagonal sweep: k=" << cfg.k << " m=" << cfg.m << " signature="
         << (cfg.fixed ? "fixed" : "parameterized") << " count=" << cfg.count
         << " seed=" << cfg.seed;
    return print_sweep(head.str(), r, ms_since(t0));
}

// ---------------------------------------------------------------------------
//  diagcheck: both self-application verdicts for one formula.
// ---------------------------------------------------------------------------

int run_diagcheck(const std::string& formula_arg, int k, int m, bool fixed, bool dual,
                  const std::string& engine, const std::vector<std::string>& props,
                  int max_arity) {
    Formula phi = load_formula(formula_arg);
    require_under_cap(k + 1, max_arity);
    DiagonalReport r = fixed
                           ? diagonal_check_fixed(phi, k, m, engine_from(engine), dual)
                           : diagonal_check(phi, k, m, props, engine_from(engine), dual);
    std::printf("phi on its encoding:       %s\n", r.phi_holds ? "true" : "false");
    std::printf("simulator on the diagonal: %s\n", r.Phi_holds ? "true" : "false");
    std::printf("verdicts disagree: %s\n", r.ok() ? "yes" : "NO");
    return r.ok() ? 0 : kExitFalse;
}

// ---------------------------------------------------------------------------
//  bisim: formula route vs partition refinement.
// ---------------------------------------------------------------------------

int run_bisim(const std::string& lts_arg, std::vector<int> pair,
              const std::string& engine) {
    Lts lts = load_lts(lts_arg);
    if (lts.propositions().empty() && lts.actions().empty())
        std::fprintf(stderr,
                     "note: the system carries no labels and no actions; every "
                     "state is bisimilar to every other\n");
    Formula phi = bisim_formula(lts);
    std::vector<int> blocks = partition(lts);
    int n = lts.state_count();

    auto formula_route = [&](int s, int t) {
        if (engine_from(engine) == Engine::Game)
            return check_via_game(phi, lts, std::vector<int>{s, t});
        return check(phi, lts, std::vector<int>{s, t});
    };

    if (!pair.empty()) {
        int s = pair[0], t = pair[1];
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("--pair states must lie in [0, " +
                                        std::to_string(n) + ")");
        bool by_formula = formula_route(s, t);
        bool by_partition = blocks[static_cast<std::size_t>(s)] ==
                            blocks[static_cast<std::size_t>(t)];
        if (by_formula != by_partition) {
            std::fprintf(stderr,
                         "error: formula route says %s but partition refinement says "
                         "%s for %s\n",
                         by_formula ? "true" : "false", by_partition ? "true" : "false",
                         tuple_text(pair).c_str());
            return kExitDisagree;
        }
        std::printf("bisimilar %s: %s\n", tuple_text(pair).c_str(),
                    by_formula ? "true" : "false");
        return by_formula ? 0 : kExitFalse;
    }

    TupleRelation rel =
        engine_from(engine) == Engine::Naive ? evaluate(phi, lts, 2) : TupleRelation(n, 2);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            bool by_formula = engine_from(engine) == Engine::Naive
                                  ? rel.contains({s, t})
                                  : formula_route(s, t);
            bool by_partition = blocks[static_cast<std::size_t>(s)] ==
                                blocks[static_cast<std::size_t>(t)];
            if (by_formula != by_partition) {
                std::fprintf(stderr,
                             "error: formula route and partition refinement disagree "
                             "at (%d,%d)\n",
                             s, t);
                return kExitDisagree;
            }
        }

    std::printf("formula: %s\n", phi.to_string().c_str());
    int block_count = 0;
    for (int b : blocks) block_count = std::max(block_count, b + 1);
    std::printf("states: %d, blocks: %d\n", n, block_count);
    for (int b = 0; b < block_count; ++b) {
        std::printf("block %d:", b);
        for (int s = 0; s < n; ++s)
            if (blocks[static_cast<std::size_t>(s)] == b) std::printf(" %d", s);
        std::printf("\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------
//  gen: seeded random formulas or systems.
// ---------------------------------------------------------------------------

int run_gen(GenConfig cfg, int count, std::uint64_t seed, bool systems) {
    for (int i = 0; i < count; ++i) {
        cfg.seed = instance_seed(seed, i);
        if (systems) {
            std::printf("# instance %d of %d, seed %llu\n", i + 1, count,
                        static_cast<unsigned long long>(seed));
            std::cout << serialize(gen_lts(cfg)) << '\n';
        } else {
            std::printf("%s\n", gen_formula(cfg).to_string().c_str());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
//  solve-game: build and solve the model-checking parity game.
// ---------------------------------------------------------------------------

int run_solve_game(const std::string& formula_arg, const std::string& lts_arg,
                   std::vector<int> tuple, bool dump, int max_arity) {
    Formula phi = load_formula(formula_arg);
    Lts lts = load_lts(lts_arg);
    tuple = effective_tuple(phi, lts, tuple);
    require_under_cap(static_cast<int>(tuple.size()), max_arity);

    ModelCheckingGame mc = build_game(phi, lts, static_cast<int>(tuple.size()));
    GameSolution sol = solve_parity(mc.game);
    std::printf("positions: %d\n", mc.game.size());
    if (dump) {
        dump_game(mc, std::cout);
        std::printf("solution:\n");
        for (int v = 0; v < mc.game.size(); ++v) {
            auto uv = static_cast<std::size_t>(v);
            std::printf("%d won by %c", v, player_letter(sol.winner[uv]));
            if (sol.strategy[uv] >= 0) std::printf(", move to %d", sol.strategy[uv]);
            std::printf("\n");
        }
    }
    int root = mc.seed(tuple);
    bool holds = sol.winner[static_cast<std::size_t>(root)] == Player::Verifier;
    std::printf("winner at %s: %c (formula %s)\n", tuple_text(tuple).c_str(),
                player_letter(sol.winner[static_cast<std::size_t>(root)]),
                holds ? "holds" : "fails");
    return holds ? 0 : kExitFalse;
}

// ---------------------------------------------------------------------------
//  selftest: the acceptance self-check.
// ---------------------------------------------------------------------------

int run_selftest(const SelfCheckOptions& opt) {
    std::vector<CriterionOutcome> outcomes = run_selfcheck(opt);
    int failed = 0;
    for (const auto& o : outcomes) {
        std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                    o.summary.c_str());
        if (!o.passed) ++failed;
    }
    std::printf("%d/%d criteria passed\n", static_cast<int>(outcomes.size()) - failed,
                static_cast<int>(outcomes.size()));
    return failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for arity-k relational fixpoint formulas"};
    app.require_subcommand(1);
    int rc = 0;

    // check ------------------------------------------------------------------
    std::string check_formula, check_lts, check_engine = "naive";
    std::vector<int> check_tuple;
    bool check_both = false;
    int check_cap = 4;
    auto* check_cmd =
        app.add_subcommand("check", "evaluate a formula on a system at a state tuple");
    check_cmd->add_option("formula", check_formula, "formula file or text")->required();
    check_cmd->add_option("lts", check_lts, "system file or text")->required();
    check_cmd->add_option("tuple", check_tuple,
                          "state tuple (default: initial state at every position)");
    check_cmd->add_option("--engine", check_engine, "naive|game")
        ->check(CLI::IsMember({"naive", "game"}));
    check_cmd->add_flag("--both", check_both, "run both engines and compare");
    check_cmd->add_option("--max-arity", check_cap, "tuple width cap (default 4)");
    check_cmd->callback([&] {
        rc = run_check(check_formula, check_lts, check_tuple, check_engine, check_both,
                       check_cap);
    });

    // analyze ----------------------------------------------------------------
    std::string analyze_formula;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "print a formula's alternation structure");
    analyze_cmd->add_option("formula", analyze_formula, "formula file or text")->required();
    analyze_cmd->callback([&] { rc = run_analyze(analyze_formula); });

    // normalize ---------------------------------------------------------------
    std::string norm_formula;
    auto* norm_cmd = app.add_subcommand(
        "normalize", "rewrite every replacement into swaps and copies");
    norm_cmd->add_option("formula", norm_formula, "formula file or text")->required();
    norm_cmd->callback([&] { rc = run_normalize(norm_formula); });

    // encode -------------------------------------------------------------------
    std::string enc_formula;
    bool enc_fixed = false;
    std::vector<std::string> enc_props;
    auto* enc_cmd = app.add_subcommand(
        "encode", "encode a formula's syntax DAG as a transition system");
    enc_cmd->add_option("formula", enc_formula, "formula file or text")->required();
    enc_cmd->add_flag("--fixed", enc_fixed, "use the fixed ten-name signature");
    enc_cmd->add_option("--props", enc_props, "proposition order for the labels")
        ->delimiter(',');
    enc_cmd->callback([&] { rc = run_encode(enc_formula, enc_fixed, enc_props); });

    // diagonal -----------------------------------------------------------------
    DiagSweepConfig diag_cfg;
    auto* diag_cmd = app.add_subcommand(
        "diagonal", "random self-application sweeps: the two verdicts must differ");
    diag_cmd->add_option("--k", diag_cfg.k, "object arity (default 1)");
    diag_cmd->add_option("--m", diag_cfg.m, "alternation depth (default 1)");
    diag_cmd->add_option("--count", diag_cfg.count, "instances (default 100)");
    diag_cmd->add_option("--seed", diag_cfg.seed, "base seed (default 7)");
    diag_cmd->add_flag("--fixed", diag_cfg.fixed, "use the fixed ten-name signature");
    diag_cmd->add_option("--props", diag_cfg.props, "signature for the parameterized run")
        ->delimiter(',');
    diag_cmd->add_option("--game-stride", diag_cfg.game_stride,
                         "check every nth instance with the game engine (default 10)");
    diag_cmd->add_option("--jobs", diag_cfg.jobs, "worker threads (default: all cores)");
    diag_cmd->callback([&] { rc = run_diagonal(diag_cfg); });

    // diagcheck ------------------------------------------------------------------
    std::string dc_formula, dc_engine = "naive";
    int dc_k = 1, dc_m = 1, dc_cap = 4;
    bool dc_fixed = false, dc_dual = false;
    std::vector<std::string> dc_props;
    auto* dc_cmd = app.add_subcommand(
        "diagcheck", "run one formula through the self-application pipeline");
    dc_cmd->add_option("formula", dc_formula, "formula file or text")->required();
    dc_cmd->add_option("--k", dc_k, "object arity (default 1)");
    dc_cmd->add_option("--m", dc_m, "alternation depth (default 1)");
    dc_cmd->add_flag("--fixed", dc_fixed, "use the fixed ten-name signature");
    dc_cmd->add_flag("--dual", dc_dual, "admit the dual class instead");
    dc_cmd->add_option("--engine", dc_engine, "naive|game")
        ->check(CLI::IsMember({"naive", "game"}));
    dc_cmd->add_option("--props", dc_props, "signature for the parameterized run")
        ->delimiter(',');
    dc_cmd->add_option("--max-arity", dc_cap, "tuple width cap (default 4)");
    dc_cmd->callback([&] {
        rc = run_diagcheck(dc_formula, dc_k, dc_m, dc_fixed, dc_dual, dc_engine, dc_props,
                           dc_cap);
    });

    // bisim ------------------------------------------------------------------------
    std::string bisim_lts, bisim_engine = "naive";
    std::vector<int> bisim_pair;
    auto* bisim_cmd = app.add_subcommand(
        "bisim", "bisimilarity via the relational formula, cross-checked by "
                 "partition refinement");
    bisim_cmd->add_option("lts", bisim_lts, "system file or text")->required();
    bisim_cmd->add_option("--pair", bisim_pair, "two states to compare")
        ->expected(2);
    bisim_cmd->add_option("--engine", bisim_engine, "naive|game")
        ->check(CLI::IsMember({"naive", "game"}));
    bisim_cmd->callback([&] { rc = run_bisim(bisim_lts, bisim_pair, bisim_engine); });

    // gen ----------------------------------------------------------------------------
    GenConfig gen_cfg;
    int gen_count = 1;
    std::uint64_t gen_seed = 1;
    bool gen_systems = false, gen_raw = false, gen_nonsimple = false;
    std::string gen_class = "sigma";
    auto* gen_cmd =
        app.add_subcommand("gen", "generate seeded random formulas or systems");
    gen_cmd->add_option("--count", gen_count, "instances (default 1)");
    gen_cmd->add_option("--seed", gen_seed, "base seed (default 1)");
    gen_cmd->add_option("--arity", gen_cfg.arity, "position bound (default 1)");
    gen_cmd->add_option("--alternation", gen_cfg.alternation,
                        "alternation depth (default 0)");
    gen_cmd->add_option("--class", gen_class, "sigma|pi (default sigma)")
        ->check(CLI::IsMember({"sigma", "pi"}));
    gen_cmd->add_option("--budget", gen_cfg.budget, "node budget (default 8)");
    gen_cmd->add_option("--states", gen_cfg.states, "system size bound (default 4)");
    gen_cmd->add_option("--props", gen_cfg.prop_names, "proposition names")
        ->delimiter(',');
    gen_cmd->add_option("--acts", gen_cfg.act_names, "action names")->delimiter(',');
    gen_cmd->add_flag("--lts", gen_systems, "emit systems instead of formulas");
    gen_cmd->add_flag("--raw-replacements", gen_raw,
                      "allow non-simple replacements in the output");
    gen_cmd->add_flag("--force-nonsimple", gen_nonsimple,
                      "guarantee at least one non-simple replacement");
    gen_cmd->callback([&] {
        gen_cfg.cls = gen_class == "pi" ? FormulaClass::Pi : FormulaClass::Sigma;
        gen_cfg.normalized = !(gen_raw || gen_nonsimple);
        gen_cfg.force_nonsimple = gen_nonsimple;
        rc = run_gen(gen_cfg, gen_count, gen_seed, gen_systems);
    });

    // solve-game -------------------------------------------------------------------
    std::string sg_formula, sg_lts;
    std::vector<int> sg_tuple;
    bool sg_dump = false;
    int sg_cap = 4;
    auto* sg_cmd = app.add_subcommand(
        "solve-game", "build and solve the model-checking parity game");
    sg_cmd->add_option("formula", sg_formula, "formula file or text")->required();
    sg_cmd->add_option("lts", sg_lts, "system file or text")->required();
    sg_cmd->add_option("tuple", sg_tuple,
                       "state tuple (default: initial state at every position)");
    sg_cmd->add_flag("--dump", sg_dump, "print every position and the solution");
    sg_cmd->add_option("--max-arity", sg_cap, "tuple width cap (default 4)");
    sg_cmd->callback(
        [&] { rc = run_solve_game(sg_formula, sg_lts, sg_tuple, sg_dump, sg_cap); });

    // selftest ------------------------------------------------------------------------
    SelfCheckOptions st_opt;
    auto* st_cmd = app.add_subcommand(
        "selftest", "run the full acceptance self-check, one line per criterion");
    st_cmd->add_option("--seed", st_opt.seed, "base seed (default 2026)");
    st_cmd->add_option("--scale", st_opt.scale, "instance count multiplier (default 1)");
    st_cmd->add_option("--jobs", st_opt.jobs, "worker threads (default: all cores)");
    st_cmd->callback([&] { rc = run_selftest(st_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return rc;
}
