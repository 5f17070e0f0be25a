// Random instance generation: every output must land exactly in the
// requested class with depth-compatible binder types, inside the budget.
#include <catch2/catch_amalgamated.hpp>

#include "polymu/generator.hpp"
#include "polymu/parser.hpp"

using namespace polymu;

TEST_CASE("generated formulas hit the requested class exactly") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        for (int m = 0; m <= 3; ++m) {
            for (int clsi = 0; clsi < 2; ++clsi) {
                GenConfig cfg;
                cfg.arity = 1 + static_cast<int>(seed % 3);
                cfg.alternation = m;
                cfg.cls = clsi == 0 ? FormulaClass::Sigma : FormulaClass::Pi;
                cfg.budget = 3 * m + 2 + static_cast<int>(seed % 7);
                cfg.seed = seed * 31 + static_cast<std::uint64_t>(m * 2 + clsi);
                Formula f = gen_formula(cfg);
                CAPTURE(seed, m, clsi);

                REQUIRE(f == gen_formula(cfg));  // deterministic
                REQUIRE(f.is_closed());
                REQUIRE(f.arity() <= cfg.arity);
                REQUIRE(f.size() <= cfg.budget);
                AlternationInfo info = classify(f);
                REQUIRE(info.max_depth() == m);
                if (m > 0) {
                    if (clsi == 0) {
                        REQUIRE(info.sigma_level == m);
                        REQUIRE(info.pi_level == m + 1);
                    } else {
                        REQUIRE(info.pi_level == m);
                        REQUIRE(info.sigma_level == m + 1);
                    }
                    for (const auto& [v, t] : info.type) {
                        FixKind want = type_from_depth(m, info.depth.at(v));
                        if (clsi == 1) want = flip(want);
                        REQUIRE(t == want);
                    }
                } else {
                    REQUIRE(info.sigma_level == 0);
                    REQUIRE(info.pi_level == 0);
                }
                REQUIRE(parse_formula(f.to_string()) == f);
                ++checked;
            }
        }
    }
    CHECK(checked == 120 * 4 * 2);
}

TEST_CASE("name overrides control the signature") {
    GenConfig cfg;
    cfg.arity = 2;
    cfg.alternation = 1;
    cfg.budget = 12;
    cfg.prop_names = {"alpha", "beta"};
    cfg.act_names = {"step"};
    cfg.seed = 5;
    Formula f = gen_formula(cfg);
    for (const auto& p : f.propositions())
        CHECK((p == "alpha" || p == "beta"));
    for (const auto& a : f.actions()) CHECK(a == "step");
}

TEST_CASE("forced non-simple replacements appear") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenConfig cfg;
        cfg.arity = 3;
        cfg.alternation = 1;
        cfg.budget = 12;
        cfg.seed = seed;
        cfg.normalized = false;
        cfg.force_nonsimple = true;
        Formula f = gen_formula(cfg);
        bool has = false;
        for (const auto& sub : f.subformulas())
            if (sub.kind() == NodeKind::Repl && !sub.kappa().is_simple()) has = true;
        CAPTURE(seed);
        REQUIRE(has);
    }
}

TEST_CASE("normalized output uses only simple replacements") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        GenConfig cfg;
        cfg.arity = 3;
        cfg.alternation = 2;
        cfg.budget = 14;
        cfg.seed = seed;
        Formula f = gen_formula(cfg);
        for (const auto& sub : f.subformulas())
            if (sub.kind() == NodeKind::Repl) REQUIRE(sub.kappa().is_simple());
    }
}

TEST_CASE("impossible configurations are rejected") {
    GenConfig narrow;
    narrow.arity = 2;
    narrow.force_nonsimple = true;
    CHECK_THROWS_AS(gen_formula(narrow), std::invalid_argument);

    GenConfig tight;
    tight.alternation = 3;
    tight.budget = 5;
    CHECK_THROWS_AS(gen_formula(tight), std::invalid_argument);

    GenConfig zero;
    zero.arity = 0;
    CHECK_THROWS_AS(gen_formula(zero), std::invalid_argument);
}

TEST_CASE("generated systems are reachable and bounded") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenConfig cfg;
        cfg.states = 1 + static_cast<int>(seed % 5);
        cfg.seed = seed;
        Lts l = gen_lts(cfg);
        CAPTURE(seed);
        REQUIRE(l == gen_lts(cfg));
        REQUIRE(l.state_count() <= cfg.states);
        std::vector<int> stack{l.initial()};
        std::vector<bool> seen(static_cast<std::size_t>(l.state_count()), false);
        seen[static_cast<std::size_t>(l.initial())] = true;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (const auto& a : l.actions())
                for (int t : l.successors(s, a))
                    if (!seen[static_cast<std::size_t>(t)]) {
                        seen[static_cast<std::size_t>(t)] = true;
                        stack.push_back(t);
                    }
        }
        for (bool b : seen) REQUIRE(b);
    }
}

TEST_CASE("formula and system derive from the same seed independently") {
    GenConfig cfg;
    cfg.arity = 2;
    cfg.alternation = 1;
    cfg.budget = 8;
    cfg.states = 4;
    cfg.seed = 99;
    Formula f1 = gen_formula(cfg);
    Lts l1 = gen_lts(cfg);
    // Generating in the other order changes nothing.
    Lts l2 = gen_lts(cfg);
    Formula f2 = gen_formula(cfg);
    CHECK(f1 == f2);
    CHECK(l1 == l2);
}
