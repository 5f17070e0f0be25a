// Fixed ten-name signature: marker-chain encodings, the uniform simulator,
// and the verdict XOR over the self-referential label stock.
#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "polymu/fixed_sig.hpp"
#include "polymu/generator.hpp"
#include "polymu/parser.hpp"

using namespace polymu;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string golden(const std::string& file) {
    std::ifstream in(std::string(POLYMU_GOLDEN_DIR) + "/" + file);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

DiagonalReport fixed_xor(const std::string& text, int k, int m) {
    Formula f = parse_formula(text);
    DiagonalReport r = diagonal_check_fixed(f, k, m);
    CAPTURE(text, k, m, r.phi_holds, r.Phi_holds);
    REQUIRE(r.ok());
    return r;
}

}  // namespace

TEST_CASE("the ten operator-kind names") {
    REQUIRE(kProp1.size() == 10);
    CHECK(prop1_index("pp") == 0);
    CHECK(prop1_index("pdot") == 9);
    CHECK(prop1_index("psw") == 8);
    CHECK(prop1_index("q0") == -1);
}

TEST_CASE("pebble shift stock") {
    CHECK(kappa_cycle_left(2).is_swap());
    CHECK(kappa_cycle_right(2) == kappa_cycle_left(2));
    CHECK_FALSE(kappa_cycle_left(3).is_simple());
    CHECK(kappa_cycle_left(3) ==
          Replacement::from_map({{1, 2}, {2, 3}, {3, 1}}));
    CHECK(kappa_sub_left(3).is_swap());
    CHECK_FALSE(kappa_sub_left(4).is_simple());
    for (int k = 2; k <= 5; ++k) {
        CHECK(Replacement::compose(kappa_cycle_left(k), kappa_cycle_right(k)).is_identity());
        CHECK(Replacement::compose(kappa_sub_left(k), kappa_sub_right(k)).is_identity());
    }
}

TEST_CASE("marker encoding of the one-binder loop") {
    Lts t = encode_lts_fixed(parse_formula("mu X. X"));
    REQUIRE(t.state_count() == 4);
    CHECK(t.labels_of(0) == std::vector<std::string>{"pfp"});
    CHECK(t.labels_of(1) == std::vector<std::string>{"pfp"});
    CHECK(t.labels_of(2) == std::vector<std::string>{"pdot"});
    CHECK(t.labels_of(3) == std::vector<std::string>{"pdot"});
    CHECK(t.successors(0, "a") == std::vector<int>{2});
    CHECK(t.successors(2, "a") == std::vector<int>{1});
    CHECK(t.successors(1, "a") == std::vector<int>{3});
    CHECK(t.successors(3, "a") == std::vector<int>{1});
    CHECK(serialize(t) == golden("fixed_mu_loop.lts"));
}

TEST_CASE("literal chains carry index and name offsets") {
    Lts t = encode_lts_fixed(parse_formula("pp(2) | pn(1)"));
    REQUIRE(t.state_count() == 7);
    CHECK(t.labels_of(1) == std::vector<std::string>{"pp"});
    // pp(2): name offset 0, so the chain has two states with the marker at
    // depth two and nothing behind it.
    CHECK(t.labels_of(3).empty());
    CHECK(t.labels_of(4) == std::vector<std::string>{"pdot"});
    CHECK(t.successors(4, "a").empty());
    // pn(1): name offset 1 extends the tail one past the marker.
    CHECK(t.labels_of(5) == std::vector<std::string>{"pdot"});
    CHECK(t.labels_of(6).empty());
    CHECK(t.successors(6, "a").empty());
}

TEST_CASE("swap and copy chains differ in the direction flag") {
    Lts t = encode_lts_fixed(parse_formula("{1<->2} pp(2)"));
    CHECK(t.labels_of(0) == std::vector<std::string>{"psw"});
    for (int g = 2; g <= 5; ++g)
        CHECK(t.labels_of(g) == std::vector<std::string>{"pdot"});
    CHECK(t.successors(5, "a") == std::vector<int>{1});
    CHECK(serialize(t) == golden("fixed_swap_host.lts"));

    Lts tc = encode_lts_fixed(parse_formula("{1<-2} pp(2)"));
    CHECK(tc.labels_of(0) == std::vector<std::string>{"prp"});
    CHECK(tc.labels_of(2) == std::vector<std::string>{"pdot"});
    CHECK(tc.labels_of(3) == std::vector<std::string>{"pdot"});
    CHECK(tc.labels_of(4).empty());  // reads outward: flag stays clear
    CHECK(tc.labels_of(5) == std::vector<std::string>{"pdot"});
    CHECK(tc.labels_of(6) == std::vector<std::string>{"pdot"});
    CHECK(tc.successors(6, "a") == std::vector<int>{1});

    Lts td = encode_lts_fixed(parse_formula("{2<-1} pp(1)"));
    CHECK(td.labels_of(4) == std::vector<std::string>{"pdot"});  // reads inward
}

TEST_CASE("encoder input validation") {
    CHECK_THROWS_WITH(encode_lts_fixed(parse_formula("<b>_1 pp(1)")),
                      ContainsSubstring("singleton action set"));
    CHECK_THROWS_WITH(encode_lts_fixed(parse_formula("{1<-2, 1<-3} pp(1)")),
                      ContainsSubstring("not a swap or a copy"));
}

TEST_CASE("uniform simulator audits") {
    for (int k = 1; k <= 3; ++k)
        for (int m = 1; m <= 3; ++m) {
            CAPTURE(k, m);
            Formula Phi = diagonal_formula_fixed(k, m);
            REQUIRE(Phi.is_closed());
            REQUIRE(Phi.arity() == k + 1);
            for (const auto& p : Phi.propositions()) REQUIRE(prop1_index(p) >= 0);
            for (const auto& a : Phi.actions()) REQUIRE(a == "a");
            AlternationInfo info = classify(Phi);
            REQUIRE(info.max_depth() == m);
            REQUIRE(info.pi_level == m);
            REQUIRE(info.sigma_level == m + 1);
            if (k <= 2)
                for (const auto& s : Phi.subformulas())
                    if (s.kind() == NodeKind::Repl) REQUIRE(s.kappa().is_simple());
            if (k <= 2 && m <= 2) REQUIRE(parse_formula(Phi.to_string()) == Phi);

            AlternationInfo dinfo = classify(diagonal_formula_fixed(k, m, true));
            REQUIRE(dinfo.sigma_level == m);
            REQUIRE(dinfo.pi_level == m + 1);
        }
    CHECK_THROWS_AS(diagonal_formula_fixed(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(diagonal_formula_fixed(1, 0), std::invalid_argument);
}

TEST_CASE("frozen verdict pairs over the fixed signature") {
    CHECK_FALSE(fixed_xor("mu X. X", 1, 1).phi_holds);
    CHECK(fixed_xor("nu X. X", 1, 2).phi_holds);
    CHECK_FALSE(fixed_xor("nu X. pp(1)", 1, 2).phi_holds);
    CHECK(fixed_xor("<a>_1 pdot(1)", 1, 1).phi_holds);
    CHECK(fixed_xor("<a>_1 pdot(1)", 2, 2).phi_holds);
    CHECK_FALSE(fixed_xor("{1<->2} pp(2)", 2, 1).phi_holds);
    CHECK_FALSE(fixed_xor("{1<->2} pdot(2)", 2, 1).phi_holds);
    CHECK_FALSE(fixed_xor("{1<-2} pp(1)", 2, 1).phi_holds);
    CHECK_FALSE(fixed_xor("{2<-1} pp(1)", 2, 1).phi_holds);
    CHECK_FALSE(fixed_xor("[a]_1 pn(1)", 2, 1).phi_holds);
    // The host labels satisfy literals of their own kind, so unfoldings can
    // terminate on a matching host.
    CHECK(fixed_xor("mu X. pp(1) | <a>_1 X", 1, 1).phi_holds);
    CHECK(fixed_xor("mu X. pdot(1) | <a>_1 X", 1, 1).phi_holds);
}

TEST_CASE("fixed checker input validation") {
    CHECK_THROWS_WITH(diagonal_check_fixed(parse_formula("q0(1)"), 1, 1),
                      ContainsSubstring("outside the fixed ten-name signature"));
    CHECK_THROWS_AS(diagonal_check_fixed(parse_formula("pp(2)"), 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_WITH(diagonal_check_fixed(parse_formula("nu X. X"), 1, 1),
                      ContainsSubstring("not in the requested class"));
}

TEST_CASE("random fixed-signature instances always disagree") {
    for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m)
            for (std::uint64_t seed = 0; seed < 20; ++seed)
                for (int d = 0; d < 2; ++d) {
                    GenConfig cfg;
                    cfg.arity = k;
                    cfg.alternation = m;
                    cfg.cls = d ? FormulaClass::Pi : FormulaClass::Sigma;
                    cfg.budget = 3 * m + 3 + static_cast<int>(seed % 4);
                    cfg.prop_names = {"pp", "pn", "pand", "pdot"};
                    cfg.act_names = {"a"};
                    cfg.seed = seed * 2654435761ull +
                               static_cast<std::uint64_t>(k * 31 + m * 7 + d);
                    Formula f = gen_formula(cfg);
                    Engine engine = seed % 9 == 4 ? Engine::Game : Engine::Naive;
                    CAPTURE(k, m, d, seed, f.to_string());
                    DiagonalReport r = diagonal_check_fixed(f, k, m, engine, d == 1);
                    REQUIRE(r.ok());
                }
}
