// Rewriting arbitrary replacements into chains of swaps and copies.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "polymu/normalize.hpp"
#include "polymu/parser.hpp"
#include "polymu/semantics.hpp"

using namespace polymu;

namespace {

Replacement compose_chain(const std::vector<Replacement>& chain) {
    Replacement acc;  // identity
    for (const auto& r : chain) acc = Replacement::compose(acc, r);
    return acc;
}

}  // namespace

TEST_CASE("simple and identity replacements decompose trivially") {
    CHECK(decompose_replacement(Replacement()).empty());
    Replacement sw = Replacement::make_swap(2, 4);
    CHECK(decompose_replacement(sw) == std::vector<Replacement>{sw});
    Replacement cp = Replacement::make_copy(1, 3);
    CHECK(decompose_replacement(cp) == std::vector<Replacement>{cp});
}

TEST_CASE("three-cycles split into adjacent transpositions") {
    Replacement cyc = Replacement::from_map({{1, 2}, {2, 3}, {3, 1}});
    std::vector<Replacement> chain = decompose_replacement(cyc);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == Replacement::make_swap(1, 2));
    CHECK(chain[1] == Replacement::make_swap(2, 3));
    CHECK(compose_chain(chain) == cyc);
}

TEST_CASE("collapsing maps factor into a permutation then copies") {
    Replacement merge = Replacement::from_map({{1, 2}, {2, 1}, {3, 1}});
    std::vector<Replacement> chain = decompose_replacement(merge);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == Replacement::make_swap(1, 2));
    CHECK(chain[1] == Replacement::make_copy(2, 3));
    CHECK(compose_chain(chain) == merge);
}

TEST_CASE("every decomposition is simple and composes back") {
    std::mt19937_64 rng(7);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int iter = 0; iter < 500; ++iter) {
        int k = pick(1, 6);
        std::map<int, int> m;
        for (int i = 1; i <= k; ++i)
            if (pick(0, 1)) m[i] = pick(1, k);
        Replacement kappa = Replacement::from_map(m);
        std::vector<Replacement> chain = decompose_replacement(kappa);
        for (const auto& r : chain) {
            CHECK(r.is_simple());
            CHECK_FALSE(r.is_identity());
        }
        CHECK(compose_chain(chain) == kappa);
    }
}

TEST_CASE("normalization rewrites formulas in place") {
    Replacement cyc = Replacement::from_map({{1, 2}, {2, 3}, {3, 1}});
    Formula phi = mu("X", disj(repl(cyc, var("X")), pos("p", 3)));
    CHECK_FALSE(is_normalized(phi));
    Formula psi = normalize_replacements(phi);
    CHECK(is_normalized(psi));
    CHECK(psi == mu("X", disj(repl(Replacement::make_swap(1, 2),
                                   repl(Replacement::make_swap(2, 3), var("X"))),
                              pos("p", 3))));
}

TEST_CASE("identity replacements disappear under normalization") {
    Formula phi = repl(Replacement(), pos("p", 1));
    CHECK_FALSE(is_normalized(phi));  // identity is not simple
    CHECK(normalize_replacements(phi) == pos("p", 1));
}

TEST_CASE("already-normalized formulas are untouched") {
    Formula phi = parse_formula("nu X. {1<->2} <a>_1 X & {3<-1} p(1)");
    CHECK(is_normalized(phi));
    CHECK(normalize_replacements(phi) == phi);
    CHECK(normalize_replacements(phi).to_string() == phi.to_string());
}

TEST_CASE("normalization preserves the denoted relation") {
    Replacement cyc = Replacement::from_map({{1, 3}, {2, 1}, {3, 2}});
    Formula phi = nu("X", conj(repl(cyc, dia("a", 1, var("X"))), pos("p", 2)));
    Formula psi = normalize_replacements(phi);
    REQUIRE(is_normalized(psi));

    Lts lts(3);
    lts.add_label(0, "p");
    lts.add_label(2, "p");
    lts.add_transition(0, "a", 1);
    lts.add_transition(1, "a", 0);
    lts.add_transition(1, "a", 2);
    lts.add_transition(2, "a", 2);
    CHECK(evaluate(phi, lts, 3) == evaluate(psi, lts, 3));
}
