// Formula and replacement value semantics: builders, cached structure,
// replacement algebra, and the printer.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "polymu/formula.hpp"
#include "polymu/semantics.hpp"

using namespace polymu;

TEST_CASE("replacement recognition and accessors") {
    Replacement id;
    CHECK(id.is_identity());
    CHECK_FALSE(id.is_simple());
    CHECK(id.apply(3) == 3);
    CHECK(id.code().empty());

    Replacement sw = Replacement::make_swap(1, 3);
    CHECK(sw.is_swap());
    CHECK_FALSE(sw.is_copy());
    CHECK(sw.is_simple());
    CHECK(sw.apply(1) == 3);
    CHECK(sw.apply(3) == 1);
    CHECK(sw.apply(2) == 2);
    CHECK(sw.swap_pair() == std::pair<int, int>{1, 3});
    CHECK(sw.to_text() == "1<->3");
    CHECK(sw.code() == "3c1_1c3");

    Replacement cp = Replacement::make_copy(3, 1);
    CHECK(cp.is_copy());
    CHECK_FALSE(cp.is_swap());
    CHECK(cp.apply(1) == 3);
    CHECK(cp.apply(3) == 3);
    CHECK(cp.copy_pair() == std::pair<int, int>{3, 1});
    CHECK(cp.to_text() == "3<-1");
    CHECK(cp.code() == "3c1");

    CHECK_THROWS_AS(Replacement::make_swap(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(Replacement::make_copy(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(sw.copy_pair(), std::logic_error);
    CHECK_THROWS_AS(cp.swap_pair(), std::logic_error);

    // Identity entries are dropped at construction.
    Replacement same = Replacement::from_map({{1, 1}, {2, 3}, {3, 2}});
    CHECK(same == Replacement::make_swap(2, 3));

    // A three-cycle is almost-identity but not simple.
    Replacement cyc = Replacement::from_map({{1, 2}, {2, 3}, {3, 1}});
    CHECK_FALSE(cyc.is_simple());
    CHECK_FALSE(cyc.is_identity());
    CHECK(cyc.support_max() == 3);
}

TEST_CASE("replacement composition is function composition") {
    Replacement outer = Replacement::make_swap(1, 2);
    Replacement inner = Replacement::make_copy(3, 1);
    Replacement both = Replacement::compose(outer, inner);
    for (int i = 1; i <= 4; ++i) CHECK(both.apply(i) == outer.apply(inner.apply(i)));

    // Nested operators agree with the composed operator on a non-vacuous
    // relation (preimage reading on a concrete tuple set).
    TupleRelation r(3, 3);
    r.insert({0, 1, 2});
    r.insert({2, 0, 1});
    auto lhs = apply_replacement(outer, apply_replacement(inner, r));
    auto rhs = apply_replacement(both, r);
    CHECK(lhs == rhs);
}

TEST_CASE("composition law on random relations") {
    std::mt19937_64 rng(99);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int iter = 0; iter < 200; ++iter) {
        int k = pick(1, 4);
        int n = pick(1, 3);
        auto random_repl = [&]() {
            std::map<int, int> m;
            for (int i = 1; i <= k; ++i)
                if (pick(0, 1)) m[i] = pick(1, k);
            return Replacement::from_map(m);
        };
        Replacement f = random_repl(), g = random_repl();
        TupleRelation r(n, k);
        for (std::size_t t = 0; t < r.universe_size(); ++t)
            if (pick(0, 1)) r.set(t);
        CHECK(apply_replacement(f, apply_replacement(g, r)) ==
              apply_replacement(Replacement::compose(f, g), r));
    }
}

TEST_CASE("formula builders cache size, arity, and variables") {
    Formula f = mu("X", disj(pos("p", 2), dia("a", 1, var("X"))));
    CHECK(f.kind() == NodeKind::Mu);
    CHECK(f.arity() == 2);
    CHECK(f.size() == 5);
    CHECK(f.is_closed());
    CHECK(f.bound_variables() == std::vector<std::string>{"X"});
    CHECK(f.free_variables().empty());

    Formula open = conj(var("Y"), neg("q", 1));
    CHECK_FALSE(open.is_closed());
    CHECK(open.free_variables() == std::vector<std::string>{"Y"});

    CHECK(f.propositions() == std::vector<std::string>{"p"});
    CHECK(f.actions() == std::vector<std::string>{"a"});
}

TEST_CASE("structural equality is independent of shared subtrees") {
    Formula a = conj(pos("p", 1), pos("p", 1));
    Formula p = pos("p", 1);
    Formula b = conj(p, p);
    CHECK(a == b);
    CHECK(a.to_string() == b.to_string());
    CHECK(conj(pos("p", 1), pos("q", 1)) != a);
}

TEST_CASE("duplicate binder names are rejected at build time") {
    CHECK_THROWS_AS(mu("X", disj(var("X"), mu("X", var("X")))), std::invalid_argument);
    CHECK_THROWS_AS(conj(mu("X", var("X")), nu("X", var("X"))), std::invalid_argument);
    CHECK_NOTHROW(conj(mu("X", var("X")), nu("Y", var("Y"))));
}

TEST_CASE("index and name validation") {
    CHECK_THROWS_AS(pos("p", 0), std::invalid_argument);
    CHECK_THROWS_AS(dia("a", -1, pos("p", 1)), std::invalid_argument);
    CHECK_THROWS_AS(Replacement::from_map({{0, 1}}), std::invalid_argument);
}

TEST_CASE("printer emits the surface syntax") {
    CHECK(pos("p", 2).to_string() == "p(2)");
    CHECK(neg("p", 1).to_string() == "~p(1)");
    CHECK(dia("a", 1, pos("p", 1)).to_string() == "<a>_1 p(1)");
    CHECK(box("b", 2, var("X")).to_string() == "[b]_2 X");
    CHECK(repl(Replacement::make_swap(1, 2), pos("p", 1)).to_string() == "{1<->2} p(1)");
    CHECK(mu("X", disj(pos("p", 1), var("X"))).to_string() == "mu X. p(1) | X");
    CHECK(implies(pos("p", 1), pos("q", 1)).to_string() == "~p(1) | q(1)");
}

TEST_CASE("subformulas deduplicate structurally") {
    Formula f = disj(conj(pos("p", 1), pos("p", 1)), pos("p", 1));
    auto subs = f.subformulas();
    // or-node, and-node, and one shared literal
    CHECK(subs.size() == 3);
}
