// Bisimilarity both ways: the arity-2 characteristic formula and partition
// refinement must agree.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polymu/bisim.hpp"
#include "polymu/generator.hpp"
#include "polymu/semantics.hpp"

using namespace polymu;

TEST_CASE("formula shape") {
    Formula phi = bisim_formula({"p"}, {"a"});
    CHECK(phi.kind() == NodeKind::Nu);
    CHECK(phi.arity() == 2);
    CHECK(phi.is_closed());
    CHECK(phi.to_string() ==
          "nu X. (~p(1) | p(2)) & [a]_1 <a>_2 X & {1<->2} X");
}

TEST_CASE("empty alphabets degenerate to label comparison") {
    Formula phi = bisim_formula({}, {});
    CHECK(phi.arity() == 2);
    Lts lts(2);
    lts.add_label(0, "p");
    // No propositions are passed to the formula, so everything is related.
    TupleRelation rel = evaluate(phi, lts, 2);
    CHECK(rel.count() == 4);
    // The partition still distinguishes by label.
    CHECK(partition(lts) == std::vector<int>{0, 1});
}

TEST_CASE("unrolled loops are bisimilar") {
    // 0 and 1 loop on a; 2 reaches a loop; all unlabeled: everything merges.
    Lts lts(3);
    lts.add_transition(0, "a", 0);
    lts.add_transition(1, "a", 1);
    lts.add_transition(2, "a", 1);
    CHECK(partition(lts) == std::vector<int>{0, 0, 0});
    CHECK(bisimilar(lts, 0, 2));
    TupleRelation rel = evaluate(bisim_formula(lts), lts, 2);
    CHECK(rel.count() == 9);
}

TEST_CASE("labels split blocks") {
    Lts lts(3);
    lts.add_label(1, "p");
    lts.add_transition(0, "a", 1);
    lts.add_transition(2, "a", 1);
    CHECK(partition(lts) == std::vector<int>{0, 1, 0});
    CHECK(bisimilar(lts, 0, 2));
    CHECK_FALSE(bisimilar(lts, 0, 1));
    CHECK_THROWS_AS(bisimilar(lts, 0, 3), lts_error);
}

TEST_CASE("branching structure splits blocks") {
    // 0 can reach both a p-state and a plain state on a; 3 only the p-state.
    Lts lts(5);
    lts.add_label(1, "p");
    lts.add_label(4, "p");
    lts.add_transition(0, "a", 1);
    lts.add_transition(0, "a", 2);
    lts.add_transition(3, "a", 4);
    auto block = partition(lts);
    CHECK(block[1] == block[4]);  // both p-labeled dead ends
    CHECK(block[2] != block[1]);
    CHECK_FALSE(bisimilar(lts, 0, 3));

    Formula phi = bisim_formula(lts);
    TupleRelation rel = evaluate(phi, lts, 2);
    for (int s = 0; s < 5; ++s)
        for (int t = 0; t < 5; ++t)
            CHECK(rel.contains({s, t}) == (block[static_cast<std::size_t>(s)] ==
                                           block[static_cast<std::size_t>(t)]));
}

TEST_CASE("deterministic vs nondeterministic choice") {
    // A state with two distinct a-moves vs one with a single move to a state
    // that can do both behaviours is the classic non-bisimilar pair.
    Lts lts(7);
    // left: 0 -a-> 1 -b-> 2 ; 0 -a-> 3 -c-> 4
    lts.add_transition(0, "a", 1);
    lts.add_transition(1, "b", 2);
    lts.add_transition(0, "a", 3);
    lts.add_transition(3, "c", 4);
    // right: 5 -a-> 6 ; 6 -b-> 2 ; 6 -c-> 4
    lts.add_transition(5, "a", 6);
    lts.add_transition(6, "b", 2);
    lts.add_transition(6, "c", 4);
    CHECK_FALSE(bisimilar(lts, 0, 5));
    TupleRelation rel = evaluate(bisim_formula(lts), lts, 2);
    CHECK_FALSE(rel.contains({0, 5}));
    CHECK_FALSE(rel.contains({5, 0}));
    CHECK(rel.contains({2, 4}));  // both dead ends, same labels
}

TEST_CASE("formula agrees with refinement on random systems") {
    std::mt19937_64 rng(321);
    for (int iter = 0; iter < 25; ++iter) {
        GenConfig g;
        g.states = 6;
        g.prop_count = 2;
        g.act_count = 2;
        g.seed = rng();
        Lts lts = gen_lts(g);
        auto block = partition(lts);
        TupleRelation rel = evaluate(bisim_formula(lts), lts, 2);
        for (int s = 0; s < lts.state_count(); ++s)
            for (int t = 0; t < lts.state_count(); ++t) {
                CAPTURE(iter, s, t);
                REQUIRE(rel.contains({s, t}) ==
                        (block[static_cast<std::size_t>(s)] ==
                         block[static_cast<std::size_t>(t)]));
            }
    }
}
