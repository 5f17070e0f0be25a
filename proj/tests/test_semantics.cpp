// Relation containers, replacement application, and the fixpoint evaluator.
#include <catch2/catch_amalgamated.hpp>

#include "polymu/parser.hpp"
#include "polymu/semantics.hpp"

using namespace polymu;

TEST_CASE("tuple relation indexing round-trips") {
    TupleRelation r(3, 2);
    CHECK(r.states() == 3);
    CHECK(r.arity() == 2);
    CHECK(r.universe_size() == 9);
    CHECK(r.is_empty());

    r.insert({2, 1});
    CHECK(r.contains({2, 1}));
    CHECK_FALSE(r.contains({1, 2}));
    CHECK(r.count() == 1);
    CHECK(r.decode(r.index_of({2, 1})) == std::vector<int>{2, 1});

    std::vector<std::vector<int>> seen;
    r.insert({0, 0});
    r.for_each([&](const std::vector<int>& t) { seen.push_back(t); });
    CHECK(seen == std::vector<std::vector<int>>{{0, 0}, {2, 1}});

    CHECK_THROWS_AS(r.index_of({1}), std::invalid_argument);
    CHECK_THROWS_AS(r.index_of({3, 0}), std::invalid_argument);
}

TEST_CASE("set algebra on relations") {
    TupleRelation a(2, 2), b(2, 2);
    a.insert({0, 0});
    a.insert({1, 1});
    b.insert({1, 1});
    CHECK((a & b).count() == 1);
    CHECK((a | b).count() == 2);
    CHECK(b.subset_of(a));
    CHECK_FALSE(a.subset_of(b));
    CHECK(a.complement().count() == 2);
    CHECK((a | a.complement()) == TupleRelation::full_rel(2, 2));
    TupleRelation c(3, 2);
    CHECK_THROWS_AS(a |= c, std::invalid_argument);
}

TEST_CASE("universe size is capped") {
    CHECK(TupleRelation::checked_universe(2, 28) == (std::size_t{1} << 28));
    CHECK_THROWS_AS(TupleRelation::checked_universe(2, 29), std::invalid_argument);
    CHECK_THROWS_AS(TupleRelation::checked_universe(1024, 3), std::invalid_argument);
    CHECK_THROWS_AS(TupleRelation::checked_universe(0, 1), std::invalid_argument);
}

TEST_CASE("replacement application reads through kappa") {
    TupleRelation r(2, 2);
    r.insert({0, 1});
    TupleRelation swapped = apply_replacement(Replacement::make_swap(1, 2), r);
    CHECK(swapped.count() == 1);
    CHECK(swapped.contains({1, 0}));

    TupleRelation d(2, 2);
    d.insert({1, 1});
    // [2<-1]: position 1 reads pebble 2, so membership ignores the first slot.
    TupleRelation copied = apply_replacement(Replacement::make_copy(2, 1), d);
    CHECK(copied.count() == 2);
    CHECK(copied.contains({0, 1}));
    CHECK(copied.contains({1, 1}));

    CHECK_THROWS_AS(apply_replacement(Replacement::make_swap(1, 3), r),
                    std::invalid_argument);
}

namespace {

// 0 --a--> 1 --a--> 2, p on 2, q on 0; 2 is a dead end.
Lts chain3() {
    Lts lts(3);
    lts.add_label(2, "p");
    lts.add_label(0, "q");
    lts.add_transition(0, "a", 1);
    lts.add_transition(1, "a", 2);
    return lts;
}

}  // namespace

TEST_CASE("literals and boolean connectives") {
    Lts lts = chain3();
    CHECK(check(parse_formula("p(1)"), lts, {2}));
    CHECK_FALSE(check(parse_formula("p(1)"), lts, {0}));
    CHECK(check(parse_formula("~p(1)"), lts, {0}));
    CHECK(check(parse_formula("q(1) & p(2)"), lts, {0, 2}));
    CHECK_FALSE(check(parse_formula("q(1) & p(2)"), lts, {2, 2}));
    CHECK(check(parse_formula("q(1) | p(1)"), lts, {2}));
}

TEST_CASE("modalities move single positions") {
    Lts lts = chain3();
    CHECK(check(parse_formula("<a>_1 p(1)"), lts, {1}));
    CHECK_FALSE(check(parse_formula("<a>_1 p(1)"), lts, {0}));
    CHECK(check(parse_formula("<a>_2 p(2)"), lts, {0, 1}));
    // Boxes are vacuously true at dead ends, diamonds false.
    CHECK(check(parse_formula("[a]_1 q(1)"), lts, {2}));
    CHECK_FALSE(check(parse_formula("<a>_1 q(1)"), lts, {2}));
    // Unused action names behave like an empty edge relation.
    CHECK(check(parse_formula("[c]_1 p(1)"), lts, {0}));
    CHECK_FALSE(check(parse_formula("<c>_1 p(1)"), lts, {0}));
}

TEST_CASE("fixpoints compute reachability and invariance") {
    Lts lts = chain3();
    Formula reach = parse_formula("mu X. p(1) | <a>_1 X");
    CHECK(check(reach, lts, {0}));
    CHECK(check(reach, lts, {1}));
    CHECK(check(reach, lts, {2}));
    Formula safe = parse_formula("nu X. <a>_1 X");
    CHECK_FALSE(check(safe, lts, {0}));  // the chain ends

    Lts loop(2);
    loop.add_transition(0, "a", 1);
    loop.add_transition(1, "a", 0);
    CHECK(check(safe, loop, {0}));
    CHECK(check(parse_formula("nu X. <a>_1 {2<->1} X"), loop, {0, 1}));
    CHECK_FALSE(check(parse_formula("mu X. X"), loop, {0, 0}));
    CHECK(check(parse_formula("nu X. X"), loop, {0, 0}));
}

TEST_CASE("replacement operators rearrange the tuple before evaluating") {
    Lts lts = chain3();
    // {2<->1} p(1): after the swap, position 1 shows the old second pebble.
    CHECK(check(parse_formula("{2<->1} p(1)"), lts, {0, 2}));
    CHECK_FALSE(check(parse_formula("{2<->1} p(1)"), lts, {2, 0}));
    // {2<-1}: position 1 now reads pebble 2's state.
    CHECK(check(parse_formula("{2<-1} p(1)"), lts, {0, 2}));
    CHECK_FALSE(check(parse_formula("{2<-1} p(1) & q(1)"), lts, {1, 2}));
}

TEST_CASE("environments supply free variables") {
    Lts lts = chain3();
    Formula open = parse_formula("<a>_1 X");
    TupleRelation at2(3, 1);
    at2.insert({2});
    Environment rho;
    rho["X"] = at2;
    CHECK(check(open, lts, {1}, rho));
    CHECK_FALSE(check(open, lts, {0}, rho));
    // Shape mismatches are rejected.
    Environment bad;
    bad["X"] = TupleRelation(2, 1);
    CHECK_THROWS_AS(check(open, lts, {1}, bad), std::invalid_argument);
    // Free variables without a binding are an error.
    CHECK_THROWS_AS(check(open, lts, {1}), std::invalid_argument);
}

TEST_CASE("evaluation at arity above the formula's own") {
    Lts lts = chain3();
    TupleRelation rel = evaluate(parse_formula("p(1)"), lts, 2);
    CHECK(rel.arity() == 2);
    CHECK(rel.count() == 3);  // p holds at state 2, second position free
    CHECK(rel.contains({2, 0}));
    CHECK_FALSE(rel.contains({0, 2}));
    CHECK_THROWS_AS(check(parse_formula("p(2)"), lts, std::vector<int>{0}),
                    std::invalid_argument);
}

TEST_CASE("single-state convention fills the whole tuple") {
    Lts lts = chain3();
    CHECK(check(parse_formula("{2<->1} p(1) | p(2)"), lts, 2));
    CHECK_FALSE(check(parse_formula("q(1) & p(2)"), lts, 2));
}

TEST_CASE("evaluator is deterministic across shared structure") {
    Lts lts = chain3();
    Formula p = parse_formula("<a>_1 <a>_1 p(1)");
    Formula both = conj(p, p);  // one shared subtree, visited once
    CHECK(evaluate(both, lts, 1) == evaluate(p, lts, 1));
    CHECK(evaluate(p, lts, 1) == evaluate(p, lts, 1));
}
