// Surface syntax: precedence, round trips, and rejection of malformed input.
#include <catch2/catch_amalgamated.hpp>

#include "polymu/parser.hpp"

using namespace polymu;

static std::string round_trip(const std::string& src) {
    Formula f = parse_formula(src);
    std::string once = f.to_string();
    Formula g = parse_formula(once);
    REQUIRE(f == g);
    REQUIRE(g.to_string() == once);
    return once;
}

TEST_CASE("printer output reparses to the same formula") {
    for (const char* src : {
             "p(1)",
             "~q(3)",
             "p(1) & q(2) | r(1)",
             "<a>_1 [b]_2 p(1)",
             "nu X. <a>_1 {2<->1} X",
             "mu X. p(2) | <b>_1 (nu Y. q(1) & nu Y2. (mu Z. Y2 | <a>_1 Z) & [b]_2 Y)",
             "p(1) -> q(2) | r(1)",
             "(mu X. X) & (nu Y. Y)",
             "{3<-1, 2<->4} (p(1) | ~q(2))",
             "mu X. nu Y. X & Y | <a>_2 X",
         })
        round_trip(src);
}

TEST_CASE("conjunction binds tighter than disjunction") {
    Formula f = parse_formula("p(1) & q(1) | r(1)");
    CHECK(f.kind() == NodeKind::Or);
    Formula g = parse_formula("p(1) | q(1) & r(1)");
    CHECK(g.kind() == NodeKind::Or);
    CHECK(g == disj(pos("p", 1), conj(pos("q", 1), pos("r", 1))));
}

TEST_CASE("binders scope maximally to the right") {
    Formula f = parse_formula("mu X. X | p(1)");
    CHECK(f == mu("X", disj(var("X"), pos("p", 1))));
    Formula g = parse_formula("p(1) & mu X. X | q(1)");
    CHECK(g == conj(pos("p", 1), mu("X", disj(var("X"), pos("q", 1)))));
}

TEST_CASE("guard arrow desugars to negated-literal disjunction") {
    CHECK(parse_formula("p(1) -> q(2)") == implies(pos("p", 1), pos("q", 2)));
    CHECK(parse_formula("~p(1) -> q(2)") == implies(neg("p", 1), pos("q", 2)));
}

TEST_CASE("replacement syntax covers swaps, copies, and lists") {
    CHECK(parse_formula("{1<->2} p(1)") ==
          repl(Replacement::make_swap(1, 2), pos("p", 1)));
    CHECK(parse_formula("{3<-1} p(1)") ==
          repl(Replacement::make_copy(3, 1), pos("p", 1)));
    Formula lst = parse_formula("{3<-1, 2<->4} p(4)");
    CHECK(lst.kappa() == Replacement::from_map({{1, 3}, {2, 4}, {4, 2}}));
}

TEST_CASE("modalities need subscripts and close properly") {
    CHECK_THROWS_AS(parse_formula("<a> p(1)"), parse_error);
    CHECK_THROWS_AS(parse_formula("<a>_0 p(1)"), parse_error);
    CHECK_THROWS_AS(parse_formula("[a]_ p(1)"), parse_error);
    CHECK_THROWS_AS(parse_formula("<a_1 p(1)"), parse_error);
}

TEST_CASE("malformed input is rejected with parse_error") {
    for (const char* bad : {
             "",
             "p",
             "p()",
             "p(0)",
             "mu . X",
             "mu X X",
             "p(1) |",
             "(p(1)",
             "{1<-} p(1)",
             "{} p(1)",
             "p(1) q(1)",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_formula(bad), parse_error);
    }
    // Open formulas are legal input; closedness is the caller's concern.
    CHECK_FALSE(parse_formula("mu X. Y").is_closed());
}

TEST_CASE("duplicate binder names error unless renaming is requested") {
    CHECK_THROWS_AS(parse_formula("mu X. (nu X. X) | X"), parse_error);
    ParseOptions opt;
    opt.rename_duplicate_binders = true;
    Formula f = parse_formula("mu X. (nu X. X) | X", opt);
    CHECK(f.is_closed());
    CHECK(f.bound_variables().size() == 2);
}

TEST_CASE("longest-match replacement arrows") {
    // "<->" must not lex as "<-" followed by ">".
    Formula f = parse_formula("{1<->3} p(3)");
    CHECK(f.kappa().is_swap());
    Formula g = parse_formula("{1<-3} p(3)");
    CHECK(g.kappa().is_copy());
}
