#include <doctest.h>

#include <random>

#include "inq/formula.hpp"
#include "inq/fuzz.hpp"

using namespace inq;

namespace {
Signature pq() { return Signature({"p", "q"}); }
}

TEST_CASE("parsing maps surface syntax onto the core constructors") {
    Signature sig = pq();
    Formula p = Formula::atom(0);
    Formula q = Formula::atom(1);

    CHECK(parse("p -> bot", sig) == Formula::implies(p, Formula::bottom()));
    CHECK(parse("?p", sig) == Formula::inq_or(p, Formula::implies(p, Formula::bottom())));
    CHECK(parse("<> p", sig) ==
          Formula::implies(Formula::box(Formula::implies(p, Formula::bottom())),
                           Formula::bottom()));
    CHECK(parse("p & q", sig) == Formula::conj(p, q));
    CHECK(parse("p vv q", sig) == Formula::inq_or(p, q));
    CHECK(parse("[] p", sig) == Formula::box(p));
    CHECK(parse("[+] p", sig) == Formula::box_plus(p));
}

TEST_CASE("desugaring identities hold syntactically") {
    Signature sig = pq();
    CHECK(parse("~p", sig) == parse("p -> bot", sig));
    CHECK(parse("p \\/ q", sig) == parse("~(~p & ~q)", sig));
    CHECK(parse("<>p", sig) == parse("~[]~p", sig));
    CHECK(parse("top", sig) == parse("bot -> bot", sig));
    CHECK(parse("?p", sig) == parse("p vv ~p", sig));
}

TEST_CASE("precedence and associativity") {
    Signature sig({"p", "q", "r"});
    Formula p = Formula::atom(0), q = Formula::atom(1), r = Formula::atom(2);

    CHECK(parse("p -> q -> r", sig) == Formula::implies(p, Formula::implies(q, r)));
    CHECK(parse("p & q vv r", sig) == Formula::inq_or(Formula::conj(p, q), r));
    CHECK(parse("p vv q -> r", sig) == Formula::implies(Formula::inq_or(p, q), r));
    CHECK(parse("~[]p & q", sig) == Formula::conj(Formula::neg(Formula::box(p)), q));
    CHECK(parse("p & q & r", sig) == Formula::conj(Formula::conj(p, q), r));
    CHECK(parse("p \\/ q -> r", sig) ==
          Formula::implies(Formula::classical_or(p, q), r));
}

TEST_CASE("parse errors carry a position") {
    Signature sig = pq();
    CHECK_THROWS_AS(parse("p ->", sig), ParseError);
    CHECK_THROWS_AS(parse("(p & q", sig), ParseError);
    CHECK_THROWS_AS(parse("p q", sig), ParseError);
    CHECK_THROWS_AS(parse("", sig), ParseError);
    try {
        parse("p & unknown_prop", sig);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
        CHECK(std::string(e.what()).find("unknown_prop") != std::string::npos);
    }
}

TEST_CASE("open-signature parsing registers propositions in order") {
    Signature sig;
    Formula f = parse_extend("b -> a vv b", sig);
    REQUIRE(sig.size() == 2);
    CHECK(sig.name(0) == "b");
    CHECK(sig.name(1) == "a");
    CHECK(f == Formula::implies(Formula::atom(0),
                                Formula::inq_or(Formula::atom(1), Formula::atom(0))));
}

TEST_CASE("signatures reject duplicates") {
    CHECK_THROWS_AS(Signature({"p", "p"}), std::invalid_argument);
}

TEST_CASE("flatness grade follows the four clauses") {
    Signature sig = pq();
    CHECK(flatness_grade(parse("p", sig)) == 0);
    CHECK(flatness_grade(parse("bot", sig)) == 0);
    CHECK(flatness_grade(parse("[] (p vv q)", sig)) == 0);
    CHECK(flatness_grade(parse("[+] (p vv q)", sig)) == 0);
    CHECK(flatness_grade(parse("?p", sig)) == 1);
    CHECK(flatness_grade(parse("(p vv q) -> (p vv (q vv p))", sig)) == 2);
    CHECK(flatness_grade(parse("(p vv q) & ?p", sig)) == 1);
    CHECK(flatness_grade(parse("p vv (q vv p)", sig)) == 2);
}

TEST_CASE("modal depth counts box nesting only") {
    Signature sig = pq();
    CHECK(modal_depth(parse("p", sig)) == 0);
    CHECK(modal_depth(parse("[] p", sig)) == 1);
    CHECK(modal_depth(parse("[+] [] p", sig)) == 2);
    CHECK(modal_depth(parse("?(p & q)", sig)) == 0);
    CHECK(modal_depth(parse("<> p", sig)) == 1);
}

TEST_CASE("printing uses minimal parentheses") {
    Signature sig = pq();
    CHECK(print(Formula::implies(Formula::atom(0), Formula::bottom()), sig) == "p -> bot");
    CHECK(print(Formula::inq_or(Formula::atom(0), Formula::atom(1)), sig) == "p vv q");
    CHECK(print(Formula::box(Formula::conj(Formula::atom(0), Formula::atom(1))), sig) ==
          "[] (p & q)");
    CHECK(print(Formula::box(Formula::atom(0)), sig) == "[] p");
}

TEST_CASE("parse after print is the identity on random core formulas") {
    std::mt19937_64 rng(99);
    Signature sig({"p0", "p1", "p2"});
    for (int i = 0; i < 500; ++i) {
        Formula f = fuzz::random_formula(rng, 3, 4);
        CAPTURE(print(f, sig));
        CHECK(parse(print(f, sig), sig) == f);
    }
}

TEST_CASE("flatness grade never exceeds the inquisitive-disjunction count") {
    std::mt19937_64 rng(100);
    for (int i = 0; i < 300; ++i) {
        Formula f = fuzz::random_formula(rng, 3, 4);
        CHECK(flatness_grade(f) <= inq_disj_count(f));
    }
}

TEST_CASE("diamond desugaring adds one modal level") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        Formula f = fuzz::random_formula(rng, 2, 3);
        CHECK(modal_depth(Formula::diamond(f)) == modal_depth(f) + 1);
    }
}
