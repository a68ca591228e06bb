#include <doctest.h>

#include <random>

#include "inq/fuzz.hpp"
#include "inq/support.hpp"
#include "inq/translate.hpp"

using namespace inq;

namespace {

InqModel make_m0() {
    InqModel m;
    m.world_names = {"w0", "w1"};
    m.sig = Signature({"p"});
    m.valuation = {InfoState::singleton(0)};
    m.sigma = {{InfoState::empty(), InfoState::singleton(0)},
               {InfoState::empty(), InfoState::singleton(1)}};
    m.kind = ModelKind::Proper;
    return m;
}

InqModel make_p0() {
    InqModel m;
    m.world_names = {"w0", "w1"};
    m.sig = Signature({"p"});
    m.valuation = {InfoState::singleton(0)};
    m.sigma = {{InfoState(0b11)}, {InfoState::singleton(1)}};
    m.kind = ModelKind::Pseudo;
    return m;
}

// number of world variables bound by the leading quantifier block
int wrapper_tuple_length(const FOFormula& f) {
    int n = 0;
    const FOFormula* cur = &f;
    while (cur->node().kind == FOKind::ForallW) {
        ++n;
        cur = &cur->node().kids[0];
    }
    return n;
}

int index_of_state(const RelStruct& r, InfoState s) {
    for (int i = 0; i < r.n_states(); ++i)
        if (r.states[i] == s) return i;
    REQUIRE(false);
    return -1;
}

}  // namespace

TEST_CASE("wrapper binds exactly grade-plus-one world variables") {
    Signature sig({"p", "q"});
    CHECK(wrapper_tuple_length(standard_translate(parse("p", sig))) == 1);
    CHECK(wrapper_tuple_length(standard_translate(parse("?p", sig))) == 2);
    CHECK(wrapper_tuple_length(standard_translate(parse("?p vv ?q", sig))) == 4);
    CHECK(translation_tuple_length(parse("?p", sig)) == 2);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        Formula f = fuzz::random_formula(rng, 2, 3);
        CHECK(wrapper_tuple_length(standard_translate(f)) == flatness_grade(f) + 1);
    }
}

TEST_CASE("fragment check on the running examples") {
    InqModel m0 = make_m0();
    InqModel p0 = make_p0();
    CHECK(check_fragment(m0, InfoState(0b11), parse("?p", m0.sig), EncodePolicy::Minimal));
    CHECK(check_fragment(p0, InfoState::singleton(0), parse("[+] p", p0.sig),
                         EncodePolicy::Minimal));
    CHECK(check_fragment(m0, InfoState::empty(), parse("?p -> [] p", m0.sig),
                         EncodePolicy::Minimal));

    // both sides false on the question at the full state
    RelStruct r = encode(m0, InfoState(0b11), EncodePolicy::Minimal);
    CHECK(!eval_fo_state(r, *r.point, standard_translate(parse("?p", m0.sig))));
    CHECK(!supports(m0, InfoState(0b11), parse("?p", m0.sig)));
}

TEST_CASE("translation agrees with support across policies and model kinds") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        InqModel m = random_pseudo_model(rng(), 1 + rng() % 4, 1 + rng() % 3, 3,
                                         (rng() & 1) ? 1.0 : 0.0);
        InfoState s((rng() | rng()) & m.universe().bits);
        Formula f = fuzz::random_formula(rng, m.sig.size(), 3);
        EncodePolicy pol = static_cast<EncodePolicy>(rng() % 3);
        CHECK(check_fragment(m, s, f, pol));
    }
}

TEST_CASE("world variant agrees with singleton evaluation") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 200; ++i) {
        InqModel m = random_pseudo_model(rng(), 1 + rng() % 4, 1 + rng() % 3, 3);
        int w = static_cast<int>(rng() % m.n_worlds());
        Formula f = fuzz::random_formula(rng, m.sig.size(), 3);
        CHECK(check_fragment_world(m, w, f));
    }
}

TEST_CASE("substate relativization examples") {
    InqModel m0 = make_m0();
    RelStruct closed = state_closure(encode(m0, InfoState(0b11), EncodePolicy::Minimal));
    FOFormula p_star = standard_translate(parse("p", m0.sig));

    // persistent formulas are invariant under relativization
    FOFormula p_rel = substate_relativize(p_star);
    for (int i = 0; i < closed.n_states(); ++i)
        CHECK(eval_fo_state(closed, i, p_star) == eval_fo_state(closed, i, p_rel));

    // a negation is strictly strengthened: ~p* holds at {w0,w1} but its
    // relativization fails there (the subset {w0} supports p)
    FOFormula not_p = FOFormula::fo_not(p_star);
    int full = index_of_state(closed, InfoState(0b11));
    CHECK(eval_fo_state(closed, full, not_p));
    CHECK(!eval_fo_state(closed, full, substate_relativize(not_p)));

    // needs exactly one free state variable
    CHECK_THROWS_AS(substate_relativize(world_translate(parse("p", m0.sig))),
                    std::invalid_argument);
}

TEST_CASE("relativization commutes with conjunction") {
    InqModel p0 = make_p0();
    RelStruct closed = state_closure(encode(p0, InfoState(0b11), EncodePolicy::Minimal));
    std::mt19937_64 rng(34);
    for (int i = 0; i < 40; ++i) {
        FOFormula a = standard_translate(fuzz::random_formula(rng, 1, 2));
        FOFormula b = standard_translate(fuzz::random_formula(rng, 1, 2));
        FOFormula both = substate_relativize(FOFormula::fo_and({a, b}));
        FOFormula split =
            FOFormula::fo_and({substate_relativize(a), substate_relativize(b)});
        for (int s = 0; s < closed.n_states(); ++s)
            CHECK(eval_fo_state(closed, s, both) == eval_fo_state(closed, s, split));
    }
}

TEST_CASE("CNF rewrite produces the documented implications") {
    Signature sig({"p", "q"});
    Formula p = parse("p", sig), q = parse("q", sig);

    CnfInput neg_p_or_q = {{CnfLiteral{false, p}, CnfLiteral{true, q}}};
    CHECK(rewrite_cnf_to_formula(neg_p_or_q) == Formula::implies(p, q));

    CnfInput just_p = {{CnfLiteral{true, p}}};
    CHECK(rewrite_cnf_to_formula(just_p) == Formula::implies(Formula::top(), p));

    CnfInput not_p = {{CnfLiteral{false, p}}};
    CHECK(rewrite_cnf_to_formula(not_p) == Formula::implies(p, Formula::bottom()));

    CnfInput two_clauses = {{CnfLiteral{false, p}, CnfLiteral{true, q}},
                            {CnfLiteral{true, p}}};
    CHECK(rewrite_cnf_to_formula(two_clauses) ==
          Formula::conj(Formula::implies(p, q),
                        Formula::implies(Formula::top(), p)));

    CHECK(rewrite_cnf_to_formula({}) == Formula::top());
}

TEST_CASE("rewrite is equivalent to the relativized input on closed encodings") {
    InqModel m0 = make_m0();
    Signature sig = m0.sig;
    Formula p = parse("p", sig);

    for (const CnfInput& cnf :
         {CnfInput{{CnfLiteral{false, p}}}, CnfInput{{CnfLiteral{true, p}}},
          CnfInput{{CnfLiteral{false, p}, CnfLiteral{true, p}}}}) {
        for (InfoState s : {InfoState::singleton(0), InfoState::singleton(1),
                            InfoState(0b11)}) {
            RelStruct closed = state_closure(encode(m0, s, EncodePolicy::Minimal));
            bool lhs = eval_fo_state(closed, *closed.point,
                                     substate_relativize(cnf_to_fo(cnf)));
            bool rhs = eval_fo_state(closed, *closed.point,
                                     standard_translate(rewrite_cnf_to_formula(cnf)));
            CHECK(lhs == rhs);
        }
    }

    // spot value: [~p*] rewrites to ~p, which holds exactly at {w1}
    CnfInput not_p = {{CnfLiteral{false, p}}};
    RelStruct c1 = state_closure(encode(m0, InfoState::singleton(1), EncodePolicy::Minimal));
    CHECK(eval_fo_state(c1, *c1.point, substate_relativize(cnf_to_fo(not_p))));
    RelStruct c0 = state_closure(encode(m0, InfoState::singleton(0), EncodePolicy::Minimal));
    CHECK(!eval_fo_state(c0, *c0.point, substate_relativize(cnf_to_fo(not_p))));
}
