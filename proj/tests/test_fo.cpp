#include <doctest.h>

#include "inq/fo.hpp"
#include "inq/relational.hpp"
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

int index_of_state(const RelStruct& r, InfoState s) {
    for (int i = 0; i < r.n_states(); ++i)
        if (r.states[i] == s) return i;
    REQUIRE(false);
    return -1;
}

}  // namespace

TEST_CASE("evaluation of hand-built formulas") {
    InqModel m0 = make_m0();
    RelStruct r = encode(m0, InfoState::singleton(0), EncodePolicy::Minimal);

    // forall x1 (x1 in L -> P(x1))
    FOFormula all_p = FOFormula::forall_w(
        1, FOFormula::fo_implies(FOFormula::mem(1, 0), FOFormula::prop(0, 1)));
    CHECK(eval_fo_state(r, index_of_state(r, InfoState::singleton(0)), all_p));

    RelStruct r2 = encode(m0, InfoState(0b11), EncodePolicy::Minimal);
    CHECK(!eval_fo_state(r2, index_of_state(r2, InfoState(0b11)), all_p));

    // x = x under any binding
    FOAssignment asg;
    asg.ensure(1, 0);
    asg.world[0] = 1;
    CHECK(eval_fo(r, asg, FOFormula::eq(0, 0)));

    // unbound variables are contract violations
    FOAssignment empty;
    CHECK_THROWS_AS(eval_fo(r, empty, FOFormula::prop(0, 3)), std::invalid_argument);
}

TEST_CASE("state quantifiers range over the represented second sort only") {
    InqModel m0 = make_m0();
    RelStruct minimal = encode(m0, InfoState::singleton(0), EncodePolicy::Minimal);
    RelStruct full = encode(m0, InfoState::singleton(0), EncodePolicy::Full);
    // exists m (forall x (x in m -> P(x)) & exists x (x in m))  — a non-empty
    // state inside P; holds in both, but the witness pool differs in size
    FOFormula body = FOFormula::fo_and(
        {FOFormula::forall_w(1, FOFormula::fo_implies(FOFormula::mem(1, 1),
                                                      FOFormula::prop(0, 1))),
         FOFormula::exists_w(2, FOFormula::mem(2, 1))});
    FOFormula ex = FOFormula::exists_s(1, body);
    FOAssignment asg;
    CHECK(eval_fo(minimal, asg, ex));
    CHECK(eval_fo(full, asg, ex));
    CHECK(minimal.n_states() == 3);
    CHECK(full.n_states() == 4);
}

TEST_CASE("subset sugar evaluates as inclusion") {
    InqModel m0 = make_m0();
    RelStruct r = encode(m0, InfoState(0b11), EncodePolicy::Minimal);
    FOAssignment asg;
    asg.ensure(0, 2);
    asg.state[0] = index_of_state(r, InfoState(0b11));
    asg.state[1] = index_of_state(r, InfoState::singleton(0));
    CHECK(eval_fo(r, asg, FOFormula::subset(1, 0)));
    CHECK(!eval_fo(r, asg, FOFormula::subset(0, 1)));
}

TEST_CASE("printer output") {
    Signature sig({"p"});
    CHECK(print_fo(standard_translate(parse("p", sig)), sig) ==
          "forall x1. (x1 in L -> P(x1))");
    CHECK(print_fo(world_translate(parse("p", sig)), sig) == "P(x)");
    CHECK(print_fo(world_translate(parse("bot", sig)), sig) == "~(x = x)");
    CHECK(print_fo(FOFormula::fo_and({}), sig) == "true");
    CHECK(print_fo(FOFormula::fo_or({}), sig) == "false");
    CHECK(print_fo(FOFormula::subset(1, 0), sig) == "M1 sub L");
    CHECK(print_fo(FOFormula::emem(0, 1), sig) == "E(x, M1)");
}

TEST_CASE("free variable bookkeeping") {
    FOFormula st = standard_translate(parse("?p -> q", Signature({"p", "q"})));
    auto free_s = free_state_vars(st);
    REQUIRE(free_s.size() == 1);
    CHECK(*free_s.begin() == 0);
    CHECK(free_world_vars(st).empty());

    FOFormula wt = world_translate(parse("[] p", Signature({"p"})));
    auto free_w = free_world_vars(wt);
    REQUIRE(free_w.size() == 1);
    CHECK(*free_w.begin() == 0);
    CHECK(free_state_vars(wt).empty());
}

TEST_CASE("renaming respects shadowing") {
    // forall M1 (M1 sub L -> exists M0-shadow?) — build: Mem(1, 0) under a
    // binder for state 0 must not be renamed
    FOFormula inner = FOFormula::forall_s(0, FOFormula::mem(1, 0));
    FOFormula outer = FOFormula::fo_and({FOFormula::mem(1, 0), inner});
    FOFormula renamed = rename_free_state_var(outer, 0, 7);
    CHECK(renamed.node().kids[0].node().b == 7);                      // free: renamed
    CHECK(renamed.node().kids[1].node().kids[0].node().b == 0);       // bound: kept
}
