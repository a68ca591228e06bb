#include <doctest.h>

#include <algorithm>
#include <random>

#include "inq/json_io.hpp"
#include "inq/model.hpp"

using namespace inq;

namespace {

// W = {w0, w1}, V(p) = {w0}, downward-closed assignments.
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

// Same worlds and valuation but assignments that are not downward closed.
InqModel make_p0() {
    InqModel m;
    m.world_names = {"w0", "w1"};
    m.sig = Signature({"p"});
    m.valuation = {InfoState::singleton(0)};
    m.sigma = {{InfoState(0b11)}, {InfoState::singleton(1)}};
    m.kind = ModelKind::Pseudo;
    return m;
}

}  // namespace

TEST_CASE("validation levels") {
    CHECK(validate(make_m0()).level == ModelVerdict::Proper);
    CHECK(validate(make_p0()).level == ModelVerdict::Pseudo);

    InqModel bad = make_m0();
    bad.sigma[0].clear();
    ModelVerdict v = validate(bad);
    CHECK(v.level == ModelVerdict::Invalid);
    CHECK(v.world == 0);
    CHECK(v.reason == "empty-assignment");

    InqModel no_worlds;
    CHECK(validate(no_worlds).level == ModelVerdict::Invalid);
}

TEST_CASE("inquisitive closure on the pseudo example") {
    InqModel c = inquisitive_closure(make_p0());
    CHECK(c.sigma[0] == std::vector<InfoState>{InfoState(0b00), InfoState(0b01),
                                               InfoState(0b10), InfoState(0b11)});
    CHECK(c.sigma[1] == std::vector<InfoState>{InfoState(0b00), InfoState(0b10)});
    CHECK(validate(c).level == ModelVerdict::Proper);
}

TEST_CASE("closure fixes proper models and the empty-state family") {
    InqModel m0 = make_m0();
    CHECK(inquisitive_closure(m0) == m0);

    InqModel tiny;
    tiny.world_names = {"w0"};
    tiny.sig = Signature(std::vector<std::string>{});
    tiny.sigma = {{InfoState::empty()}};
    CHECK(inquisitive_closure(tiny).sigma[0] == std::vector<InfoState>{InfoState::empty()});
}

TEST_CASE("kripke successor sets") {
    CHECK(kripke_successors(make_p0(), 0) == InfoState(0b11));
    CHECK(kripke_successors(make_m0(), 0) == InfoState(0b01));
    CHECK(kripke_successors(inquisitive_closure(make_p0()), 0) == InfoState(0b11));
}

TEST_CASE("closure is idempotent, pointwise wider, and always proper") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        InqModel m = random_pseudo_model(seed, 1 + seed % 5, 2, 3);
        InqModel c = inquisitive_closure(m);
        CHECK(validate(c).level == ModelVerdict::Proper);
        CHECK(inquisitive_closure(c) == c);
        for (int w = 0; w < m.n_worlds(); ++w) {
            for (const InfoState& s : m.sigma[w])
                CHECK(std::find(c.sigma[w].begin(), c.sigma[w].end(), s) != c.sigma[w].end());
            CHECK(kripke_successors(m, w) == kripke_successors(c, w));
        }
    }
}

TEST_CASE("proper models contain the empty state everywhere") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        InqModel c = inquisitive_closure(random_pseudo_model(seed, 1 + seed % 4, 2, 3));
        for (int w = 0; w < c.n_worlds(); ++w)
            CHECK(std::find(c.sigma[w].begin(), c.sigma[w].end(), InfoState::empty()) !=
                  c.sigma[w].end());
    }
}

TEST_CASE("random model generation is deterministic and in contract") {
    InqModel a = random_pseudo_model(7, 4, 2, 3);
    InqModel b = random_pseudo_model(7, 4, 2, 3);
    CHECK(a == b);
    CHECK(validate(a).at_least_pseudo());

    InqModel tiny = random_pseudo_model(7, 1, 1, 1);
    CHECK(tiny.n_worlds() == 1);
    CHECK(tiny.sigma[0].size() == 1);

    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        InqModel m = random_pseudo_model(seed, 1 + seed % 5, 1 + seed % 3, 1 + seed % 4,
                                         seed % 2 ? 1.0 : 0.0);
        ModelVerdict v = validate(m);
        CHECK(v.at_least_pseudo());
        if (m.kind == ModelKind::Proper) CHECK(v.level == ModelVerdict::Proper);
    }
    CHECK_THROWS_AS(random_pseudo_model(1, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_pseudo_model(1, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("model JSON round-trips and matches the documented shape") {
    const char* text = R"({"worlds":["w0","w1"],
                           "valuation":{"p":["w0"]},
                           "sigma":{"w0":[[],["w0"]], "w1":[[],["w1"]]}})";
    InqModel m = model_from_json(nlohmann::json::parse(text));
    CHECK(m == make_m0());
    CHECK(m.kind == ModelKind::Proper);
    CHECK(model_from_json(model_to_json(m)) == m);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        InqModel r = random_pseudo_model(seed, 1 + seed % 5, 3, 3);
        CHECK(model_from_json(model_to_json(r)) == r);
    }
}

TEST_CASE("pointed files accept a state or a world") {
    nlohmann::json j = model_to_json(make_m0());
    j["state"] = nlohmann::json::array({"w0", "w1"});
    InqModel m = model_from_json(j);
    CHECK(point_from_json(j, m) == InfoState(0b11));
    j.erase("state");
    j["world"] = "w1";
    CHECK(point_from_json(j, m) == InfoState::singleton(1));
    j.erase("world");
    CHECK(!point_from_json(j, m).has_value());
}

TEST_CASE("malformed model files are rejected") {
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"worlds":[]})")),
                    JsonFormatError);
    CHECK_THROWS_AS(
        model_from_json(nlohmann::json::parse(
            R"({"worlds":["w0"],"valuation":{},"sigma":{"w0":[["nope"]]}})")),
        JsonFormatError);
    CHECK_THROWS_AS(
        model_from_json(nlohmann::json::parse(
            R"({"worlds":["w0","w0"],"valuation":{},"sigma":{"w0":[[]]}})")),
        JsonFormatError);
}
