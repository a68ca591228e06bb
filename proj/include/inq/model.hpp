#ifndef INQ_MODEL_HPP
#define INQ_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "inq/signature.hpp"

namespace inq {

// ── InfoState ───────────────────────────────────────────────────────────────
// An information state: a set of worlds packed as bits. The width (the
// number of worlds) is owned by the surrounding model; bits at or above the
// width must be zero.

struct InfoState {
    std::uint64_t bits = 0;

    constexpr InfoState() = default;
    constexpr explicit InfoState(std::uint64_t b) : bits(b) {}

    static constexpr InfoState empty() { return InfoState(0); }
    static constexpr InfoState singleton(int w) { return InfoState(1ull << w); }
    static constexpr InfoState all(int n) {
        return InfoState(n >= 64 ? ~0ull : (1ull << n) - 1);
    }

    bool contains(int w) const { return (bits >> w) & 1; }
    InfoState with(int w) const { return InfoState(bits | (1ull << w)); }
    InfoState without(int w) const { return InfoState(bits & ~(1ull << w)); }
    bool subset_of(InfoState o) const { return (bits & ~o.bits) == 0; }
    InfoState unite(InfoState o) const { return InfoState(bits | o.bits); }
    InfoState intersect(InfoState o) const { return InfoState(bits & o.bits); }
    bool empty_state() const { return bits == 0; }
    int count() const { return __builtin_popcountll(bits); }

    friend bool operator==(InfoState a, InfoState b) { return a.bits == b.bits; }
    friend bool operator!=(InfoState a, InfoState b) { return a.bits != b.bits; }
    friend bool operator<(InfoState a, InfoState b) { return a.bits < b.bits; }
};

// Iterates all subsets of `s`, empty set included, in increasing bit order.
template <typename F>
void for_each_subset(InfoState s, F&& fn) {
    std::uint64_t sub = 0;
    while (true) {
        fn(InfoState(sub));
        if (sub == s.bits) break;
        sub = (sub - s.bits) & s.bits;  // next subset in increasing order
    }
}

// ── InqModel ────────────────────────────────────────────────────────────────
// A finite model (W, Sigma, V): per-world families of information states
// plus a propositional valuation. `kind` records whether every family is
// known to be downward closed (Proper) or merely non-empty (Pseudo); the
// authoritative check is validate().

enum class ModelKind : std::uint8_t { Proper, Pseudo };

struct InqModel {
    std::vector<std::string> world_names;
    Signature sig;
    std::vector<std::vector<InfoState>> sigma;  // per world, sorted, duplicate-free
    std::vector<InfoState> valuation;           // per proposition
    ModelKind kind = ModelKind::Pseudo;

    int n_worlds() const { return static_cast<int>(world_names.size()); }
    InfoState universe() const { return InfoState::all(n_worlds()); }

    bool operator==(const InqModel& o) const {
        return world_names == o.world_names && sig == o.sig && sigma == o.sigma &&
               valuation == o.valuation;
    }
};

struct ModelVerdict {
    enum Level { Proper, Pseudo, Invalid } level = Invalid;
    int world = -1;        // offending world for Invalid
    std::string reason;    // empty unless Invalid

    bool at_least_pseudo() const { return level != Invalid; }
};

// Sorts and deduplicates every state family; call after hand-building a model.
void canonicalize(InqModel& m);

// Proper iff every family is non-empty and downward closed; Pseudo iff every
// family is non-empty; Invalid otherwise (first offending world reported).
ModelVerdict validate(const InqModel& m);

// The downward closure of every state family. Idempotent; result is Proper.
InqModel inquisitive_closure(const InqModel& m);

// Union of the state family at w: the successor set of the induced Kripke
// model. Identical for a pseudo-model and its closure.
InfoState kripke_successors(const InqModel& m, int w);

// ── PointedModel ────────────────────────────────────────────────────────────

struct PointedModel {
    InqModel model;
    InfoState point;  // world-pointed inputs are normalized to singletons
};

// ── Random generation ───────────────────────────────────────────────────────
// Deterministic for a fixed seed. Result always validates as Pseudo; with
// probability close_prob the model is post-closed and flagged Proper.
InqModel random_pseudo_model(std::uint64_t seed, int n_worlds, int n_props,
                             int max_states_per_world, double close_prob = 0.0);

// Uniform random state over the model's worlds (helper for fuzzing).
InfoState random_state(std::uint64_t seed, int n_worlds);

}  // namespace inq

#endif
