#ifndef INQ_BISIM_HPP
#define INQ_BISIM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inq/formula.hpp"
#include "inq/model.hpp"

namespace inq {

// ── The two-phase game ──────────────────────────────────────────────────────
// Positions alternate between state pairs and world pairs; one round is a
// world challenge/response followed by a state challenge/response. Levels
// are computed by backward induction over world-pair tables:
//
//   world pairs, level 0:    agreement on every proposition
//   state pairs, level k:    for every world on one side some world on the
//                            other side equivalent at level k, both ways
//   world pairs, level k+1:  atomic agreement, and for every member of the
//                            state assignment on one side some member on the
//                            other side state-equivalent at level k, both ways
//
// Pseudo-models are replaced by their inquisitive closures before play.

struct GamePosition {
    enum Kind { StatePair, WorldPair } kind;
    InfoState s1, s2;  // StatePair
    int w1 = -1, w2 = -1;  // WorldPair

    static GamePosition states(InfoState a, InfoState b) {
        return {StatePair, a, b, -1, -1};
    }
    static GamePosition worlds(int a, int b) { return {WorldPair, {}, {}, a, b}; }
};

struct BisimResult {
    bool equivalent = false;
    int level = 0;        // requested level, or stabilization level for full play
    bool omega = false;   // verdict holds for every number of rounds
    std::vector<std::string> witness;  // spoiler move list when inequivalent
};

// Equivalence tables for a fixed (closed) model pair, levels 0..n.
class BisimTables {
public:
    BisimTables(const InqModel& a, const InqModel& b, int levels);

    // Extends tables until the world-pair partition stabilizes; returns the
    // first level whose table equals its successor's.
    int stabilize();

    bool world_eq(int level, int w1, int w2) const;
    bool state_eq(int level, InfoState s1, InfoState s2) const;
    int levels() const { return static_cast<int>(tables_.size()) - 1; }

    const InqModel& left() const { return a_; }
    const InqModel& right() const { return b_; }

private:
    void push_level();

    InqModel a_, b_;
    std::vector<std::vector<std::uint8_t>> tables_;  // [level][w1 * |W2| + w2]
};

BisimResult n_bisim(const InqModel& a, GamePosition pos, const InqModel& b, int n);
BisimResult n_bisim(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2,
                    int n);

// Iterates until the world-pair partition stabilizes; the verdict then holds
// at every finite level (reported as omega).
BisimResult full_bisim(const InqModel& a, GamePosition pos, const InqModel& b);
BisimResult full_bisim(const InqModel& a, InfoState s1, const InqModel& b,
                       InfoState s2);

// For every world in s1 a fully-equivalent world in s2 and vice versa, where
// world equivalence is the stabilized fixpoint.
bool bulk_equiv(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2);

// ── Soundness harness ───────────────────────────────────────────────────────
// For pairs the game declares equivalent at level n: every sampled formula
// of modal depth <= n must be supported on both sides or neither. For pairs
// declared inequivalent the spoiler witness is reported; the caller may run
// find_distinguishing separately.

struct EfReport {
    BisimResult bisim;
    int formulas_checked = 0;
    std::vector<Formula> disagreements;  // empty on a sound implementation

    bool sound() const { return disagreements.empty(); }
};

using FormulaSampler = std::function<Formula(int index)>;

EfReport ef_check(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2,
                  int n, const FormulaSampler& sampler, int n_samples);

// ── Distinguishing-formula search ───────────────────────────────────────────
// Bounded-exhaustive enumeration of formulas over the models' common
// signature, up to the given modal depth, deduplicated by their support
// vectors on both models. Finds a formula the two pointed models disagree
// on, if one exists within the class budget. Intended for desk-scale models.

struct DistinguishResult {
    std::optional<Formula> formula;
    bool complete = false;  // enumeration saturated below the budget
    int classes = 0;
};

DistinguishResult find_distinguishing(const InqModel& a, InfoState s1,
                                      const InqModel& b, InfoState s2, int max_depth,
                                      int class_budget = 20000);

}  // namespace inq

#endif
