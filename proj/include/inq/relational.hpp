#ifndef INQ_RELATIONAL_HPP
#define INQ_RELATIONAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "inq/model.hpp"

namespace inq {

// ── RelStruct ───────────────────────────────────────────────────────────────
// Two-sorted relational counterpart of a model: a first sort of worlds, a
// second sort of extensionally distinct information states, per-world state
// assignments E, and unary predicates per proposition. World membership in a
// state (the epsilon relation) is implicit in the state bitsets.

struct RelStruct {
    std::vector<std::string> world_names;
    Signature sig;
    std::vector<InfoState> states;        // second sort; pairwise distinct
    std::vector<std::vector<int>> E;      // per world: sorted state indices
    std::vector<InfoState> props;         // per proposition
    std::optional<int> point;             // distinguished state index

    int n_worlds() const { return static_cast<int>(world_names.size()); }
    int n_states() const { return static_cast<int>(states.size()); }
    bool in_assignment(int w, int state_index) const;

    bool operator==(const RelStruct& o) const {
        return world_names == o.world_names && sig == o.sig && states == o.states &&
               E == o.E && props == o.props && point == o.point;
    }
};

struct RelVerdict {
    enum Level { Model, Pseudo, Invalid } level = Invalid;
    std::string reason;          // violated condition for Invalid
    int world = -1;              // witnesses, where applicable
    int state_index = -1;
    InfoState missing_subset;    // the subset a with no representative in E[w]

    bool at_least_pseudo() const { return level != Invalid; }
};

// Checks extensionality, non-emptiness of every E[w], and downward closure
// of every E[w] within the second sort. Model requires all three, Pseudo the
// first two.
RelVerdict validate_relational(const RelStruct& r);

// ── Encoding policies ───────────────────────────────────────────────────────
// The second sort must contain the distinguished state and the range of the
// state assignment; beyond that its extension is free. Three reproducible
// choices:
//   Minimal        : exactly the required states
//   SubsetsOfPoint : additionally every subset of the distinguished state
//   Full           : the entire powerset (capped)

enum class EncodePolicy { Minimal, SubsetsOfPoint, Full };

RelStruct encode(const InqModel& m, InfoState point, EncodePolicy policy);

struct DecodedModel {
    InqModel model;
    std::optional<InfoState> point;
};

// Reads the state assignment and valuation back off the relational form.
// States outside every E-range and distinct from the point are dropped.
DecodedModel decode(const RelStruct& r);

// For a pseudo structure with a distinguished state: re-encodes the
// inquisitive closure of the decoded model and additionally represents every
// subset of the distinguished state in the second sort. The result satisfies
// all three relational model conditions; the operation is idempotent.
RelStruct state_closure(const RelStruct& r);

const char* policy_name(EncodePolicy p);
std::optional<EncodePolicy> policy_from_name(const std::string& s);

}  // namespace inq

#endif
