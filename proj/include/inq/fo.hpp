#ifndef INQ_FO_HPP
#define INQ_FO_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "inq/relational.hpp"

namespace inq {

// ── Two-sorted first-order logic ────────────────────────────────────────────
// Variables are sort-tagged integer ids. World variable 0 prints as "x" and
// is reserved for the world-pointed translation; ids k >= 1 print as "xk".
// State variable 0 prints as "L" (the free state variable of a state-pointed
// translation); ids k >= 1 print as "Mk".
//
// Atoms:
//   Mem(x, l)     world x is a member of state l
//   EMem(x, l)    state l belongs to the assignment of world x
//   Prop(i, x)    world x satisfies proposition i
//   Eq(x, y)      world equality
//   SubsetS(m, l) every member of m is a member of l (sugar; evaluated as
//                 its first-order definition)
//
// And/Or are n-ary; the empty conjunction is true, the empty disjunction
// false. State quantifiers range over the represented second sort only.

enum class FOKind : std::uint8_t {
    Mem, EMem, Prop, Eq, SubsetS,
    Not, And, Or, Implies,
    ForallW, ExistsW, ForallS, ExistsS
};

class FOFormula {
public:
    struct Node {
        FOKind kind;
        int a = -1;  // world var / prop index / state var (by kind)
        int b = -1;  // second var where applicable
        std::vector<FOFormula> kids;
    };

    FOFormula() = default;
    bool valid() const { return node_ != nullptr; }
    const Node& node() const { return *node_; }
    const Node* raw() const { return node_.get(); }

    static FOFormula mem(int world_var, int state_var);
    static FOFormula emem(int world_var, int state_var);
    static FOFormula prop(int prop_index, int world_var);
    static FOFormula eq(int world_var_a, int world_var_b);
    static FOFormula subset(int state_var_sub, int state_var_sup);
    static FOFormula fo_not(FOFormula f);
    static FOFormula fo_and(std::vector<FOFormula> kids);
    static FOFormula fo_or(std::vector<FOFormula> kids);
    static FOFormula fo_implies(FOFormula a, FOFormula b);
    static FOFormula forall_w(int world_var, FOFormula body);
    static FOFormula exists_w(int world_var, FOFormula body);
    static FOFormula forall_s(int state_var, FOFormula body);
    static FOFormula exists_s(int state_var, FOFormula body);

private:
    explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ── Assignments and evaluation ──────────────────────────────────────────────

struct FOAssignment {
    std::vector<int> world;  // var id -> world index, -1 unbound
    std::vector<int> state;  // var id -> index into RelStruct::states

    void ensure(int n_world_vars, int n_state_vars) {
        if (static_cast<int>(world.size()) < n_world_vars) world.resize(n_world_vars, -1);
        if (static_cast<int>(state.size()) < n_state_vars) state.resize(n_state_vars, -1);
    }
};

struct VarCounts {
    int world = 0;  // one past the largest world var id
    int state = 0;
};

VarCounts var_counts(const FOFormula& f);

// Free variables (not captured by a quantifier).
std::set<int> free_state_vars(const FOFormula& f);
std::set<int> free_world_vars(const FOFormula& f);

// Tarski evaluation over a finite relational structure. State quantifiers
// range over r.states; throws std::invalid_argument on an unbound variable.
bool eval_fo(const RelStruct& r, FOAssignment& asg, const FOFormula& f);

// Convenience wrappers with a single bound variable.
bool eval_fo_state(const RelStruct& r, int state_index, const FOFormula& f,
                   int state_var = 0);
bool eval_fo_world(const RelStruct& r, int world_index, const FOFormula& f,
                   int world_var = 0);

// Capture-safe replacement of a free state variable (binders in the tree
// never reuse free ids by construction of the translators).
FOFormula rename_free_state_var(const FOFormula& f, int from, int to);

// ── Pretty-printing ─────────────────────────────────────────────────────────
// Report-oriented text, e.g. "forall x1. (x1 in L -> P(x1))".
std::string print_fo(const FOFormula& f, const Signature& sig);

}  // namespace inq

#endif
