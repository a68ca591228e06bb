#ifndef INQ_MUTATION_HPP
#define INQ_MUTATION_HPP

#include <optional>
#include <string>

namespace inq::mutation {

// Fault injection for the mutation-sanity harness. Exactly one fault can be
// armed at a time; production behaviour corresponds to Fault::None. The five
// faults below are the documented seeded bugs the differential checks are
// required to catch.
enum class Fault {
    None,
    FlatImpliesZero,        // flatness of an implication reported as 0
    InqDisjDropPlusOne,     // inquisitive disjunction grade misses the +1
    ImplicationStrict,      // implication clause skips the subset t = s
    ClosureDropEmpty,       // inquisitive closure omits the empty state
    BoxGuardSwap            // E-guard in the box translation swaps its variables
};

Fault current();
void arm(Fault f);
bool active(Fault f);

std::optional<Fault> fault_from_name(const std::string& name);
const char* fault_name(Fault f);

// RAII guard so tests cannot leave a fault armed.
struct Armed {
    explicit Armed(Fault f) { arm(f); }
    ~Armed() { arm(Fault::None); }
    Armed(const Armed&) = delete;
    Armed& operator=(const Armed&) = delete;
};

}  // namespace inq::mutation

#endif
