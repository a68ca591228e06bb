#include "inq/mutation.hpp"

#include <atomic>

namespace inq::mutation {

static std::atomic<Fault> g_fault{Fault::None};

Fault current() { return g_fault.load(std::memory_order_relaxed); }
void arm(Fault f) { g_fault.store(f, std::memory_order_relaxed); }
bool active(Fault f) { return current() == f; }

std::optional<Fault> fault_from_name(const std::string& name) {
    if (name == "flat-implies") return Fault::FlatImpliesZero;
    if (name == "inqdisj-no-plus-one") return Fault::InqDisjDropPlusOne;
    if (name == "strict-implication") return Fault::ImplicationStrict;
    if (name == "closure-drop-empty") return Fault::ClosureDropEmpty;
    if (name == "swapped-box-guard") return Fault::BoxGuardSwap;
    if (name == "none") return Fault::None;
    return std::nullopt;
}

const char* fault_name(Fault f) {
    switch (f) {
        case Fault::None: return "none";
        case Fault::FlatImpliesZero: return "flat-implies";
        case Fault::InqDisjDropPlusOne: return "inqdisj-no-plus-one";
        case Fault::ImplicationStrict: return "strict-implication";
        case Fault::ClosureDropEmpty: return "closure-drop-empty";
        case Fault::BoxGuardSwap: return "swapped-box-guard";
    }
    return "none";
}

}  // namespace inq::mutation
