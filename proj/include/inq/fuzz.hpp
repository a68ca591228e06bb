#ifndef INQ_FUZZ_HPP
#define INQ_FUZZ_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "inq/bisim.hpp"
#include "inq/formula.hpp"
#include "inq/model.hpp"
#include "inq/relational.hpp"
#include "inq/translate.hpp"

namespace inq::fuzz {

// ── Configuration ───────────────────────────────────────────────────────────

enum class Check { Fragment, Graded, Persistency, Closure, Ef, Rewrite, Roundtrip };

std::vector<Check> all_checks();
const char* check_name(Check c);
std::optional<Check> check_from_name(const std::string& s);

struct FuzzConfig {
    std::uint64_t seed = 1;
    int trials = 200;                 // per selected check
    int max_worlds = 5;
    int n_props = 3;
    int max_formula_depth = 3;
    int max_states_per_world = 3;
    std::vector<EncodePolicy> policies = {EncodePolicy::Minimal,
                                          EncodePolicy::SubsetsOfPoint,
                                          EncodePolicy::Full};
    std::vector<Check> checks = all_checks();
    int ef_rounds = 3;
    int ef_samples = 50;              // per equivalent pair
};

// ── Generators ──────────────────────────────────────────────────────────────
// All deterministic in the passed engine.

Formula random_formula(std::mt19937_64& rng, int n_props, int max_depth);

// Bounded modal depth (for the soundness harness) and bounded node count.
Formula random_formula_md(std::mt19937_64& rng, int n_props, int max_modal_depth,
                          int size_budget);

// Small CNF inputs whose consequents keep the translation tuple short.
CnfInput random_cnf(std::mt19937_64& rng, int n_props);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// ── Trials ──────────────────────────────────────────────────────────────────
// A trial draws inputs and evaluates one or more predicates; a predicate
// violation yields a Failure whose TrialData replays and shrinks.

enum class Predicate {
    GeneratorKind,        // declared model kind disagrees with validation
    FragmentState,        // supports vs translation, state-pointed
    FragmentWorld,        // supports vs translation, world-pointed
    GradedAgree,
    Persistency,
    ExFalso,
    ClosureInvariance,
    ClosureProper,
    ClosureIdempotent,
    EfSoundness,          // equivalent pair disagrees on a sampled formula
    RewriteEquivalence,   // relativized CNF vs rewritten implication (FO side)
    RewriteSupports,      // relativized CNF vs support of the rewrite
    DownConjLaw,          // relativization commutes with conjunction
    AstRoundtrip,
    ModelRoundtrip,
    StateClosureIdempotent
};

const char* predicate_name(Predicate p);

struct TrialData {
    Predicate pred = Predicate::FragmentState;
    InqModel m1;
    bool has_m2 = false;
    InqModel m2;
    InfoState s1, s2;
    std::vector<Formula> formulas;
    CnfInput cnf;
    EncodePolicy policy = EncodePolicy::Minimal;
    int rounds = 0;
    int world = -1;
};

// True when the property is violated (the trial "fails").
bool predicate_fails(const TrialData& t);

// Greedy minimization: drops worlds, removes assigned states and shrinks
// formulas while the predicate keeps failing and the models keep their
// validity class.
TrialData shrink(const TrialData& t);

nlohmann::json bundle_to_json(const TrialData& t);
TrialData bundle_from_json(const nlohmann::json& j);

struct Failure {
    Check check = Check::Fragment;
    int trial = 0;
    TrialData data;  // already shrunk when shrinking is enabled
};

struct CheckStats {
    Check check = Check::Fragment;
    int trials = 0;
    int failures = 0;
    std::vector<Failure> failure_list;
};

CheckStats run_check(Check c, const FuzzConfig& cfg, bool shrink_failures);

struct Report {
    FuzzConfig config;
    std::vector<CheckStats> stats;
    int total_failures = 0;
};

Report run_fuzz(const FuzzConfig& cfg);

std::string report_to_text(const Report& r);
nlohmann::json report_to_json(const Report& r);

}  // namespace inq::fuzz

#endif
