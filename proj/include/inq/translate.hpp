#ifndef INQ_TRANSLATE_HPP
#define INQ_TRANSLATE_HPP

#include <vector>

#include "inq/fo.hpp"
#include "inq/formula.hpp"
#include "inq/model.hpp"
#include "inq/relational.hpp"

namespace inq {

// ── Standard translation ────────────────────────────────────────────────────
// Maps a formula f to a first-order formula in the free state variable L
// (state var id 0). The wrapper binds a tuple of flatness_grade(f)+1 world
// variables restricted to L and defers to the tuple-level translation ST:
//
//   f*(L) = forall x1..xn ( x1 in L & ... & xn in L  ->  ST(f, x) )
//
// ST is defined for tuples of any length:
//   ST(p, x)        = /\_k P(xk)
//   ST(bot, x)      = /\_k ~(xk = xk)
//   ST(f & g, x)    = ST(f, x) & ST(g, x)
//   ST(f -> g, x)   = forall y ( /\_k \/_l yk = xl  ->  (ST(f,y) -> ST(g,y)) )
//                     with |y| = |x|
//   ST(f vv g, x)   = ST(f, x) | ST(g, x)
//   ST([] f, x)     = /\_k forall y forall m
//                       ( /\_l (E(xk, ml) & yl in ml)  ->  ST(f, y) )
//                     with |y| = |m| = flatness_grade(f)+1
//   ST([+] f, x)    = /\_k forall m ( E(xk, m) -> f*(m) )
//
// Fresh variables are drawn from a counter threaded through the translation,
// so nested instances never capture.

FOFormula standard_translate(const Formula& f);

// World-pointed variant: ST(f, x) in the single free world variable x
// (world var id 0).
FOFormula world_translate(const Formula& f);

// Length of the world tuple bound by the state-pointed wrapper.
int translation_tuple_length(const Formula& f);

// ── Translation validation ──────────────────────────────────────────────────
// Both must return true on every input; differential-test oracles.

// supports(m, s, f) agrees with the translation evaluated on an encoding of
// (m, s) under the given policy.
bool check_fragment(const InqModel& m, InfoState s, const Formula& f,
                    EncodePolicy policy);

// World-pointed analogue over a minimal encoding of (m, {w}).
bool check_fragment_world(const InqModel& m, int w, const Formula& f);

// ── Relativization to substates ─────────────────────────────────────────────
// For psi with exactly one free state variable v, builds
//   forall m (m sub v -> psi[v := m])
// with a fresh m. Over structures whose second sort is closed under subsets
// of the distinguished state, this quantifies over all represented substates.
FOFormula substate_relativize(const FOFormula& psi);

// ── Persistent boolean combinations ─────────────────────────────────────────
// A boolean combination of standard translations in conjunctive normal form:
// each literal carries its base formula and a sign.

struct CnfLiteral {
    bool positive;
    Formula base;
};
using CnfClause = std::vector<CnfLiteral>;
using CnfInput = std::vector<CnfClause>;

// The first-order materialization: a conjunction of clauses, each clause the
// disjunction of its literals' translations (negated for negative literals).
// A clause without positive literals gets the translation of bot as its
// positive part, which differs from the classical empty disjunction only at
// the empty state.
FOFormula cnf_to_fo(const CnfInput& cnf);

// Rewrites the combination into a single formula: one implication per
// clause, negative literals conjoined into the antecedent (top when absent),
// positive literals vv-joined into the consequent (bot when absent), all
// clauses conjoined. The result's standard translation is equivalent to the
// substate-relativized materialization over state-closed encodings with
// non-empty distinguished states.
Formula rewrite_cnf_to_formula(const CnfInput& cnf);

}  // namespace inq

#endif
