#ifndef INQ_SUPPORT_HPP
#define INQ_SUPPORT_HPP

#include <string>
#include <vector>

#include "inq/formula.hpp"
#include "inq/model.hpp"

namespace inq {

// ── Support relation ─────────────────────────────────────────────────────────
// supports(M, s, f) decides whether the information state s supports f:
//
//   p        iff  s is contained in V(p)
//   bot      iff  s is empty
//   f & g    iff  both
//   f -> g   iff  every subset t of s that supports f supports g
//   f vv g   iff  either
//   [] f     iff  for every w in s, the Kripke successor set of w supports f
//   [+] f    iff  for every w in s, every member of Sigma(w) supports f
//
// Subset inclusion is non-strict throughout (t = s and t = {} included).
// Works on proper and pseudo-models alike. Results are memoized per query
// on (subformula, state) pairs, so repeated states in nested implications
// are evaluated once.

bool supports(const InqModel& m, InfoState s, const Formula& f);

// Graded strategy: s supports f iff every subset of s of size at most
// flatness_grade(f)+1 supports f. Each bounded subset is evaluated with the
// naive strategy, keeping the two paths independent enough to serve as
// mutual oracles.
bool supports_graded(const InqModel& m, InfoState s, const Formula& f);

enum class Strategy { Naive, Graded };

bool supports(const InqModel& m, InfoState s, const Formula& f, Strategy st);

// ── Semantic sanity oracles ─────────────────────────────────────────────────
// Both must return true on every input; they are differential-test oracles.

// Support at s implies support at every subset of s.
bool check_persistency(const InqModel& m, InfoState s, const Formula& f);

// Evaluating over m and over its inquisitive closure agree.
bool check_closure_invariance(const InqModel& m, InfoState s, const Formula& f);

// ── Tracing ─────────────────────────────────────────────────────────────────
// Clause-by-clause derivation for the CLI. Lines are indented by recursion
// depth; universal clauses report their first failing witness.

std::vector<std::string> supports_trace(const InqModel& m, InfoState s,
                                        const Formula& f, std::size_t max_lines = 200);

std::string state_to_string(const InqModel& m, InfoState s);

}  // namespace inq

#endif
