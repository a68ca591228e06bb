#ifndef INQ_FORMULA_HPP
#define INQ_FORMULA_HPP

// ── InqML formulas ───────────────────────────────────────────────────────────
//
// The core grammar has exactly seven constructors:
//
//     phi ::= p | bot | phi & phi | phi -> phi | phi vv phi
//           | [] phi | [+] phi
//
// where `vv` is inquisitive disjunction, `[]` the universal modality and
// `[+]` the inquisitive modality. Negation, classical disjunction, diamond,
// top and the question operator are surface sugar, removed at parse time:
//
//     ~phi       ==  phi -> bot
//     phi \/ psi ==  ~(~phi & ~psi)
//     <> phi     ==  ~[] ~phi
//     top        ==  bot -> bot
//     ? phi      ==  phi vv ~phi
//
// Every algorithm downstream (support evaluation, flatness, translation)
// works on the seven core constructors only.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "inq/signature.hpp"

namespace inq {

enum class Conn : std::uint8_t { Atom, Bottom, And, Implies, InqDisj, Box, BoxPlus };

class Formula {
public:
    struct Node {
        Conn kind;
        int prop = -1;  // Atom only
        std::shared_ptr<const Node> lhs, rhs;
    };

    Formula() = default;  // empty handle; only produced by default construction

    bool valid() const { return node_ != nullptr; }
    Conn kind() const { return node_->kind; }
    int prop() const { return node_->prop; }
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }
    const Node* raw() const { return node_.get(); }

    // Core constructors.
    static Formula atom(int prop);
    static Formula bottom();
    static Formula conj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula inq_or(Formula a, Formula b);
    static Formula box(Formula a);
    static Formula box_plus(Formula a);

    // Derived forms, desugared on construction.
    static Formula neg(Formula a) { return implies(a, bottom()); }
    static Formula top() { return implies(bottom(), bottom()); }
    static Formula classical_or(Formula a, Formula b) {
        return neg(conj(neg(a), neg(b)));
    }
    static Formula diamond(Formula a) { return neg(box(neg(a))); }
    static Formula whether(Formula a) { return inq_or(a, neg(a)); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Syntactic measures driving the graded evaluation strategy and the
// standard translation. flatness_grade is 0 on atoms, bottom and modal
// formulas, max over conjunctions, the consequent's grade on implications,
// and sum-plus-one on inquisitive disjunctions.
int flatness_grade(const Formula& f);

// Maximum nesting of [] and [+].
int modal_depth(const Formula& f);

// Number of inquisitive-disjunction nodes (upper bound for flatness_grade).
int inq_disj_count(const Formula& f);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

// Parses against a fixed signature; unknown identifiers are errors.
Formula parse(const std::string& text, const Signature& sig);

// Parses and registers unknown identifiers in order of first appearance.
Formula parse_extend(const std::string& text, Signature& sig);

// Canonical printing of a core AST with minimal parentheses.
// parse(print(f)) == f.
std::string print(const Formula& f, const Signature& sig);

}  // namespace inq

#endif
