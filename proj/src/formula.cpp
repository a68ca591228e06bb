#include "inq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "inq/mutation.hpp"

namespace inq {

// ── Signature ───────────────────────────────────────────────────────────────

Signature::Signature(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate proposition name: " + names_[i]);
}

std::optional<int> Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

int Signature::add(const std::string& name) {
    if (auto i = index_of(name)) return *i;
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
}

// ── Constructors ────────────────────────────────────────────────────────────

Formula Formula::atom(int prop) {
    if (prop < 0) throw std::invalid_argument("negative proposition index");
    auto n = std::make_shared<Node>();
    n->kind = Conn::Atom;
    n->prop = prop;
    return Formula(std::move(n));
}

Formula Formula::bottom() {
    auto n = std::make_shared<Node>();
    n->kind = Conn::Bottom;
    return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Conn::And;
    n->lhs = a.node_;
    n->rhs = b.node_;
    if (!n->lhs || !n->rhs) throw std::invalid_argument("empty formula handle");
    return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Conn::Implies;
    n->lhs = a.node_;
    n->rhs = b.node_;
    if (!n->lhs || !n->rhs) throw std::invalid_argument("empty formula handle");
    return Formula(std::move(n));
}

Formula Formula::inq_or(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Conn::InqDisj;
    n->lhs = a.node_;
    n->rhs = b.node_;
    if (!n->lhs || !n->rhs) throw std::invalid_argument("empty formula handle");
    return Formula(std::move(n));
}

Formula Formula::box(Formula a) {
    auto n = std::make_shared<Node>();
    n->kind = Conn::Box;
    n->lhs = a.node_;
    if (!n->lhs) throw std::invalid_argument("empty formula handle");
    return Formula(std::move(n));
}

Formula Formula::box_plus(Formula a) {
    auto n = std::make_shared<Node>();
    n->kind = Conn::BoxPlus;
    n->lhs = a.node_;
    if (!n->lhs) throw std::invalid_argument("empty formula handle");
    return Formula(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
    const Formula::Node* x = a.raw();
    const Formula::Node* y = b.raw();
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->prop != y->prop) return false;
    if (static_cast<bool>(x->lhs) != static_cast<bool>(y->lhs)) return false;
    if (x->lhs && !(a.lhs() == b.lhs())) return false;
    if (static_cast<bool>(x->rhs) != static_cast<bool>(y->rhs)) return false;
    if (x->rhs && !(a.rhs() == b.rhs())) return false;
    return true;
}

// ── Measures ────────────────────────────────────────────────────────────────

int flatness_grade(const Formula& f) {
    using mutation::Fault;
    switch (f.kind()) {
        case Conn::Atom:
        case Conn::Bottom:
        case Conn::Box:
        case Conn::BoxPlus:
            return 0;
        case Conn::And:
            return std::max(flatness_grade(f.lhs()), flatness_grade(f.rhs()));
        case Conn::Implies:
            if (mutation::active(Fault::FlatImpliesZero)) return 0;
            return flatness_grade(f.rhs());
        case Conn::InqDisj: {
            int s = flatness_grade(f.lhs()) + flatness_grade(f.rhs());
            if (mutation::active(Fault::InqDisjDropPlusOne)) return s;
            return s + 1;
        }
    }
    return 0;
}

int modal_depth(const Formula& f) {
    switch (f.kind()) {
        case Conn::Atom:
        case Conn::Bottom:
            return 0;
        case Conn::And:
        case Conn::Implies:
        case Conn::InqDisj:
            return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
        case Conn::Box:
        case Conn::BoxPlus:
            return modal_depth(f.lhs()) + 1;
    }
    return 0;
}

int inq_disj_count(const Formula& f) {
    switch (f.kind()) {
        case Conn::Atom:
        case Conn::Bottom:
            return 0;
        case Conn::And:
        case Conn::Implies:
            return inq_disj_count(f.lhs()) + inq_disj_count(f.rhs());
        case Conn::InqDisj:
            return inq_disj_count(f.lhs()) + inq_disj_count(f.rhs()) + 1;
        case Conn::Box:
        case Conn::BoxPlus:
            return inq_disj_count(f.lhs());
    }
    return 0;
}

// ── Parser ──────────────────────────────────────────────────────────────────
//
// Recursive descent over the precedence ladder (tightest to loosest):
//   unary (~ [] [+] <> ?)   >   &   >   vv   >   \/   >   ->
// with -> right-associative and the other binaries left-associative.

namespace {

enum class Tok {
    End, Ident, Bot, Top, LPar, RPar,
    Neg, Box, BoxPlus, Diamond, Question,
    And, InqDisj, ClassOr, Arrow
};

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::string ident;
    std::size_t tok_pos = 0;

    explicit Lexer(const std::string& t) : text(t) { next(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_pos); }

    void next() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tok_pos = pos;
        if (pos >= text.size()) { tok = Tok::End; return; }
        char c = text[pos];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            ident = text.substr(start, pos - start);
            if (ident == "bot") tok = Tok::Bot;
            else if (ident == "top") tok = Tok::Top;
            else if (ident == "vv") tok = Tok::InqDisj;
            else tok = Tok::Ident;
            return;
        }
        switch (c) {
            case '(': tok = Tok::LPar; ++pos; return;
            case ')': tok = Tok::RPar; ++pos; return;
            case '~': tok = Tok::Neg; ++pos; return;
            case '?': tok = Tok::Question; ++pos; return;
            case '&': tok = Tok::And; ++pos; return;
            case '[':
                if (text.compare(pos, 2, "[]") == 0) { tok = Tok::Box; pos += 2; return; }
                if (text.compare(pos, 3, "[+]") == 0) { tok = Tok::BoxPlus; pos += 3; return; }
                throw ParseError("expected \"[]\" or \"[+]\"", pos);
            case '<':
                if (text.compare(pos, 2, "<>") == 0) { tok = Tok::Diamond; pos += 2; return; }
                throw ParseError("expected \"<>\"", pos);
            case '\\':
                if (text.compare(pos, 2, "\\/") == 0) { tok = Tok::ClassOr; pos += 2; return; }
                throw ParseError("expected \"\\/\"", pos);
            case '-':
                if (text.compare(pos, 2, "->") == 0) { tok = Tok::Arrow; pos += 2; return; }
                throw ParseError("expected \"->\"", pos);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
};

struct Parser {
    Lexer lex;
    Signature* open_sig;        // non-null: register unknown idents
    const Signature& sig;

    Parser(const std::string& text, const Signature& s, Signature* open)
        : lex(text), open_sig(open), sig(s) {}

    Formula parse_full() {
        Formula f = parse_implies();
        if (lex.tok != Tok::End) lex.fail("trailing input");
        return f;
    }

    Formula parse_implies() {
        Formula lhs = parse_class_or();
        if (lex.tok == Tok::Arrow) {
            lex.next();
            Formula rhs = parse_implies();  // right-associative
            return Formula::implies(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_class_or() {
        Formula f = parse_inq_disj();
        while (lex.tok == Tok::ClassOr) {
            lex.next();
            f = Formula::classical_or(f, parse_inq_disj());
        }
        return f;
    }

    Formula parse_inq_disj() {
        Formula f = parse_and();
        while (lex.tok == Tok::InqDisj) {
            lex.next();
            f = Formula::inq_or(f, parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (lex.tok == Tok::And) {
            lex.next();
            f = Formula::conj(f, parse_unary());
        }
        return f;
    }

    Formula parse_unary() {
        switch (lex.tok) {
            case Tok::Neg: lex.next(); return Formula::neg(parse_unary());
            case Tok::Box: lex.next(); return Formula::box(parse_unary());
            case Tok::BoxPlus: lex.next(); return Formula::box_plus(parse_unary());
            case Tok::Diamond: lex.next(); return Formula::diamond(parse_unary());
            case Tok::Question: lex.next(); return Formula::whether(parse_unary());
            default: return parse_atom();
        }
    }

    Formula parse_atom() {
        switch (lex.tok) {
            case Tok::Bot: lex.next(); return Formula::bottom();
            case Tok::Top: lex.next(); return Formula::top();
            case Tok::LPar: {
                lex.next();
                Formula f = parse_implies();
                if (lex.tok != Tok::RPar) lex.fail("expected ')'");
                lex.next();
                return f;
            }
            case Tok::Ident: {
                std::string name = lex.ident;
                std::size_t at = lex.tok_pos;
                lex.next();
                if (auto i = sig.index_of(name)) return Formula::atom(*i);
                if (open_sig) return Formula::atom(open_sig->add(name));
                throw ParseError("unknown proposition name \"" + name + "\"", at);
            }
            default:
                lex.fail("expected a formula");
        }
    }
};

}  // namespace

Formula parse(const std::string& text, const Signature& sig) {
    Parser p(text, sig, nullptr);
    return p.parse_full();
}

Formula parse_extend(const std::string& text, Signature& sig) {
    Parser p(text, sig, &sig);
    return p.parse_full();
}

// ── Printer ─────────────────────────────────────────────────────────────────
//
// Precedence levels: -> 0, \/ 1 (never printed: desugared), vv 2, & 3,
// unary 4, atoms 5. A subterm is parenthesised when its level is below the
// level its context requires.

namespace {

int print_prec(Conn k) {
    switch (k) {
        case Conn::Implies: return 0;
        case Conn::InqDisj: return 2;
        case Conn::And: return 3;
        case Conn::Box:
        case Conn::BoxPlus: return 4;
        case Conn::Atom:
        case Conn::Bottom: return 5;
    }
    return 5;
}

void print_rec(const Formula& f, const Signature& sig, int min_prec, std::string& out) {
    int prec = print_prec(f.kind());
    bool paren = prec < min_prec;
    if (paren) out += '(';
    switch (f.kind()) {
        case Conn::Atom: out += sig.name(f.prop()); break;
        case Conn::Bottom: out += "bot"; break;
        case Conn::And:
            print_rec(f.lhs(), sig, 3, out);
            out += " & ";
            print_rec(f.rhs(), sig, 4, out);
            break;
        case Conn::InqDisj:
            print_rec(f.lhs(), sig, 2, out);
            out += " vv ";
            print_rec(f.rhs(), sig, 3, out);
            break;
        case Conn::Implies:
            print_rec(f.lhs(), sig, 1, out);
            out += " -> ";
            print_rec(f.rhs(), sig, 0, out);
            break;
        case Conn::Box:
            out += "[] ";
            print_rec(f.lhs(), sig, 4, out);
            break;
        case Conn::BoxPlus:
            out += "[+] ";
            print_rec(f.lhs(), sig, 4, out);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f, const Signature& sig) {
    std::string out;
    print_rec(f, sig, 0, out);
    return out;
}

}  // namespace inq
