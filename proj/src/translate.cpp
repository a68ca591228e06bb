#include "inq/translate.hpp"

#include <stdexcept>

#include "inq/mutation.hpp"
#include "inq/support.hpp"

namespace inq {

namespace {

// Threads the fresh-variable counters. World ids start at 1 so that id 0
// stays reserved for the free variable of the world-pointed variant; state
// id 0 is the free variable of the state-pointed wrapper.
struct Translator {
    int next_world = 1;
    int next_state = 1;

    std::vector<int> fresh_worlds(int n) {
        std::vector<int> v(n);
        for (int& x : v) x = next_world++;
        return v;
    }
    std::vector<int> fresh_states(int n) {
        std::vector<int> v(n);
        for (int& x : v) x = next_state++;
        return v;
    }

    static FOFormula forall_worlds(const std::vector<int>& vars, FOFormula body) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = FOFormula::forall_w(*it, std::move(body));
        return body;
    }
    static FOFormula forall_states(const std::vector<int>& vars, FOFormula body) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = FOFormula::forall_s(*it, std::move(body));
        return body;
    }

    // f*(lambda): the state-pointed wrapper over a fresh tuple.
    FOFormula wrapper(const Formula& f, int lambda) {
        const int n = flatness_grade(f) + 1;
        std::vector<int> xs = fresh_worlds(n);
        std::vector<FOFormula> guard;
        guard.reserve(n);
        for (int x : xs) guard.push_back(FOFormula::mem(x, lambda));
        FOFormula body =
            FOFormula::fo_implies(FOFormula::fo_and(std::move(guard)), st(f, xs));
        return forall_worlds(xs, std::move(body));
    }

    FOFormula st(const Formula& f, const std::vector<int>& xs) {
        const int n = static_cast<int>(xs.size());
        switch (f.kind()) {
            case Conn::Atom: {
                std::vector<FOFormula> cs;
                cs.reserve(n);
                for (int x : xs) cs.push_back(FOFormula::prop(f.prop(), x));
                return FOFormula::fo_and(std::move(cs));
            }
            case Conn::Bottom: {
                std::vector<FOFormula> cs;
                cs.reserve(n);
                for (int x : xs) cs.push_back(FOFormula::fo_not(FOFormula::eq(x, x)));
                return FOFormula::fo_and(std::move(cs));
            }
            case Conn::And:
                return FOFormula::fo_and({st(f.lhs(), xs), st(f.rhs(), xs)});
            case Conn::InqDisj:
                return FOFormula::fo_or({st(f.lhs(), xs), st(f.rhs(), xs)});
            case Conn::Implies: {
                // quantify a same-length tuple ranging over {x1,...,xn}
                std::vector<int> ys = fresh_worlds(n);
                std::vector<FOFormula> range;
                range.reserve(n);
                for (int y : ys) {
                    std::vector<FOFormula> opts;
                    opts.reserve(n);
                    for (int x : xs) opts.push_back(FOFormula::eq(y, x));
                    range.push_back(FOFormula::fo_or(std::move(opts)));
                }
                FOFormula inner =
                    FOFormula::fo_implies(st(f.lhs(), ys), st(f.rhs(), ys));
                FOFormula body = FOFormula::fo_implies(
                    FOFormula::fo_and(std::move(range)), std::move(inner));
                return forall_worlds(ys, std::move(body));
            }
            case Conn::Box: {
                const int m = flatness_grade(f.lhs()) + 1;
                const bool swap = mutation::active(mutation::Fault::BoxGuardSwap);
                std::vector<FOFormula> conjuncts;
                conjuncts.reserve(n);
                for (int x : xs) {
                    std::vector<int> ys = fresh_worlds(m);
                    std::vector<int> mus = fresh_states(m);
                    std::vector<FOFormula> guard;
                    guard.reserve(2 * m);
                    for (int l = 0; l < m; ++l) {
                        if (swap) {
                            guard.push_back(FOFormula::emem(ys[l], mus[l]));
                            guard.push_back(FOFormula::mem(x, mus[l]));
                        } else {
                            guard.push_back(FOFormula::emem(x, mus[l]));
                            guard.push_back(FOFormula::mem(ys[l], mus[l]));
                        }
                    }
                    FOFormula body = FOFormula::fo_implies(
                        FOFormula::fo_and(std::move(guard)), st(f.lhs(), ys));
                    conjuncts.push_back(
                        forall_worlds(ys, forall_states(mus, std::move(body))));
                }
                return FOFormula::fo_and(std::move(conjuncts));
            }
            case Conn::BoxPlus: {
                std::vector<FOFormula> conjuncts;
                conjuncts.reserve(n);
                for (int x : xs) {
                    int mu = fresh_states(1)[0];
                    FOFormula body = FOFormula::fo_implies(FOFormula::emem(x, mu),
                                                           wrapper(f.lhs(), mu));
                    conjuncts.push_back(FOFormula::forall_s(mu, std::move(body)));
                }
                return FOFormula::fo_and(std::move(conjuncts));
            }
        }
        throw std::logic_error("unhandled connective");
    }
};

}  // namespace

FOFormula standard_translate(const Formula& f) {
    Translator tr;
    return tr.wrapper(f, 0);
}

FOFormula world_translate(const Formula& f) {
    Translator tr;
    return tr.st(f, {0});
}

int translation_tuple_length(const Formula& f) { return flatness_grade(f) + 1; }

bool check_fragment(const InqModel& m, InfoState s, const Formula& f,
                    EncodePolicy policy) {
    RelStruct r = encode(m, s, policy);
    bool fo = eval_fo_state(r, *r.point, standard_translate(f));
    return fo == supports(m, s, f);
}

bool check_fragment_world(const InqModel& m, int w, const Formula& f) {
    RelStruct r = encode(m, InfoState::singleton(w), EncodePolicy::Minimal);
    bool fo = eval_fo_world(r, w, world_translate(f));
    return fo == supports(m, InfoState::singleton(w), f);
}

// ── Relativization and the CNF rewrite ──────────────────────────────────────

FOFormula substate_relativize(const FOFormula& psi) {
    std::set<int> free = free_state_vars(psi);
    if (free.size() != 1)
        throw std::invalid_argument("expected exactly one free state variable, got " +
                                    std::to_string(free.size()));
    const int lambda = *free.begin();
    const int mu = var_counts(psi).state;  // one past every used id
    FOFormula body = rename_free_state_var(psi, lambda, mu);
    return FOFormula::forall_s(
        mu, FOFormula::fo_implies(FOFormula::subset(mu, lambda), std::move(body)));
}

FOFormula cnf_to_fo(const CnfInput& cnf) {
    std::vector<FOFormula> clauses;
    clauses.reserve(cnf.size());
    for (const CnfClause& clause : cnf) {
        std::vector<FOFormula> lits;
        bool has_positive = false;
        for (const CnfLiteral& lit : clause) {
            FOFormula t = standard_translate(lit.base);
            if (lit.positive) {
                has_positive = true;
                lits.push_back(std::move(t));
            } else {
                lits.push_back(FOFormula::fo_not(std::move(t)));
            }
        }
        if (!has_positive) lits.push_back(standard_translate(Formula::bottom()));
        clauses.push_back(FOFormula::fo_or(std::move(lits)));
    }
    return FOFormula::fo_and(std::move(clauses));
}

Formula rewrite_cnf_to_formula(const CnfInput& cnf) {
    Formula result;
    for (const CnfClause& clause : cnf) {
        Formula antecedent, consequent;
        for (const CnfLiteral& lit : clause) {
            if (lit.positive)
                consequent = consequent.valid() ? Formula::inq_or(consequent, lit.base)
                                                : lit.base;
            else
                antecedent = antecedent.valid() ? Formula::conj(antecedent, lit.base)
                                                : lit.base;
        }
        if (!antecedent.valid()) antecedent = Formula::top();
        if (!consequent.valid()) consequent = Formula::bottom();
        Formula impl = Formula::implies(antecedent, consequent);
        result = result.valid() ? Formula::conj(result, impl) : impl;
    }
    if (!result.valid()) result = Formula::top();
    return result;
}

}  // namespace inq
