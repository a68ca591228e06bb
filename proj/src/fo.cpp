#include "inq/fo.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace inq {

// ── Constructors ────────────────────────────────────────────────────────────

namespace {
std::shared_ptr<const FOFormula::Node> leaf(FOKind k, int a, int b) {
    auto n = std::make_shared<FOFormula::Node>();
    n->kind = k;
    n->a = a;
    n->b = b;
    return n;
}
}  // namespace

FOFormula FOFormula::mem(int wv, int sv) { return FOFormula(leaf(FOKind::Mem, wv, sv)); }
FOFormula FOFormula::emem(int wv, int sv) { return FOFormula(leaf(FOKind::EMem, wv, sv)); }
FOFormula FOFormula::prop(int p, int wv) { return FOFormula(leaf(FOKind::Prop, p, wv)); }
FOFormula FOFormula::eq(int a, int b) { return FOFormula(leaf(FOKind::Eq, a, b)); }
FOFormula FOFormula::subset(int sub, int sup) {
    return FOFormula(leaf(FOKind::SubsetS, sub, sup));
}

FOFormula FOFormula::fo_not(FOFormula f) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::Not;
    n->kids.push_back(std::move(f));
    return FOFormula(std::move(n));
}

FOFormula FOFormula::fo_and(std::vector<FOFormula> kids) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::And;
    n->kids = std::move(kids);
    return FOFormula(std::move(n));
}

FOFormula FOFormula::fo_or(std::vector<FOFormula> kids) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::Or;
    n->kids = std::move(kids);
    return FOFormula(std::move(n));
}

FOFormula FOFormula::fo_implies(FOFormula a, FOFormula b) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::Implies;
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return FOFormula(std::move(n));
}

FOFormula FOFormula::forall_w(int v, FOFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::ForallW;
    n->a = v;
    n->kids.push_back(std::move(body));
    return FOFormula(std::move(n));
}
FOFormula FOFormula::exists_w(int v, FOFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::ExistsW;
    n->a = v;
    n->kids.push_back(std::move(body));
    return FOFormula(std::move(n));
}
FOFormula FOFormula::forall_s(int v, FOFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::ForallS;
    n->a = v;
    n->kids.push_back(std::move(body));
    return FOFormula(std::move(n));
}
FOFormula FOFormula::exists_s(int v, FOFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = FOKind::ExistsS;
    n->a = v;
    n->kids.push_back(std::move(body));
    return FOFormula(std::move(n));
}

// ── Variable bookkeeping ────────────────────────────────────────────────────

static void count_rec(const FOFormula& f, VarCounts& vc) {
    const auto& n = f.node();
    switch (n.kind) {
        case FOKind::Mem:
        case FOKind::EMem:
            vc.world = std::max(vc.world, n.a + 1);
            vc.state = std::max(vc.state, n.b + 1);
            break;
        case FOKind::Prop:
            vc.world = std::max(vc.world, n.b + 1);
            break;
        case FOKind::Eq:
            vc.world = std::max(vc.world, std::max(n.a, n.b) + 1);
            break;
        case FOKind::SubsetS:
            vc.state = std::max(vc.state, std::max(n.a, n.b) + 1);
            break;
        case FOKind::ForallW:
        case FOKind::ExistsW:
            vc.world = std::max(vc.world, n.a + 1);
            break;
        case FOKind::ForallS:
        case FOKind::ExistsS:
            vc.state = std::max(vc.state, n.a + 1);
            break;
        default:
            break;
    }
    for (const auto& k : n.kids) count_rec(k, vc);
}

VarCounts var_counts(const FOFormula& f) {
    VarCounts vc;
    count_rec(f, vc);
    return vc;
}

static void free_rec(const FOFormula& f, std::set<int>& out_w, std::set<int>& out_s,
                     std::vector<int>& bound_w, std::vector<int>& bound_s) {
    const auto& n = f.node();
    auto w_free = [&](int v) {
        if (v >= 0 && std::find(bound_w.begin(), bound_w.end(), v) == bound_w.end())
            out_w.insert(v);
    };
    auto s_free = [&](int v) {
        if (v >= 0 && std::find(bound_s.begin(), bound_s.end(), v) == bound_s.end())
            out_s.insert(v);
    };
    switch (n.kind) {
        case FOKind::Mem:
        case FOKind::EMem:
            w_free(n.a);
            s_free(n.b);
            break;
        case FOKind::Prop: w_free(n.b); break;
        case FOKind::Eq: w_free(n.a); w_free(n.b); break;
        case FOKind::SubsetS: s_free(n.a); s_free(n.b); break;
        case FOKind::ForallW:
        case FOKind::ExistsW:
            bound_w.push_back(n.a);
            free_rec(n.kids[0], out_w, out_s, bound_w, bound_s);
            bound_w.pop_back();
            return;
        case FOKind::ForallS:
        case FOKind::ExistsS:
            bound_s.push_back(n.a);
            free_rec(n.kids[0], out_w, out_s, bound_w, bound_s);
            bound_s.pop_back();
            return;
        default:
            break;
    }
    for (const auto& k : n.kids) free_rec(k, out_w, out_s, bound_w, bound_s);
}

std::set<int> free_state_vars(const FOFormula& f) {
    std::set<int> w, s;
    std::vector<int> bw, bs;
    free_rec(f, w, s, bw, bs);
    return s;
}

std::set<int> free_world_vars(const FOFormula& f) {
    std::set<int> w, s;
    std::vector<int> bw, bs;
    free_rec(f, w, s, bw, bs);
    return w;
}

// ── Evaluation ──────────────────────────────────────────────────────────────

namespace {

struct Eval {
    const RelStruct& r;
    FOAssignment& asg;

    int world_of(int var) const {
        int v = var >= 0 && var < static_cast<int>(asg.world.size()) ? asg.world[var] : -1;
        if (v < 0) throw std::invalid_argument("unbound world variable");
        return v;
    }
    int state_of(int var) const {
        int v = var >= 0 && var < static_cast<int>(asg.state.size()) ? asg.state[var] : -1;
        if (v < 0) throw std::invalid_argument("unbound state variable");
        return v;
    }

    bool go(const FOFormula& f) {
        const auto& n = f.node();
        switch (n.kind) {
            case FOKind::Mem:
                return r.states[state_of(n.b)].contains(world_of(n.a));
            case FOKind::EMem:
                return r.in_assignment(world_of(n.a), state_of(n.b));
            case FOKind::Prop:
                return r.props[n.a].contains(world_of(n.b));
            case FOKind::Eq:
                return world_of(n.a) == world_of(n.b);
            case FOKind::SubsetS:
                // first-order definition of inclusion, folded over the bitsets
                return r.states[state_of(n.a)].subset_of(r.states[state_of(n.b)]);
            case FOKind::Not:
                return !go(n.kids[0]);
            case FOKind::And:
                for (const auto& k : n.kids)
                    if (!go(k)) return false;
                return true;
            case FOKind::Or:
                for (const auto& k : n.kids)
                    if (go(k)) return true;
                return false;
            case FOKind::Implies:
                return !go(n.kids[0]) || go(n.kids[1]);
            case FOKind::ForallW: {
                int save = n.a < static_cast<int>(asg.world.size()) ? asg.world[n.a] : -1;
                asg.ensure(n.a + 1, 0);
                for (int w = 0; w < r.n_worlds(); ++w) {
                    asg.world[n.a] = w;
                    if (!go(n.kids[0])) { asg.world[n.a] = save; return false; }
                }
                asg.world[n.a] = save;
                return true;
            }
            case FOKind::ExistsW: {
                int save = n.a < static_cast<int>(asg.world.size()) ? asg.world[n.a] : -1;
                asg.ensure(n.a + 1, 0);
                for (int w = 0; w < r.n_worlds(); ++w) {
                    asg.world[n.a] = w;
                    if (go(n.kids[0])) { asg.world[n.a] = save; return true; }
                }
                asg.world[n.a] = save;
                return false;
            }
            case FOKind::ForallS: {
                int save = n.a < static_cast<int>(asg.state.size()) ? asg.state[n.a] : -1;
                asg.ensure(0, n.a + 1);
                for (int s = 0; s < r.n_states(); ++s) {
                    asg.state[n.a] = s;
                    if (!go(n.kids[0])) { asg.state[n.a] = save; return false; }
                }
                asg.state[n.a] = save;
                return true;
            }
            case FOKind::ExistsS: {
                int save = n.a < static_cast<int>(asg.state.size()) ? asg.state[n.a] : -1;
                asg.ensure(0, n.a + 1);
                for (int s = 0; s < r.n_states(); ++s) {
                    asg.state[n.a] = s;
                    if (go(n.kids[0])) { asg.state[n.a] = save; return true; }
                }
                asg.state[n.a] = save;
                return false;
            }
        }
        return false;
    }
};

}  // namespace

bool eval_fo(const RelStruct& r, FOAssignment& asg, const FOFormula& f) {
    VarCounts vc = var_counts(f);
    asg.ensure(vc.world, vc.state);
    Eval e{r, asg};
    return e.go(f);
}

bool eval_fo_state(const RelStruct& r, int state_index, const FOFormula& f, int state_var) {
    if (state_index < 0 || state_index >= r.n_states())
        throw std::invalid_argument("state index out of range");
    FOAssignment asg;
    asg.ensure(0, state_var + 1);
    asg.state[state_var] = state_index;
    return eval_fo(r, asg, f);
}

bool eval_fo_world(const RelStruct& r, int world_index, const FOFormula& f, int world_var) {
    if (world_index < 0 || world_index >= r.n_worlds())
        throw std::invalid_argument("world index out of range");
    FOAssignment asg;
    asg.ensure(world_var + 1, 0);
    asg.world[world_var] = world_index;
    return eval_fo(r, asg, f);
}

// ── Renaming ────────────────────────────────────────────────────────────────

static FOFormula rename_rec(const FOFormula& f, int from, int to) {
    const auto& n = f.node();
    switch (n.kind) {
        case FOKind::Mem:
            return n.b == from ? FOFormula::mem(n.a, to) : f;
        case FOKind::EMem:
            return n.b == from ? FOFormula::emem(n.a, to) : f;
        case FOKind::Prop:
        case FOKind::Eq:
            return f;
        case FOKind::SubsetS: {
            int a = n.a == from ? to : n.a;
            int b = n.b == from ? to : n.b;
            return FOFormula::subset(a, b);
        }
        case FOKind::ForallS:
        case FOKind::ExistsS:
            if (n.a == from) return f;  // shadowed below this binder
            break;
        default:
            break;
    }
    std::vector<FOFormula> kids;
    kids.reserve(n.kids.size());
    for (const auto& k : n.kids) kids.push_back(rename_rec(k, from, to));
    switch (n.kind) {
        case FOKind::Not: return FOFormula::fo_not(std::move(kids[0]));
        case FOKind::And: return FOFormula::fo_and(std::move(kids));
        case FOKind::Or: return FOFormula::fo_or(std::move(kids));
        case FOKind::Implies:
            return FOFormula::fo_implies(std::move(kids[0]), std::move(kids[1]));
        case FOKind::ForallW: return FOFormula::forall_w(n.a, std::move(kids[0]));
        case FOKind::ExistsW: return FOFormula::exists_w(n.a, std::move(kids[0]));
        case FOKind::ForallS: return FOFormula::forall_s(n.a, std::move(kids[0]));
        case FOKind::ExistsS: return FOFormula::exists_s(n.a, std::move(kids[0]));
        default: return f;
    }
}

FOFormula rename_free_state_var(const FOFormula& f, int from, int to) {
    return rename_rec(f, from, to);
}

// ── Printing ────────────────────────────────────────────────────────────────
// Precedence: ~ 4, & 3, | 2, -> 1 (right-associative), quantifier bodies are
// parenthesised when compound.

namespace {

std::string wname(int id) { return id == 0 ? "x" : "x" + std::to_string(id); }
std::string sname(int id) { return id == 0 ? "L" : "M" + std::to_string(id); }

std::string pname(const Signature& sig, int prop) {
    std::string n = sig.name(prop);
    if (!n.empty()) n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
    return n;
}

int fo_prec(const FOFormula& f) {
    const auto& n = f.node();
    switch (n.kind) {
        case FOKind::Implies: return 1;
        case FOKind::Or: return n.kids.empty() ? 5 : n.kids.size() == 1 ? fo_prec(n.kids[0]) : 2;
        case FOKind::And: return n.kids.empty() ? 5 : n.kids.size() == 1 ? fo_prec(n.kids[0]) : 3;
        case FOKind::Not: return 4;
        // infix relation atoms read badly unparenthesised under ~
        case FOKind::Eq:
        case FOKind::Mem:
        case FOKind::SubsetS:
            return 4;
        case FOKind::ForallW:
        case FOKind::ExistsW:
        case FOKind::ForallS:
        case FOKind::ExistsS:
            return 0;
        default:
            return 5;
    }
}

void print_rec(const FOFormula& f, const Signature& sig, int min_prec, std::string& out) {
    const auto& n = f.node();
    // unwrap singleton conjunctions/disjunctions
    if ((n.kind == FOKind::And || n.kind == FOKind::Or) && n.kids.size() == 1) {
        print_rec(n.kids[0], sig, min_prec, out);
        return;
    }
    int prec = fo_prec(f);
    bool paren = prec < min_prec;
    if (paren) out += '(';
    switch (n.kind) {
        case FOKind::Mem: out += wname(n.a) + " in " + sname(n.b); break;
        case FOKind::EMem: out += "E(" + wname(n.a) + ", " + sname(n.b) + ")"; break;
        case FOKind::Prop: out += pname(sig, n.a) + "(" + wname(n.b) + ")"; break;
        case FOKind::Eq: out += wname(n.a) + " = " + wname(n.b); break;
        case FOKind::SubsetS: out += sname(n.a) + " sub " + sname(n.b); break;
        case FOKind::Not:
            out += "~";
            print_rec(n.kids[0], sig, 5, out);
            break;
        case FOKind::And:
            if (n.kids.empty()) { out += "true"; break; }
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                if (i) out += " & ";
                print_rec(n.kids[i], sig, 4, out);
            }
            break;
        case FOKind::Or:
            if (n.kids.empty()) { out += "false"; break; }
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                if (i) out += " | ";
                print_rec(n.kids[i], sig, 3, out);
            }
            break;
        case FOKind::Implies:
            print_rec(n.kids[0], sig, 2, out);
            out += " -> ";
            print_rec(n.kids[1], sig, 1, out);
            break;
        case FOKind::ForallW:
        case FOKind::ExistsW:
        case FOKind::ForallS:
        case FOKind::ExistsS: {
            bool is_forall = n.kind == FOKind::ForallW || n.kind == FOKind::ForallS;
            bool world = n.kind == FOKind::ForallW || n.kind == FOKind::ExistsW;
            out += is_forall ? "forall " : "exists ";
            out += world ? wname(n.a) : sname(n.a);
            out += ". ";
            const FOFormula& body = n.kids[0];
            if (fo_prec(body) >= 5 || fo_prec(body) == 0) {
                print_rec(body, sig, 0, out);
            } else {
                out += '(';
                print_rec(body, sig, 0, out);
                out += ')';
            }
            break;
        }
    }
    if (paren) out += ')';
}

}  // namespace

std::string print_fo(const FOFormula& f, const Signature& sig) {
    std::string out;
    print_rec(f, sig, 0, out);
    return out;
}

}  // namespace inq
