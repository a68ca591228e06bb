#include "inq/support.hpp"

#include <unordered_map>

#include "inq/mutation.hpp"

namespace inq {

namespace {

struct MemoKey {
    const Formula::Node* node;
    std::uint64_t bits;
    bool operator==(const MemoKey& o) const { return node == o.node && bits == o.bits; }
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::size_t h = std::hash<const void*>()(k.node);
        h ^= std::hash<std::uint64_t>()(k.bits) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

class Evaluator {
public:
    explicit Evaluator(const InqModel& m) : m_(m) {}

    bool eval(InfoState s, const Formula& f) {
        MemoKey key{f.raw(), s.bits};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = compute(s, f);
        memo_.emplace(key, r);
        return r;
    }

private:
    bool compute(InfoState s, const Formula& f) {
        switch (f.kind()) {
            case Conn::Atom:
                return s.subset_of(m_.valuation[f.prop()]);
            case Conn::Bottom:
                return s.empty_state();
            case Conn::And:
                return eval(s, f.lhs()) && eval(s, f.rhs());
            case Conn::InqDisj:
                return eval(s, f.lhs()) || eval(s, f.rhs());
            case Conn::Implies: {
                const bool strict = mutation::active(mutation::Fault::ImplicationStrict);
                bool ok = true;
                for_each_subset(s, [&](InfoState t) {
                    if (!ok) return;
                    if (strict && t == s) return;
                    if (eval(t, f.lhs()) && !eval(t, f.rhs())) ok = false;
                });
                return ok;
            }
            case Conn::Box: {
                for (int w = 0; w < m_.n_worlds(); ++w)
                    if (s.contains(w) && !eval(kripke_successors(m_, w), f.lhs()))
                        return false;
                return true;
            }
            case Conn::BoxPlus: {
                for (int w = 0; w < m_.n_worlds(); ++w) {
                    if (!s.contains(w)) continue;
                    for (const InfoState& t : m_.sigma[w])
                        if (!eval(t, f.lhs())) return false;
                }
                return true;
            }
        }
        return false;
    }

    const InqModel& m_;
    std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

}  // namespace

bool supports(const InqModel& m, InfoState s, const Formula& f) {
    Evaluator ev(m);
    return ev.eval(s, f);
}

bool supports_graded(const InqModel& m, InfoState s, const Formula& f) {
    const int bound = flatness_grade(f) + 1;
    bool ok = true;
    for_each_subset(s, [&](InfoState t) {
        if (!ok || t.count() > bound) return;
        if (!supports(m, t, f)) ok = false;
    });
    return ok;
}

bool supports(const InqModel& m, InfoState s, const Formula& f, Strategy st) {
    return st == Strategy::Naive ? supports(m, s, f) : supports_graded(m, s, f);
}

bool check_persistency(const InqModel& m, InfoState s, const Formula& f) {
    Evaluator ev(m);
    if (!ev.eval(s, f)) return true;
    bool ok = true;
    for_each_subset(s, [&](InfoState t) {
        if (ok && !ev.eval(t, f)) ok = false;
    });
    return ok;
}

bool check_closure_invariance(const InqModel& m, InfoState s, const Formula& f) {
    return supports(m, s, f) == supports(inquisitive_closure(m), s, f);
}

// ── Tracing ─────────────────────────────────────────────────────────────────

std::string state_to_string(const InqModel& m, InfoState s) {
    std::string out = "{";
    bool first = true;
    for (int w = 0; w < m.n_worlds(); ++w) {
        if (!s.contains(w)) continue;
        if (!first) out += ",";
        out += m.world_names[w];
        first = false;
    }
    return out + "}";
}

namespace {

struct Tracer {
    const InqModel& m;
    Evaluator ev;
    std::vector<std::string>& lines;
    std::size_t max_lines;
    bool truncated = false;

    Tracer(const InqModel& mm, std::vector<std::string>& ls, std::size_t cap)
        : m(mm), ev(mm), lines(ls), max_lines(cap) {}

    void emit(int depth, const std::string& text) {
        if (lines.size() >= max_lines) { truncated = true; return; }
        lines.push_back(std::string(2 * depth, ' ') + text);
    }

    bool go(int depth, InfoState s, const Formula& f) {
        bool r = ev.eval(s, f);
        std::string head = state_to_string(m, s) + " |= " + print(f, m.sig) + "  : " +
                           (r ? "yes" : "no");
        switch (f.kind()) {
            case Conn::Atom:
            case Conn::Bottom:
                emit(depth, head);
                return r;
            case Conn::And:
            case Conn::InqDisj:
                emit(depth, head);
                go(depth + 1, s, f.lhs());
                go(depth + 1, s, f.rhs());
                return r;
            case Conn::Implies: {
                emit(depth, head);
                // show the first failing subset, or note that all subsets pass
                bool found = false;
                for_each_subset(s, [&](InfoState t) {
                    if (found) return;
                    if (ev.eval(t, f.lhs()) && !ev.eval(t, f.rhs())) {
                        found = true;
                        emit(depth + 1, "failing subset " + state_to_string(m, t) + ":");
                        go(depth + 2, t, f.lhs());
                        go(depth + 2, t, f.rhs());
                    }
                });
                if (!found)
                    emit(depth + 1, "every subset supporting the antecedent supports the consequent");
                return r;
            }
            case Conn::Box: {
                emit(depth, head);
                for (int w = 0; w < m.n_worlds(); ++w) {
                    if (!s.contains(w)) continue;
                    emit(depth + 1, "successors of " + m.world_names[w] + " = " +
                                        state_to_string(m, kripke_successors(m, w)) + ":");
                    go(depth + 2, kripke_successors(m, w), f.lhs());
                }
                return r;
            }
            case Conn::BoxPlus: {
                emit(depth, head);
                for (int w = 0; w < m.n_worlds(); ++w) {
                    if (!s.contains(w)) continue;
                    for (const InfoState& t : m.sigma[w]) {
                        emit(depth + 1, "state " + state_to_string(m, t) + " assigned to " +
                                            m.world_names[w] + ":");
                        go(depth + 2, t, f.lhs());
                    }
                }
                return r;
            }
        }
        return r;
    }
};

}  // namespace

std::vector<std::string> supports_trace(const InqModel& m, InfoState s,
                                        const Formula& f, std::size_t max_lines) {
    std::vector<std::string> lines;
    Tracer tr(m, lines, max_lines);
    tr.go(0, s, f);
    if (tr.truncated) lines.push_back("... (trace truncated)");
    return lines;
}

}  // namespace inq
