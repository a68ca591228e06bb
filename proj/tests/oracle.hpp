#ifndef INQ_TESTS_ORACLE_HPP
#define INQ_TESTS_ORACLE_HPP

// Independent brute-force support evaluator used as the differential oracle
// for the frozen expected values in the unit suites. Deliberately primitive:
// states are std::set<int>, subsets are enumerated recursively, there is no
// memoization and no bitset arithmetic, and the implementation must not call
// into inq::supports.

#include <set>
#include <vector>

#include "inq/formula.hpp"
#include "inq/model.hpp"

namespace oracle {

using State = std::set<int>;

inline State to_set(inq::InfoState s, int n_worlds) {
    State out;
    for (int w = 0; w < n_worlds; ++w)
        if (s.contains(w)) out.insert(w);
    return out;
}

inline std::vector<State> all_subsets(const State& s) {
    std::vector<State> out{State{}};
    for (int w : s) {
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            State bigger = out[i];
            bigger.insert(w);
            out.push_back(bigger);
        }
    }
    return out;
}

inline bool supports(const inq::InqModel& m, const State& s, const inq::Formula& f) {
    using inq::Conn;
    switch (f.kind()) {
        case Conn::Atom: {
            for (int w : s)
                if (!m.valuation[f.prop()].contains(w)) return false;
            return true;
        }
        case Conn::Bottom:
            return s.empty();
        case Conn::And:
            return supports(m, s, f.lhs()) && supports(m, s, f.rhs());
        case Conn::InqDisj:
            return supports(m, s, f.lhs()) || supports(m, s, f.rhs());
        case Conn::Implies: {
            for (const State& t : all_subsets(s))
                if (supports(m, t, f.lhs()) && !supports(m, t, f.rhs())) return false;
            return true;
        }
        case Conn::Box: {
            for (int w : s) {
                State reach;
                for (const inq::InfoState& t : m.sigma[w])
                    for (int v = 0; v < m.n_worlds(); ++v)
                        if (t.contains(v)) reach.insert(v);
                if (!supports(m, reach, f.lhs())) return false;
            }
            return true;
        }
        case Conn::BoxPlus: {
            for (int w : s)
                for (const inq::InfoState& t : m.sigma[w])
                    if (!supports(m, to_set(t, m.n_worlds()), f.lhs())) return false;
            return true;
        }
    }
    return false;
}

inline bool supports(const inq::InqModel& m, inq::InfoState s, const inq::Formula& f) {
    return supports(m, to_set(s, m.n_worlds()), f);
}

}  // namespace oracle

#endif
