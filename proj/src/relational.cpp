#include "inq/relational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "inq/config.hpp"

namespace inq {

bool RelStruct::in_assignment(int w, int state_index) const {
    const auto& row = E[w];
    return std::binary_search(row.begin(), row.end(), state_index);
}

namespace {
RelVerdict rel_invalid(std::string reason, int world = -1, int state_index = -1) {
    RelVerdict v;
    v.level = RelVerdict::Invalid;
    v.reason = std::move(reason);
    v.world = world;
    v.state_index = state_index;
    return v;
}
}  // namespace

RelVerdict validate_relational(const RelStruct& r) {
    const int n = r.n_worlds();
    if (n == 0) return rel_invalid("no worlds");
    if (static_cast<int>(r.E.size()) != n)
        return rel_invalid("assignment row count differs from world count");
    if (static_cast<int>(r.props.size()) != r.sig.size())
        return rel_invalid("predicate count differs from signature");
    const InfoState uni = InfoState::all(n);
    for (const InfoState& s : r.states)
        if (!s.subset_of(uni)) return rel_invalid("state bit outside world range");
    for (const InfoState& p : r.props)
        if (!p.subset_of(uni)) return rel_invalid("predicate bit outside world range");
    if (r.point && (*r.point < 0 || *r.point >= r.n_states()))
        return rel_invalid("distinguished state index out of range");

    // (i) extensionality
    std::set<std::uint64_t> seen;
    for (int i = 0; i < r.n_states(); ++i) {
        if (!seen.insert(r.states[i].bits).second) {
            return rel_invalid("extensionality", -1, i);
        }
    }

    // (ii) non-emptiness of every assignment
    for (int w = 0; w < n; ++w) {
        if (r.E[w].empty()) {
            return rel_invalid("empty-assignment", w);
        }
        for (std::size_t i = 0; i < r.E[w].size(); ++i) {
            int idx = r.E[w][i];
            if (idx < 0 || idx >= r.n_states())
                return rel_invalid("assignment index out of range", w);
            if (i + 1 < r.E[w].size() && r.E[w][i] >= r.E[w][i + 1])
                return rel_invalid("assignment row not sorted", w);
        }
    }

    // (iii) downward closure within the second sort
    std::map<std::uint64_t, int> index_of;
    for (int i = 0; i < r.n_states(); ++i) index_of[r.states[i].bits] = i;
    for (int w = 0; w < n; ++w) {
        for (int idx : r.E[w]) {
            bool closed = true;
            InfoState missing;
            for_each_subset(r.states[idx], [&](InfoState a) {
                if (!closed) return;
                auto it = index_of.find(a.bits);
                if (it == index_of.end() || !r.in_assignment(w, it->second)) {
                    closed = false;
                    missing = a;
                }
            });
            if (!closed) {
                RelVerdict v;
                v.level = RelVerdict::Pseudo;
                v.reason = "downward-closure";
                v.world = w;
                v.state_index = idx;
                v.missing_subset = missing;
                return v;
            }
        }
    }
    RelVerdict ok;
    ok.level = RelVerdict::Model;
    return ok;
}

RelStruct encode(const InqModel& m, InfoState point, EncodePolicy policy) {
    if (!point.subset_of(m.universe()))
        throw std::invalid_argument("distinguished state outside world range");

    std::set<std::uint64_t> pool;
    pool.insert(point.bits);
    for (const auto& fam : m.sigma)
        for (const InfoState& s : fam) pool.insert(s.bits);
    if (policy == EncodePolicy::SubsetsOfPoint) {
        for_each_subset(point, [&](InfoState t) { pool.insert(t.bits); });
    } else if (policy == EncodePolicy::Full) {
        require_within_cap(m.n_worlds());
        for (std::uint64_t b = 0; b <= m.universe().bits; ++b) pool.insert(b);
    }

    RelStruct r;
    r.world_names = m.world_names;
    r.sig = m.sig;
    r.props = m.valuation;
    std::map<std::uint64_t, int> index_of;
    for (std::uint64_t b : pool) {
        index_of[b] = r.n_states();
        r.states.push_back(InfoState(b));
    }
    r.E.resize(m.n_worlds());
    for (int w = 0; w < m.n_worlds(); ++w) {
        for (const InfoState& s : m.sigma[w]) r.E[w].push_back(index_of[s.bits]);
        std::sort(r.E[w].begin(), r.E[w].end());
        r.E[w].erase(std::unique(r.E[w].begin(), r.E[w].end()), r.E[w].end());
    }
    r.point = index_of[point.bits];
    return r;
}

DecodedModel decode(const RelStruct& r) {
    DecodedModel d;
    d.model.world_names = r.world_names;
    d.model.sig = r.sig;
    d.model.valuation = r.props;
    d.model.sigma.resize(r.n_worlds());
    for (int w = 0; w < r.n_worlds(); ++w)
        for (int idx : r.E[w]) d.model.sigma[w].push_back(r.states[idx]);
    canonicalize(d.model);
    ModelVerdict v = validate(d.model);
    d.model.kind = v.level == ModelVerdict::Proper ? ModelKind::Proper : ModelKind::Pseudo;
    if (r.point) d.point = r.states[*r.point];
    return d;
}

RelStruct state_closure(const RelStruct& r) {
    if (!r.point) throw std::invalid_argument("state_closure needs a distinguished state");
    RelVerdict v = validate_relational(r);
    if (!v.at_least_pseudo())
        throw std::invalid_argument("state_closure input invalid: " + v.reason);

    DecodedModel d = decode(r);
    InfoState point = r.states[*r.point];
    require_within_cap(point.count());
    InqModel closed = inquisitive_closure(d.model);

    RelStruct out = encode(closed, point, EncodePolicy::SubsetsOfPoint);
    return out;
}

const char* policy_name(EncodePolicy p) {
    switch (p) {
        case EncodePolicy::Minimal: return "minimal";
        case EncodePolicy::SubsetsOfPoint: return "subsets";
        case EncodePolicy::Full: return "full";
    }
    return "minimal";
}

std::optional<EncodePolicy> policy_from_name(const std::string& s) {
    if (s == "minimal") return EncodePolicy::Minimal;
    if (s == "subsets") return EncodePolicy::SubsetsOfPoint;
    if (s == "full") return EncodePolicy::Full;
    return std::nullopt;
}

}  // namespace inq
