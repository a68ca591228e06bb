#include "inq/model.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "inq/config.hpp"
#include "inq/mutation.hpp"

namespace inq {

void canonicalize(InqModel& m) {
    for (auto& fam : m.sigma) {
        std::sort(fam.begin(), fam.end());
        fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    }
}

ModelVerdict validate(const InqModel& m) {
    ModelVerdict v;
    const int n = m.n_worlds();
    if (n == 0) return {ModelVerdict::Invalid, -1, "no worlds"};
    if (static_cast<int>(m.sigma.size()) != n)
        return {ModelVerdict::Invalid, -1, "state assignment size differs from world count"};
    if (static_cast<int>(m.valuation.size()) != m.sig.size())
        return {ModelVerdict::Invalid, -1, "valuation size differs from signature"};
    const InfoState uni = m.universe();
    for (const InfoState& val : m.valuation)
        if (!val.subset_of(uni))
            return {ModelVerdict::Invalid, -1, "valuation bit outside world range"};

    bool proper = true;
    for (int w = 0; w < n; ++w) {
        const auto& fam = m.sigma[w];
        if (fam.empty()) return {ModelVerdict::Invalid, w, "empty-assignment"};
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!fam[i].subset_of(uni))
                return {ModelVerdict::Invalid, w, "state bit outside world range"};
            if (i + 1 < fam.size() && !(fam[i] < fam[i + 1]))
                return {ModelVerdict::Invalid, w, "state family not canonically ordered"};
        }
        if (proper) {
            // downward closure: every subset of every member is a member
            for (const InfoState& s : fam) {
                bool closed = true;
                for_each_subset(s, [&](InfoState t) {
                    if (closed && !std::binary_search(fam.begin(), fam.end(), t))
                        closed = false;
                });
                if (!closed) { proper = false; break; }
            }
        }
    }
    v.level = proper ? ModelVerdict::Proper : ModelVerdict::Pseudo;
    return v;
}

InqModel inquisitive_closure(const InqModel& m) {
    require_within_cap(m.n_worlds());
    InqModel out = m;
    for (int w = 0; w < m.n_worlds(); ++w) {
        std::set<std::uint64_t> acc;
        for (const InfoState& s : m.sigma[w])
            for_each_subset(s, [&](InfoState t) { acc.insert(t.bits); });
        if (mutation::active(mutation::Fault::ClosureDropEmpty)) acc.erase(0);
        std::vector<InfoState> fam;
        fam.reserve(acc.size());
        for (std::uint64_t b : acc) fam.push_back(InfoState(b));
        out.sigma[w] = std::move(fam);
    }
    out.kind = ModelKind::Proper;
    return out;
}

InfoState kripke_successors(const InqModel& m, int w) {
    InfoState u;
    for (const InfoState& s : m.sigma[w]) u = u.unite(s);
    return u;
}

// ── Random generation ───────────────────────────────────────────────────────
// std::mt19937_64 output is pinned by the standard; ranges are reduced by
// modulo so results are identical across platforms.

namespace {
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
}

InqModel random_pseudo_model(std::uint64_t seed, int n_worlds, int n_props,
                             int max_states_per_world, double close_prob) {
    if (n_worlds < 1) throw std::invalid_argument("n_worlds must be >= 1");
    if (max_states_per_world < 1)
        throw std::invalid_argument("max_states_per_world must be >= 1");
    require_within_cap(n_worlds);

    std::mt19937_64 rng(seed);
    InqModel m;
    for (int w = 0; w < n_worlds; ++w) m.world_names.push_back("w" + std::to_string(w));
    std::vector<std::string> props;
    for (int i = 0; i < n_props; ++i) props.push_back("p" + std::to_string(i));
    m.sig = Signature(props);

    const std::uint64_t mask = InfoState::all(n_worlds).bits;
    for (int i = 0; i < n_props; ++i) m.valuation.push_back(InfoState(rng() & mask));

    m.sigma.resize(n_worlds);
    for (int w = 0; w < n_worlds; ++w) {
        int k = 1 + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_states_per_world)));
        for (int j = 0; j < k; ++j) m.sigma[w].push_back(InfoState(rng() & mask));
    }
    canonicalize(m);
    m.kind = ModelKind::Pseudo;

    // close_prob is compared against a fixed-grain draw from the same stream
    // so the decision stays deterministic
    if (close_prob > 0.0) {
        double roll = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (roll < close_prob) m = inquisitive_closure(m);
    }
    return m;
}

InfoState random_state(std::uint64_t seed, int n_worlds) {
    std::mt19937_64 rng(seed);
    return InfoState(rng() & InfoState::all(n_worlds).bits);
}

}  // namespace inq
