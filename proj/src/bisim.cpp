#include "inq/bisim.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "inq/support.hpp"

namespace inq {

namespace {

InqModel closed(const InqModel& m) {
    return m.kind == ModelKind::Proper ? m : inquisitive_closure(m);
}

void require_same_signature(const InqModel& a, const InqModel& b) {
    if (!(a.sig == b.sig)) throw std::invalid_argument("signature mismatch");
}

bool atomic_eq(const InqModel& a, const InqModel& b, int w1, int w2) {
    for (int p = 0; p < a.sig.size(); ++p)
        if (a.valuation[p].contains(w1) != b.valuation[p].contains(w2)) return false;
    return true;
}

}  // namespace

BisimTables::BisimTables(const InqModel& a, const InqModel& b, int levels)
    : a_(closed(a)), b_(closed(b)) {
    require_same_signature(a_, b_);
    std::vector<std::uint8_t> base(a_.n_worlds() * b_.n_worlds());
    for (int w1 = 0; w1 < a_.n_worlds(); ++w1)
        for (int w2 = 0; w2 < b_.n_worlds(); ++w2)
            base[w1 * b_.n_worlds() + w2] = atomic_eq(a_, b_, w1, w2);
    tables_.push_back(std::move(base));
    for (int k = 0; k < levels; ++k) push_level();
}

bool BisimTables::world_eq(int level, int w1, int w2) const {
    return tables_.at(level)[w1 * b_.n_worlds() + w2] != 0;
}

bool BisimTables::state_eq(int level, InfoState s1, InfoState s2) const {
    const auto& t = tables_.at(level);
    const int n2 = b_.n_worlds();
    for (int w1 = 0; w1 < a_.n_worlds(); ++w1) {
        if (!s1.contains(w1)) continue;
        bool matched = false;
        for (int w2 = 0; w2 < n2 && !matched; ++w2)
            if (s2.contains(w2) && t[w1 * n2 + w2]) matched = true;
        if (!matched) return false;
    }
    for (int w2 = 0; w2 < n2; ++w2) {
        if (!s2.contains(w2)) continue;
        bool matched = false;
        for (int w1 = 0; w1 < a_.n_worlds() && !matched; ++w1)
            if (s1.contains(w1) && t[w1 * n2 + w2]) matched = true;
        if (!matched) return false;
    }
    return true;
}

void BisimTables::push_level() {
    const int prev = static_cast<int>(tables_.size()) - 1;
    const int n2 = b_.n_worlds();
    std::vector<std::uint8_t> next(a_.n_worlds() * n2, 0);
    for (int w1 = 0; w1 < a_.n_worlds(); ++w1) {
        for (int w2 = 0; w2 < n2; ++w2) {
            if (!tables_[0][w1 * n2 + w2]) continue;  // atomic harmony required
            bool ok = true;
            for (const InfoState& t : a_.sigma[w1]) {
                bool matched = false;
                for (const InfoState& t2 : b_.sigma[w2])
                    if (state_eq(prev, t, t2)) { matched = true; break; }
                if (!matched) { ok = false; break; }
            }
            if (ok) {
                for (const InfoState& t2 : b_.sigma[w2]) {
                    bool matched = false;
                    for (const InfoState& t : a_.sigma[w1])
                        if (state_eq(prev, t, t2)) { matched = true; break; }
                    if (!matched) { ok = false; break; }
                }
            }
            next[w1 * n2 + w2] = ok;
        }
    }
    tables_.push_back(std::move(next));
}

int BisimTables::stabilize() {
    // monotone refinement over a finite grid settles within |W1|*|W2|+1 steps
    while (true) {
        int k = levels();
        if (k >= 1 && tables_[k] == tables_[k - 1]) return k - 1;
        push_level();
    }
}

// ── Witness extraction ──────────────────────────────────────────────────────

namespace {

struct WitnessBuilder {
    const BisimTables& tb;
    std::vector<std::string>& out;

    std::string world_name(bool left, int w) const {
        const InqModel& m = left ? tb.left() : tb.right();
        return m.world_names[w];
    }
    std::string state_name(bool left, InfoState s) const {
        const InqModel& m = left ? tb.left() : tb.right();
        return state_to_string(m, s);
    }

    // best level (< bound) at which the pair is still equivalent, or -1
    int world_survival(int w1, int w2, int bound) const {
        for (int k = bound; k >= 0; --k)
            if (tb.world_eq(k, w1, w2)) return k;
        return -1;
    }

    void from_state(InfoState s1, InfoState s2, int k) {
        // find a world challenge with no level-k response
        for (int side = 0; side < 2; ++side) {
            const bool left = side == 0;
            const InqModel& mc = left ? tb.left() : tb.right();
            InfoState chal = left ? s1 : s2;
            InfoState resp = left ? s2 : s1;
            for (int w = 0; w < mc.n_worlds(); ++w) {
                if (!chal.contains(w)) continue;
                bool answerable = false;
                int best_resp = -1, best_level = -2;
                const InqModel& mr = left ? tb.right() : tb.left();
                for (int w2 = 0; w2 < mr.n_worlds(); ++w2) {
                    if (!resp.contains(w2)) continue;
                    bool eq = left ? tb.world_eq(k, w, w2) : tb.world_eq(k, w2, w);
                    if (eq) { answerable = true; break; }
                    int lvl = left ? world_survival(w, w2, k) : world_survival(w2, w, k);
                    if (lvl > best_level) { best_level = lvl; best_resp = w2; }
                }
                if (answerable) continue;
                out.push_back(std::string("world challenge (") + (left ? "left" : "right") +
                              "): " + world_name(left, w));
                if (best_resp < 0) {
                    out.push_back("no response available (other state is empty)");
                    return;
                }
                out.push_back(std::string("best response (") + (left ? "right" : "left") +
                              "): " + world_name(!left, best_resp));
                if (left) from_world(w, best_resp, k);
                else from_world(best_resp, w, k);
                return;
            }
        }
        out.push_back("(positions already equivalent at level " + std::to_string(k) + ")");
    }

    void from_world(int w1, int w2, int k) {
        if (!tb.world_eq(0, w1, w2)) {
            out.push_back("atomic mismatch: " + world_name(true, w1) + " vs " +
                          world_name(false, w2));
            return;
        }
        if (k <= 0) return;
        for (int side = 0; side < 2; ++side) {
            const bool left = side == 0;
            const InqModel& mc = left ? tb.left() : tb.right();
            const InqModel& mr = left ? tb.right() : tb.left();
            int wc = left ? w1 : w2;
            int wr = left ? w2 : w1;
            for (const InfoState& t : mc.sigma[wc]) {
                bool answerable = false;
                for (const InfoState& t2 : mr.sigma[wr]) {
                    bool eq = left ? tb.state_eq(k - 1, t, t2) : tb.state_eq(k - 1, t2, t);
                    if (eq) { answerable = true; break; }
                }
                if (answerable) continue;
                out.push_back(std::string("state challenge (") + (left ? "left" : "right") +
                              "): " + state_name(left, t) + " assigned to " +
                              world_name(left, wc));
                // pick the response surviving deepest
                InfoState best;
                int best_level = -2;
                bool have = false;
                for (const InfoState& t2 : mr.sigma[wr]) {
                    int lvl = -1;
                    for (int j = k - 1; j >= 0; --j) {
                        bool eq = left ? tb.state_eq(j, t, t2) : tb.state_eq(j, t2, t);
                        if (eq) { lvl = j; break; }
                    }
                    if (lvl > best_level) { best_level = lvl; best = t2; have = true; }
                }
                if (!have) {
                    out.push_back("no response available (empty assignment)");
                    return;
                }
                out.push_back(std::string("best response (") + (left ? "right" : "left") +
                              "): " + state_name(!left, best));
                if (left) from_state(t, best, k - 1);
                else from_state(best, t, k - 1);
                return;
            }
        }
    }
};

BisimResult make_result(const BisimTables& tb, GamePosition pos, int n, bool omega) {
    BisimResult r;
    r.level = n;
    r.omega = omega;
    if (pos.kind == GamePosition::StatePair)
        r.equivalent = tb.state_eq(n, pos.s1, pos.s2);
    else
        r.equivalent = tb.world_eq(n, pos.w1, pos.w2);
    if (!r.equivalent) {
        // start the trace at the lowest failing level
        int k = 0;
        while (k <= n) {
            bool eq = pos.kind == GamePosition::StatePair
                          ? tb.state_eq(k, pos.s1, pos.s2)
                          : tb.world_eq(k, pos.w1, pos.w2);
            if (!eq) break;
            ++k;
        }
        WitnessBuilder wb{tb, r.witness};
        if (pos.kind == GamePosition::StatePair)
            wb.from_state(pos.s1, pos.s2, k);
        else
            wb.from_world(pos.w1, pos.w2, k);
    }
    return r;
}

}  // namespace

BisimResult n_bisim(const InqModel& a, GamePosition pos, const InqModel& b, int n) {
    if (n < 0) throw std::invalid_argument("negative round count");
    BisimTables tb(a, b, n);
    return make_result(tb, pos, n, false);
}

BisimResult n_bisim(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2,
                    int n) {
    return n_bisim(a, GamePosition::states(s1, s2), b, n);
}

BisimResult full_bisim(const InqModel& a, GamePosition pos, const InqModel& b) {
    BisimTables tb(a, b, 0);
    int stable = tb.stabilize();
    BisimResult r = make_result(tb, pos, stable, true);
    return r;
}

BisimResult full_bisim(const InqModel& a, InfoState s1, const InqModel& b,
                       InfoState s2) {
    return full_bisim(a, GamePosition::states(s1, s2), b);
}

bool bulk_equiv(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2) {
    BisimTables tb(a, b, 0);
    int stable = tb.stabilize();
    return tb.state_eq(stable, s1, s2);
}

EfReport ef_check(const InqModel& a, InfoState s1, const InqModel& b, InfoState s2,
                  int n, const FormulaSampler& sampler, int n_samples) {
    EfReport rep;
    rep.bisim = n_bisim(a, s1, b, s2, n);
    if (!rep.bisim.equivalent) return rep;
    for (int i = 0; i < n_samples; ++i) {
        Formula f = sampler(i);
        if (modal_depth(f) > n)
            throw std::invalid_argument("sampler produced a formula above the depth bound");
        ++rep.formulas_checked;
        if (supports(a, s1, f) != supports(b, s2, f)) rep.disagreements.push_back(f);
    }
    return rep;
}

// ── Distinguishing-formula search ───────────────────────────────────────────
//
// Support of a formula on a fixed model is a bit vector over all 2^|W|
// states, and every connective acts compositionally on these vectors. The
// search enumerates semantic classes (pairs of vectors, one per model) in
// rounds, keeping the smallest representative formula and the least modal
// depth seen per class.

namespace {

struct SigVec {
    std::uint32_t v1 = 0, v2 = 0;
    bool operator==(const SigVec& o) const { return v1 == o.v1 && v2 == o.v2; }
    bool operator<(const SigVec& o) const {
        return v1 != o.v1 ? v1 < o.v1 : v2 < o.v2;
    }
};

struct ModelCtx {
    int n_worlds;
    int n_states;                       // 2^n_worlds
    std::vector<std::uint32_t> sigma_union;  // kripke successor bits per world
    std::vector<std::vector<std::uint32_t>> sigma;  // assignment bits per world

    explicit ModelCtx(const InqModel& m) : n_worlds(m.n_worlds()) {
        n_states = 1 << n_worlds;
        sigma_union.resize(n_worlds);
        sigma.resize(n_worlds);
        for (int w = 0; w < n_worlds; ++w) {
            sigma_union[w] = static_cast<std::uint32_t>(kripke_successors(m, w).bits);
            for (const InfoState& t : m.sigma[w])
                sigma[w].push_back(static_cast<std::uint32_t>(t.bits));
        }
    }

    // one bit per state: state index = its bitset value
    std::uint32_t vec_atom(const InqModel& m, int p) const {
        std::uint32_t out = 0;
        std::uint32_t val = static_cast<std::uint32_t>(m.valuation[p].bits);
        for (int s = 0; s < n_states; ++s)
            if ((static_cast<std::uint32_t>(s) & ~val) == 0) out |= 1u << s;
        return out;
    }
    std::uint32_t vec_bottom() const { return 1u; }  // only the empty state
    std::uint32_t vec_implies(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0;
        for (int s = 0; s < n_states; ++s) {
            bool ok = true;
            std::uint32_t sub = 0;
            while (true) {
                if ((a >> sub & 1) && !(b >> sub & 1)) { ok = false; break; }
                if (sub == static_cast<std::uint32_t>(s)) break;
                sub = (sub - s) & s;
            }
            if (ok) out |= 1u << s;
        }
        return out;
    }
    std::uint32_t vec_box(std::uint32_t a) const {
        std::uint32_t out = 0;
        for (int s = 0; s < n_states; ++s) {
            bool ok = true;
            for (int w = 0; w < n_worlds && ok; ++w)
                if ((s >> w & 1) && !(a >> sigma_union[w] & 1)) ok = false;
            if (ok) out |= 1u << s;
        }
        return out;
    }
    std::uint32_t vec_box_plus(std::uint32_t a) const {
        std::uint32_t per_world = 0;  // bit w: every assigned state supports
        for (int w = 0; w < n_worlds; ++w) {
            bool ok = true;
            for (std::uint32_t t : sigma[w])
                if (!(a >> t & 1)) { ok = false; break; }
            if (ok) per_world |= 1u << w;
        }
        std::uint32_t out = 0;
        for (int s = 0; s < n_states; ++s)
            if ((static_cast<std::uint32_t>(s) & ~per_world) == 0) out |= 1u << s;
        return out;
    }
};

struct ClassEntry {
    Formula rep;
    int depth;
    int size;
};

int formula_size(const Formula& f) {
    switch (f.kind()) {
        case Conn::Atom:
        case Conn::Bottom:
            return 1;
        case Conn::Box:
        case Conn::BoxPlus:
            return 1 + formula_size(f.lhs());
        default:
            return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    }
}

}  // namespace

DistinguishResult find_distinguishing(const InqModel& a, InfoState s1,
                                      const InqModel& b, InfoState s2, int max_depth,
                                      int class_budget) {
    require_same_signature(a, b);
    if (a.n_worlds() > 5 || b.n_worlds() > 5)
        throw std::invalid_argument("distinguishing search is limited to 5 worlds");

    ModelCtx c1(a), c2(b);
    const std::uint32_t bit1 = 1u << static_cast<std::uint32_t>(s1.bits);
    const std::uint32_t bit2 = 1u << static_cast<std::uint32_t>(s2.bits);

    std::vector<SigVec> sigs;
    std::vector<ClassEntry> entries;
    std::map<SigVec, int> index;

    auto distinguishes = [&](const SigVec& sv) {
        return ((sv.v1 & bit1) != 0) != ((sv.v2 & bit2) != 0);
    };

    DistinguishResult res;
    std::optional<int> hit;

    auto add = [&](SigVec sv, Formula f, int depth) -> bool {
        auto it = index.find(sv);
        if (it != index.end()) {
            ClassEntry& e = entries[it->second];
            bool improved = false;
            if (depth < e.depth) { e.depth = depth; improved = true; }
            int sz = formula_size(f);
            if (depth <= e.depth && sz < e.size) { e.rep = f; e.size = sz; }
            if (improved && depth <= max_depth && distinguishes(sv) &&
                (!hit || entries[*hit].size > formula_size(f)))
                hit = it->second;
            return improved;
        }
        index.emplace(sv, static_cast<int>(sigs.size()));
        sigs.push_back(sv);
        entries.push_back({f, depth, formula_size(f)});
        if (depth <= max_depth && distinguishes(sv)) {
            if (!hit || entries[*hit].size > formula_size(f)) hit = static_cast<int>(sigs.size()) - 1;
        }
        return true;
    };

    // seeds
    add({c1.vec_bottom(), c2.vec_bottom()}, Formula::bottom(), 0);
    for (int p = 0; p < a.sig.size(); ++p)
        add({c1.vec_atom(a, p), c2.vec_atom(b, p)}, Formula::atom(p), 0);

    bool saturated = false;
    std::size_t processed_pairs_lo = 0;  // frontier marker: entries below are fully combined
    while (!saturated && static_cast<int>(sigs.size()) < class_budget && !hit) {
        std::size_t old_count = sigs.size();
        for (std::size_t i = 0; i < old_count; ++i) {
            SigVec sv = sigs[i];
            ClassEntry e = entries[i];
            if (e.depth + 1 <= max_depth) {
                add({c1.vec_box(sv.v1), c2.vec_box(sv.v2)}, Formula::box(e.rep), e.depth + 1);
                add({c1.vec_box_plus(sv.v1), c2.vec_box_plus(sv.v2)},
                    Formula::box_plus(e.rep), e.depth + 1);
            }
            if (hit || static_cast<int>(sigs.size()) >= class_budget) break;
        }
        for (std::size_t i = 0; i < old_count && !hit; ++i) {
            for (std::size_t j = 0; j < old_count; ++j) {
                if (static_cast<int>(sigs.size()) >= class_budget || hit) break;
                // skip pairs both already combined in earlier rounds
                if (i < processed_pairs_lo && j < processed_pairs_lo) continue;
                SigVec x = sigs[i], y = sigs[j];
                const ClassEntry &ex = entries[i], &ey = entries[j];
                int d = std::max(ex.depth, ey.depth);
                if (j >= i) {
                    add({x.v1 & y.v1, x.v2 & y.v2}, Formula::conj(ex.rep, ey.rep), d);
                    add({x.v1 | y.v1, x.v2 | y.v2}, Formula::inq_or(ex.rep, ey.rep), d);
                }
                add({c1.vec_implies(x.v1, y.v1), c2.vec_implies(x.v2, y.v2)},
                    Formula::implies(ex.rep, ey.rep), d);
            }
        }
        processed_pairs_lo = old_count;
        saturated = sigs.size() == old_count;
    }

    res.classes = static_cast<int>(sigs.size());
    res.complete = saturated;
    if (hit) res.formula = entries[*hit].rep;
    return res;
}

}  // namespace inq
