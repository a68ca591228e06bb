#include "inq/fuzz.hpp"

#include <algorithm>
#include <sstream>

#include "inq/fo.hpp"
#include "inq/json_io.hpp"
#include "inq/support.hpp"

namespace inq::fuzz {

using nlohmann::json;

// ── Names ───────────────────────────────────────────────────────────────────

std::vector<Check> all_checks() {
    return {Check::Fragment, Check::Graded, Check::Persistency, Check::Closure,
            Check::Ef,       Check::Rewrite, Check::Roundtrip};
}

const char* check_name(Check c) {
    switch (c) {
        case Check::Fragment: return "fragment";
        case Check::Graded: return "graded";
        case Check::Persistency: return "persistency";
        case Check::Closure: return "closure";
        case Check::Ef: return "ef";
        case Check::Rewrite: return "rewrite";
        case Check::Roundtrip: return "roundtrip";
    }
    return "?";
}

std::optional<Check> check_from_name(const std::string& s) {
    for (Check c : all_checks())
        if (s == check_name(c)) return c;
    return std::nullopt;
}

const char* predicate_name(Predicate p) {
    switch (p) {
        case Predicate::GeneratorKind: return "generator-kind";
        case Predicate::FragmentState: return "fragment-state";
        case Predicate::FragmentWorld: return "fragment-world";
        case Predicate::GradedAgree: return "graded-agree";
        case Predicate::Persistency: return "persistency";
        case Predicate::ExFalso: return "ex-falso";
        case Predicate::ClosureInvariance: return "closure-invariance";
        case Predicate::ClosureProper: return "closure-proper";
        case Predicate::ClosureIdempotent: return "closure-idempotent";
        case Predicate::EfSoundness: return "ef-soundness";
        case Predicate::RewriteEquivalence: return "rewrite-equivalence";
        case Predicate::RewriteSupports: return "rewrite-supports";
        case Predicate::DownConjLaw: return "down-conj-law";
        case Predicate::AstRoundtrip: return "ast-roundtrip";
        case Predicate::ModelRoundtrip: return "model-roundtrip";
        case Predicate::StateClosureIdempotent: return "state-closure-idempotent";
    }
    return "?";
}

static std::optional<Predicate> predicate_from_name(const std::string& s) {
    static const Predicate all[] = {
        Predicate::GeneratorKind,     Predicate::FragmentState,
        Predicate::FragmentWorld,     Predicate::GradedAgree,
        Predicate::Persistency,       Predicate::ExFalso,
        Predicate::ClosureInvariance, Predicate::ClosureProper,
        Predicate::ClosureIdempotent, Predicate::EfSoundness,
        Predicate::RewriteEquivalence, Predicate::RewriteSupports,
        Predicate::DownConjLaw,       Predicate::AstRoundtrip,
        Predicate::ModelRoundtrip,    Predicate::StateClosureIdempotent};
    for (Predicate p : all)
        if (s == predicate_name(p)) return p;
    return std::nullopt;
}

// ── Seeds and generators ────────────────────────────────────────────────────

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0xbf58476d1ce4e5b9ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Formula random_formula(std::mt19937_64& rng, int n_props, int max_depth) {
    auto leaf = [&]() {
        if (n_props == 0 || rng() % 6 == 0) return Formula::bottom();
        return Formula::atom(static_cast<int>(rng() % n_props));
    };
    if (max_depth <= 0) return leaf();
    // question formulas (f vv ~f) are the paradigm case for graded flatness,
    // so they get their own weight
    int roll = static_cast<int>(rng() % 100);
    if (roll < 25) return leaf();
    if (roll < 37)
        return Formula::conj(random_formula(rng, n_props, max_depth - 1),
                             random_formula(rng, n_props, max_depth - 1));
    if (roll < 55) {
        Formula lhs = random_formula(rng, n_props, max_depth - 1);
        // half the consequents are questions: implications only notice the
        // grade of their consequent
        Formula rhs = (max_depth >= 2 && (rng() & 1))
                          ? Formula::whether(random_formula(rng, n_props, max_depth - 2))
                          : random_formula(rng, n_props, max_depth - 1);
        return Formula::implies(lhs, rhs);
    }
    if (roll < 70)
        return Formula::inq_or(random_formula(rng, n_props, max_depth - 1),
                               random_formula(rng, n_props, max_depth - 1));
    if (roll < 80) {
        // ?f desugars to two levels, so it needs the room
        if (max_depth >= 2) return Formula::whether(random_formula(rng, n_props, max_depth - 2));
        return Formula::inq_or(leaf(), leaf());
    }
    if (roll < 90) return Formula::box(random_formula(rng, n_props, max_depth - 1));
    return Formula::box_plus(random_formula(rng, n_props, max_depth - 1));
}

Formula random_formula_md(std::mt19937_64& rng, int n_props, int max_modal_depth,
                          int size_budget) {
    auto leaf = [&]() {
        if (n_props == 0 || rng() % 6 == 0) return Formula::bottom();
        return Formula::atom(static_cast<int>(rng() % n_props));
    };
    if (size_budget <= 1) return leaf();
    const bool modal_ok = max_modal_depth > 0;
    int roll = static_cast<int>(rng() % (modal_ok ? 100 : 72));
    if (roll < 18) return leaf();
    if (roll < 36)
        return Formula::conj(random_formula_md(rng, n_props, max_modal_depth, size_budget / 2),
                             random_formula_md(rng, n_props, max_modal_depth, size_budget / 2));
    if (roll < 54)
        return Formula::implies(
            random_formula_md(rng, n_props, max_modal_depth, size_budget / 2),
            random_formula_md(rng, n_props, max_modal_depth, size_budget / 2));
    if (roll < 72)
        return Formula::inq_or(
            random_formula_md(rng, n_props, max_modal_depth, size_budget / 2),
            random_formula_md(rng, n_props, max_modal_depth, size_budget / 2));
    if (roll < 86)
        return Formula::box(random_formula_md(rng, n_props, max_modal_depth - 1, size_budget - 1));
    return Formula::box_plus(
        random_formula_md(rng, n_props, max_modal_depth - 1, size_budget - 1));
}

// Bases are kept at flatness grade <= 1 and clauses at <= 2 positive
// literals so the rewritten consequent's tuple stays short.
CnfInput random_cnf(std::mt19937_64& rng, int n_props) {
    std::vector<Formula> bases;
    const int nb = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nb; ++i) {
        Formula f = Formula::bottom();
        for (int attempt = 0; attempt < 8; ++attempt) {
            f = random_formula(rng, n_props, 2);
            if (flatness_grade(f) <= 1) break;
            f = n_props > 0 ? Formula::atom(static_cast<int>(rng() % n_props))
                            : Formula::bottom();
        }
        bases.push_back(f);
    }
    CnfInput cnf;
    const int nc = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < nc; ++c) {
        CnfClause clause;
        const int nl = 1 + static_cast<int>(rng() % 3);
        int positives = 0;
        for (int l = 0; l < nl; ++l) {
            bool pos = (rng() & 1) != 0 && positives < 2;
            if (pos) ++positives;
            clause.push_back({pos, bases[rng() % bases.size()]});
        }
        cnf.push_back(std::move(clause));
    }
    return cnf;
}

// ── Predicates ──────────────────────────────────────────────────────────────

namespace {

bool kind_consistent(const InqModel& m) {
    ModelVerdict v = validate(m);
    if (m.kind == ModelKind::Proper) return v.level == ModelVerdict::Proper;
    return v.at_least_pseudo();
}

struct RewriteEval {
    bool relativized;
    bool rewritten_fo;
    bool rewritten_supports;
};

RewriteEval eval_rewrite(const InqModel& m, InfoState s, const CnfInput& cnf) {
    RelStruct closed = state_closure(encode(m, s, EncodePolicy::Minimal));
    FOFormula materialized = cnf_to_fo(cnf);
    Formula rewritten = rewrite_cnf_to_formula(cnf);
    RewriteEval e{};
    e.relativized = eval_fo_state(closed, *closed.point, substate_relativize(materialized));
    e.rewritten_fo = eval_fo_state(closed, *closed.point, standard_translate(rewritten));
    DecodedModel d = decode(closed);
    e.rewritten_supports = supports(d.model, *d.point, rewritten);
    return e;
}

}  // namespace

bool predicate_fails(const TrialData& t) {
    switch (t.pred) {
        case Predicate::GeneratorKind:
            return !kind_consistent(t.m1);
        case Predicate::FragmentState:
            return !check_fragment(t.m1, t.s1, t.formulas.at(0), t.policy);
        case Predicate::FragmentWorld:
            return t.world >= 0 && t.world < t.m1.n_worlds() &&
                   !check_fragment_world(t.m1, t.world, t.formulas.at(0));
        case Predicate::GradedAgree:
            return supports(t.m1, t.s1, t.formulas.at(0)) !=
                   supports_graded(t.m1, t.s1, t.formulas.at(0));
        case Predicate::Persistency:
            return !check_persistency(t.m1, t.s1, t.formulas.at(0));
        case Predicate::ExFalso:
            return !supports(t.m1, InfoState::empty(), t.formulas.at(0));
        case Predicate::ClosureInvariance:
            return !check_closure_invariance(t.m1, t.s1, t.formulas.at(0));
        case Predicate::ClosureProper:
            return validate(inquisitive_closure(t.m1)).level != ModelVerdict::Proper;
        case Predicate::ClosureIdempotent: {
            InqModel once = inquisitive_closure(t.m1);
            return !(inquisitive_closure(once) == once);
        }
        case Predicate::EfSoundness: {
            BisimResult r = n_bisim(t.m1, t.s1, t.m2, t.s2, t.rounds);
            if (!r.equivalent) return false;
            return supports(t.m1, t.s1, t.formulas.at(0)) !=
                   supports(t.m2, t.s2, t.formulas.at(0));
        }
        case Predicate::RewriteEquivalence: {
            if (t.s1.empty_state()) return false;  // claim is for non-empty states
            RewriteEval e = eval_rewrite(t.m1, t.s1, t.cnf);
            return e.relativized != e.rewritten_fo;
        }
        case Predicate::RewriteSupports: {
            if (t.s1.empty_state()) return false;
            RewriteEval e = eval_rewrite(t.m1, t.s1, t.cnf);
            return e.relativized != e.rewritten_supports;
        }
        case Predicate::DownConjLaw: {
            RelStruct closed = state_closure(encode(t.m1, t.s1, EncodePolicy::Minimal));
            FOFormula a = standard_translate(t.formulas.at(0));
            FOFormula b = standard_translate(t.formulas.at(1));
            FOFormula both = substate_relativize(FOFormula::fo_and({a, b}));
            FOFormula split = FOFormula::fo_and(
                {substate_relativize(a), substate_relativize(b)});
            for (int i = 0; i < closed.n_states(); ++i)
                if (eval_fo_state(closed, i, both) != eval_fo_state(closed, i, split))
                    return true;
            return false;
        }
        case Predicate::AstRoundtrip: {
            const Formula& f = t.formulas.at(0);
            return !(parse(print(f, t.m1.sig), t.m1.sig) == f);
        }
        case Predicate::ModelRoundtrip: {
            DecodedModel d = decode(encode(t.m1, t.s1, t.policy));
            return !(d.model == t.m1) || !d.point || !(*d.point == t.s1);
        }
        case Predicate::StateClosureIdempotent: {
            RelStruct once = state_closure(encode(t.m1, t.s1, EncodePolicy::Minimal));
            return !(state_closure(once) == once);
        }
    }
    return false;
}

// ── Trial generation ────────────────────────────────────────────────────────

namespace {

struct TrialGen {
    const FuzzConfig& cfg;
    std::mt19937_64 rng;

    explicit TrialGen(const FuzzConfig& cfg_, std::uint64_t trial_seed)
        : cfg(cfg_), rng(trial_seed) {}

    InqModel model(int max_worlds, bool allow_close, double close_p = 0.5) {
        int nw = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_worlds));
        int np = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.n_props));
        int ms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.max_states_per_world));
        double p = allow_close ? close_p : 0.0;
        return random_pseudo_model(rng(), nw, np, ms, p);
    }

    // biased toward larger states: small states make most clauses vacuous
    InfoState state(const InqModel& m) {
        std::uint64_t a = rng();
        std::uint64_t b = rng();
        return InfoState((a | b) & m.universe().bits);
    }

    InfoState nonempty_state(const InqModel& m) {
        InfoState s = state(m);
        if (s.empty_state()) s = InfoState::singleton(static_cast<int>(rng() % m.n_worlds()));
        return s;
    }

    Formula formula(const InqModel& m, int depth) {
        return random_formula(rng, m.sig.size(), depth);
    }

    EncodePolicy policy() { return cfg.policies[rng() % cfg.policies.size()]; }

    // permuted copy, guaranteed bisimilar to (m, s) at the image state
    std::pair<InqModel, InfoState> isomorphic_copy(const InqModel& m, InfoState s) {
        const int n = m.n_worlds();
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
        auto map_state = [&](InfoState x) {
            InfoState y;
            for (int w = 0; w < n; ++w)
                if (x.contains(w)) y = y.with(perm[w]);
            return y;
        };
        InqModel out;
        out.world_names.resize(n);
        for (int w = 0; w < n; ++w) out.world_names[perm[w]] = "v" + std::to_string(perm[w]);
        out.sig = m.sig;
        out.kind = m.kind;
        out.valuation.reserve(m.valuation.size());
        for (const InfoState& v : m.valuation) out.valuation.push_back(map_state(v));
        out.sigma.resize(n);
        for (int w = 0; w < n; ++w)
            for (const InfoState& x : m.sigma[w]) out.sigma[perm[w]].push_back(map_state(x));
        canonicalize(out);
        return {out, map_state(s)};
    }

    InqModel perturbed_copy(const InqModel& m) {
        InqModel out = m;
        if ((rng() & 1) && m.sig.size() > 0) {
            int p = static_cast<int>(rng() % static_cast<std::uint64_t>(m.sig.size()));
            int w = static_cast<int>(rng() % static_cast<std::uint64_t>(m.n_worlds()));
            out.valuation[p] = out.valuation[p].contains(w) ? out.valuation[p].without(w)
                                                            : out.valuation[p].with(w);
        } else {
            int w = static_cast<int>(rng() % static_cast<std::uint64_t>(m.n_worlds()));
            InfoState cand(rng() & m.universe().bits);
            auto& fam = out.sigma[w];
            auto it = std::find(fam.begin(), fam.end(), cand);
            if (it != fam.end() && fam.size() > 1) fam.erase(it);
            else if (it == fam.end()) fam.push_back(cand);
            canonicalize(out);
        }
        out.kind = ModelKind::Pseudo;
        if (validate(out).level == ModelVerdict::Proper) out.kind = ModelKind::Proper;
        return out;
    }
};

}  // namespace

// Assembles the trial's data sets and evaluates them in order; the first
// violated predicate is returned.
static std::optional<TrialData> run_one_trial(Check c, const FuzzConfig& cfg,
                                              std::uint64_t trial_seed) {
    TrialGen g(cfg, trial_seed);
    std::vector<TrialData> items;

    switch (c) {
        case Check::Fragment: {
            InqModel m = g.model(cfg.max_worlds, true);
            InfoState s = g.state(m);
            Formula f = g.formula(m, cfg.max_formula_depth);
            TrialData kind;
            kind.pred = Predicate::GeneratorKind;
            kind.m1 = m;
            items.push_back(kind);
            TrialData st;
            st.pred = Predicate::FragmentState;
            st.m1 = m;
            st.s1 = s;
            st.formulas = {f};
            st.policy = g.policy();
            items.push_back(st);
            TrialData wd;
            wd.pred = Predicate::FragmentWorld;
            wd.m1 = m;
            wd.formulas = {f};
            wd.world = static_cast<int>(g.rng() % static_cast<std::uint64_t>(m.n_worlds()));
            items.push_back(wd);
            break;
        }
        case Check::Graded: {
            InqModel m = g.model(cfg.max_worlds, true);
            InfoState s = g.state(m);
            Formula f = g.formula(m, cfg.max_formula_depth);
            TrialData kind;
            kind.pred = Predicate::GeneratorKind;
            kind.m1 = m;
            items.push_back(kind);
            TrialData t;
            t.pred = Predicate::GradedAgree;
            t.m1 = m;
            t.s1 = s;
            t.formulas = {f};
            items.push_back(t);
            break;
        }
        case Check::Persistency: {
            InqModel m = g.model(cfg.max_worlds, true);
            TrialData t;
            t.pred = Predicate::Persistency;
            t.m1 = m;
            t.s1 = g.state(m);
            t.formulas = {g.formula(m, cfg.max_formula_depth)};
            items.push_back(t);
            TrialData ef = t;
            ef.pred = Predicate::ExFalso;
            items.push_back(ef);
            break;
        }
        case Check::Closure: {
            InqModel m = g.model(cfg.max_worlds, false);  // keep it pseudo
            TrialData t;
            t.pred = Predicate::ClosureInvariance;
            t.m1 = m;
            t.s1 = g.state(m);
            t.formulas = {g.formula(m, cfg.max_formula_depth)};
            items.push_back(t);
            TrialData pr = t;
            pr.pred = Predicate::ClosureProper;
            items.push_back(pr);
            TrialData id = t;
            id.pred = Predicate::ClosureIdempotent;
            items.push_back(id);
            break;
        }
        case Check::Ef: {
            InqModel m1 = g.model(cfg.max_worlds, true);
            InfoState s1 = g.state(m1);
            InqModel m2;
            InfoState s2;
            switch (g.rng() % 3) {
                case 0: {
                    auto [mm, ss] = g.isomorphic_copy(m1, s1);
                    m2 = mm;
                    s2 = ss;
                    break;
                }
                case 1:
                    m2 = g.perturbed_copy(m1);
                    s2 = (g.rng() & 1) ? s1 : g.state(m2);
                    break;
                default: {
                    int nw = 1 + static_cast<int>(g.rng() %
                                                  static_cast<std::uint64_t>(cfg.max_worlds));
                    int ms = 1 + static_cast<int>(
                                     g.rng() %
                                     static_cast<std::uint64_t>(cfg.max_states_per_world));
                    std::uint64_t m2_seed = g.rng();
                    double close_p = (g.rng() & 1) ? 1.0 : 0.0;
                    m2 = random_pseudo_model(m2_seed, nw, m1.sig.size(), ms, close_p);
                    s2 = g.state(m2);
                }
            }
            int n = static_cast<int>(g.rng() % static_cast<std::uint64_t>(cfg.ef_rounds + 1));
            BisimResult r = n_bisim(m1, s1, m2, s2, n);
            if (r.equivalent) {
                for (int i = 0; i < cfg.ef_samples; ++i) {
                    Formula f = random_formula_md(g.rng, m1.sig.size(), n, 9);
                    if (supports(m1, s1, f) != supports(m2, s2, f)) {
                        TrialData t;
                        t.pred = Predicate::EfSoundness;
                        t.m1 = m1;
                        t.m2 = m2;
                        t.has_m2 = true;
                        t.s1 = s1;
                        t.s2 = s2;
                        t.rounds = n;
                        t.formulas = {f};
                        items.push_back(t);
                        break;
                    }
                }
            }
            break;
        }
        case Check::Rewrite: {
            InqModel m = g.model(std::min(cfg.max_worlds, 3), true);
            InfoState s = g.nonempty_state(m);
            TrialData t;
            t.pred = Predicate::RewriteEquivalence;
            t.m1 = m;
            t.s1 = s;
            t.cnf = random_cnf(g.rng, m.sig.size());
            items.push_back(t);
            TrialData ts = t;
            ts.pred = Predicate::RewriteSupports;
            items.push_back(ts);
            TrialData dc;
            dc.pred = Predicate::DownConjLaw;
            dc.m1 = m;
            dc.s1 = s;
            for (int i = 0; i < 2; ++i) {
                Formula f = Formula::bottom();
                for (int attempt = 0; attempt < 8; ++attempt) {
                    f = random_formula(g.rng, m.sig.size(), 2);
                    if (flatness_grade(f) <= 2) break;
                }
                dc.formulas.push_back(f);
            }
            items.push_back(dc);
            break;
        }
        case Check::Roundtrip: {
            InqModel m = g.model(std::min(cfg.max_worlds, 4), true);
            TrialData ast;
            ast.pred = Predicate::AstRoundtrip;
            ast.m1 = m;
            ast.formulas = {g.formula(m, cfg.max_formula_depth + 1)};
            items.push_back(ast);
            TrialData mr;
            mr.pred = Predicate::ModelRoundtrip;
            mr.m1 = m;
            mr.s1 = g.state(m);
            mr.policy = g.policy();
            items.push_back(mr);
            TrialData sc = mr;
            sc.pred = Predicate::StateClosureIdempotent;
            items.push_back(sc);
            break;
        }
    }

    for (const TrialData& t : items)
        if (predicate_fails(t)) return t;
    return std::nullopt;
}

// ── Shrinking ───────────────────────────────────────────────────────────────

namespace {

InfoState drop_world_bits(InfoState s, int w) {
    std::uint64_t low = s.bits & ((1ull << w) - 1);
    std::uint64_t high = (s.bits >> (w + 1)) << w;
    return InfoState(low | high);
}

std::optional<InqModel> drop_world(const InqModel& m, int w) {
    if (m.n_worlds() <= 1) return std::nullopt;
    InqModel out;
    out.sig = m.sig;
    out.kind = m.kind;
    for (int i = 0; i < m.n_worlds(); ++i)
        if (i != w) out.world_names.push_back(m.world_names[i]);
    for (const InfoState& v : m.valuation) out.valuation.push_back(drop_world_bits(v, w));
    out.sigma.reserve(m.n_worlds() - 1);
    for (int i = 0; i < m.n_worlds(); ++i) {
        if (i == w) continue;
        std::vector<InfoState> fam;
        for (const InfoState& s : m.sigma[i]) fam.push_back(drop_world_bits(s, w));
        out.sigma.push_back(std::move(fam));
    }
    canonicalize(out);
    return out;
}

bool class_preserved(const InqModel& m) {
    ModelVerdict v = validate(m);
    if (!v.at_least_pseudo()) return false;
    if (m.kind == ModelKind::Proper && v.level != ModelVerdict::Proper) return false;
    return true;
}

std::vector<Formula> subformulas(const Formula& f) {
    switch (f.kind()) {
        case Conn::Atom:
        case Conn::Bottom:
            return {};
        case Conn::Box:
        case Conn::BoxPlus:
            return {f.lhs()};
        default:
            return {f.lhs(), f.rhs()};
    }
}

std::vector<TrialData> shrink_candidates(const TrialData& t) {
    std::vector<TrialData> out;

    auto add_model_shrinks = [&](bool second) {
        const InqModel& m = second ? t.m2 : t.m1;
        for (int w = 0; w < m.n_worlds(); ++w) {
            auto smaller = drop_world(m, w);
            if (!smaller || !class_preserved(*smaller)) continue;
            TrialData c = t;
            (second ? c.m2 : c.m1) = *smaller;
            if (second) c.s2 = drop_world_bits(t.s2, w);
            else c.s1 = drop_world_bits(t.s1, w);
            if (!second && c.world >= 0) {
                if (c.world == w) continue;  // the challenged world must survive
                if (c.world > w) --c.world;
            }
            out.push_back(std::move(c));
        }
        for (int w = 0; w < m.n_worlds(); ++w) {
            if (m.sigma[w].size() <= 1) continue;
            for (std::size_t i = 0; i < m.sigma[w].size(); ++i) {
                InqModel smaller = m;
                smaller.sigma[w].erase(smaller.sigma[w].begin() + i);
                if (!class_preserved(smaller)) continue;
                TrialData c = t;
                (second ? c.m2 : c.m1) = smaller;
                out.push_back(std::move(c));
            }
        }
    };

    add_model_shrinks(false);
    if (t.has_m2) add_model_shrinks(true);

    for (std::size_t i = 0; i < t.formulas.size(); ++i) {
        for (const Formula& sub : subformulas(t.formulas[i])) {
            TrialData c = t;
            c.formulas[i] = sub;
            out.push_back(std::move(c));
        }
    }

    for (std::size_t ci = 0; ci < t.cnf.size(); ++ci) {
        if (t.cnf.size() > 1) {
            TrialData c = t;
            c.cnf.erase(c.cnf.begin() + ci);
            out.push_back(std::move(c));
        }
        for (std::size_t li = 0; li < t.cnf[ci].size(); ++li) {
            if (t.cnf[ci].size() > 1) {
                TrialData c = t;
                c.cnf[ci].erase(c.cnf[ci].begin() + li);
                out.push_back(std::move(c));
            }
            for (const Formula& sub : subformulas(t.cnf[ci][li].base)) {
                TrialData c = t;
                c.cnf[ci][li].base = sub;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

}  // namespace

TrialData shrink(const TrialData& start) {
    TrialData cur = start;
    for (int round = 0; round < 500; ++round) {
        bool improved = false;
        for (TrialData& cand : shrink_candidates(cur)) {
            bool fails = false;
            try {
                fails = predicate_fails(cand);
            } catch (...) {
                fails = false;
            }
            if (fails) {
                cur = std::move(cand);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return cur;
}

// ── Bundles ─────────────────────────────────────────────────────────────────

json bundle_to_json(const TrialData& t) {
    json j;
    j["predicate"] = predicate_name(t.pred);
    j["model"] = model_to_json(t.m1);
    j["kind"] = t.m1.kind == ModelKind::Proper ? "proper" : "pseudo";
    j["state"] = state_to_json(t.m1, t.s1);
    if (t.has_m2) {
        j["model2"] = model_to_json(t.m2);
        j["kind2"] = t.m2.kind == ModelKind::Proper ? "proper" : "pseudo";
        j["state2"] = state_to_json(t.m2, t.s2);
    }
    if (!t.formulas.empty()) {
        json arr = json::array();
        for (const Formula& f : t.formulas) arr.push_back(print(f, t.m1.sig));
        j["formulas"] = arr;
    }
    if (!t.cnf.empty()) {
        json clauses = json::array();
        for (const CnfClause& cl : t.cnf) {
            json lits = json::array();
            for (const CnfLiteral& lit : cl)
                lits.push_back(json::array(
                    {lit.positive ? "+" : "-", print(lit.base, t.m1.sig)}));
            clauses.push_back(lits);
        }
        j["cnf"] = clauses;
    }
    j["policy"] = policy_name(t.policy);
    if (t.rounds > 0) j["rounds"] = t.rounds;
    if (t.world >= 0) j["world"] = t.m1.world_names[t.world];
    return j;
}

TrialData bundle_from_json(const json& j) {
    TrialData t;
    auto pred = predicate_from_name(j.at("predicate").get<std::string>());
    if (!pred) throw JsonFormatError("unknown predicate in bundle");
    t.pred = *pred;
    t.m1 = model_from_json(j.at("model"));
    if (j.contains("kind"))
        t.m1.kind =
            j.at("kind").get<std::string>() == "proper" ? ModelKind::Proper : ModelKind::Pseudo;
    if (j.contains("state")) {
        InfoState s;
        for (const auto& el : j.at("state")) {
            auto name = el.get<std::string>();
            for (int w = 0; w < t.m1.n_worlds(); ++w)
                if (t.m1.world_names[w] == name) s = s.with(w);
        }
        t.s1 = s;
    }
    if (j.contains("model2")) {
        t.has_m2 = true;
        t.m2 = model_from_json(j.at("model2"));
        if (j.contains("kind2"))
            t.m2.kind = j.at("kind2").get<std::string>() == "proper" ? ModelKind::Proper
                                                                     : ModelKind::Pseudo;
        if (j.contains("state2")) {
            InfoState s;
            for (const auto& el : j.at("state2")) {
                auto name = el.get<std::string>();
                for (int w = 0; w < t.m2.n_worlds(); ++w)
                    if (t.m2.world_names[w] == name) s = s.with(w);
            }
            t.s2 = s;
        }
    }
    if (j.contains("formulas"))
        for (const auto& el : j.at("formulas"))
            t.formulas.push_back(parse(el.get<std::string>(), t.m1.sig));
    if (j.contains("cnf")) {
        for (const auto& cl : j.at("cnf")) {
            CnfClause clause;
            for (const auto& lit : cl) {
                std::string sign = lit.at(0).get<std::string>();
                if (sign != "+" && sign != "-")
                    throw JsonFormatError("literal sign must be \"+\" or \"-\"");
                clause.push_back({sign == "+",
                                  parse(lit.at(1).get<std::string>(), t.m1.sig)});
            }
            t.cnf.push_back(std::move(clause));
        }
    }
    if (j.contains("policy")) {
        auto p = policy_from_name(j.at("policy").get<std::string>());
        if (p) t.policy = *p;
    }
    if (j.contains("rounds")) t.rounds = j.at("rounds").get<int>();
    if (j.contains("world")) {
        auto name = j.at("world").get<std::string>();
        for (int w = 0; w < t.m1.n_worlds(); ++w)
            if (t.m1.world_names[w] == name) t.world = w;
    }
    return t;
}

// ── Driver ──────────────────────────────────────────────────────────────────

CheckStats run_check(Check c, const FuzzConfig& cfg, bool shrink_failures) {
    CheckStats st;
    st.check = c;
    for (int i = 0; i < cfg.trials; ++i) {
        ++st.trials;
        std::uint64_t trial_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(c), i);
        auto failed = run_one_trial(c, cfg, trial_seed);
        if (failed) {
            ++st.failures;
            Failure f;
            f.check = c;
            f.trial = i;
            f.data = shrink_failures ? shrink(*failed) : *failed;
            st.failure_list.push_back(std::move(f));
        }
    }
    return st;
}

Report run_fuzz(const FuzzConfig& cfg) {
    Report r;
    r.config = cfg;
    for (Check c : cfg.checks) {
        CheckStats st = run_check(c, cfg, true);
        r.total_failures += st.failures;
        r.stats.push_back(std::move(st));
    }
    return r;
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "fuzz report (seed " << r.config.seed << ", " << r.config.trials
       << " trials per check)\n";
    os << "check         trials  failures\n";
    for (const CheckStats& st : r.stats) {
        std::string name = check_name(st.check);
        name.resize(12, ' ');
        os << name << "  " << st.trials << "       " << st.failures << "\n";
    }
    os << "total failures: " << r.total_failures << "\n";
    for (const CheckStats& st : r.stats) {
        for (const Failure& f : st.failure_list) {
            os << "--- failure (" << check_name(f.check) << ", trial " << f.trial
               << ", predicate " << predicate_name(f.data.pred) << ")\n";
            os << bundle_to_json(f.data).dump(2) << "\n";
        }
    }
    return os.str();
}

json report_to_json(const Report& r) {
    json j;
    j["seed"] = r.config.seed;
    j["trials_per_check"] = r.config.trials;
    j["total_failures"] = r.total_failures;
    json checks = json::array();
    for (const CheckStats& st : r.stats) {
        json cj;
        cj["check"] = check_name(st.check);
        cj["trials"] = st.trials;
        cj["failures"] = st.failures;
        json fl = json::array();
        for (const Failure& f : st.failure_list) {
            json fj;
            fj["trial"] = f.trial;
            fj["bundle"] = bundle_to_json(f.data);
            fl.push_back(fj);
        }
        cj["failure_list"] = fl;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

}  // namespace inq::fuzz
