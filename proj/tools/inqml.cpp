// inqml — model checking, translation and differential testing for
// inquisitive modal logic over finite (pseudo-)models.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "inq/bisim.hpp"
#include "inq/config.hpp"
#include "inq/fo.hpp"
#include "inq/formula.hpp"
#include "inq/fuzz.hpp"
#include "inq/json_io.hpp"
#include "inq/model.hpp"
#include "inq/mutation.hpp"
#include "inq/relational.hpp"
#include "inq/support.hpp"
#include "inq/translate.hpp"

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct PointSpec {
    std::optional<std::string> state_csv;  // "--state w0,w1"; empty string = {}
    std::optional<std::string> world;
};

inq::InfoState resolve_point(const PointSpec& spec, const inq::InqModel& m,
                             const json& file) {
    if (spec.world) {
        for (int w = 0; w < m.n_worlds(); ++w)
            if (m.world_names[w] == *spec.world) return inq::InfoState::singleton(w);
        throw std::runtime_error("unknown world name \"" + *spec.world + "\"");
    }
    if (spec.state_csv) return inq::state_from_names(*spec.state_csv, m);
    if (auto p = inq::point_from_json(file, m)) return *p;
    throw std::runtime_error("no point given: use --state or --world, or a pointed file");
}

int cmd_check(const std::string& model_path, const PointSpec& spec,
              const std::string& formula_text, const std::string& strategy, bool trace) {
    json jm = load_json(model_path);
    inq::InqModel m = inq::model_from_json(jm);
    inq::ModelVerdict v = inq::validate(m);
    if (!v.at_least_pseudo())
        throw std::runtime_error("model invalid: " + v.reason +
                                 (v.world >= 0 ? " (world " + m.world_names[v.world] + ")"
                                               : ""));
    inq::InfoState s = resolve_point(spec, m, jm);
    inq::Formula f = inq::parse(formula_text, m.sig);
    bool res;
    if (strategy == "graded")
        res = inq::supports_graded(m, s, f);
    else if (strategy == "naive")
        res = inq::supports(m, s, f);
    else
        throw std::runtime_error("unknown strategy \"" + strategy + "\"");
    std::cout << (res ? "supported" : "unsupported") << "\n";
    if (trace)
        for (const std::string& line : inq::supports_trace(m, s, f)) std::cout << line << "\n";
    return 0;
}

int cmd_translate(const std::string& formula_text, const std::string& variant,
                  const std::string& sig_csv) {
    inq::Signature sig;
    if (!sig_csv.empty()) {
        std::vector<std::string> names;
        std::size_t pos = 0;
        while (pos <= sig_csv.size()) {
            std::size_t comma = sig_csv.find(',', pos);
            std::string n = sig_csv.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!n.empty()) names.push_back(n);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        sig = inq::Signature(names);
    }
    inq::Formula f = inq::parse_extend(formula_text, sig);
    inq::FOFormula fo;
    if (variant == "state")
        fo = inq::standard_translate(f);
    else if (variant == "world")
        fo = inq::world_translate(f);
    else
        throw std::runtime_error("unknown variant \"" + variant + "\"");
    std::cout << inq::print_fo(fo, sig) << "\n";
    std::set<int> worlds, states;
    auto walk = [&](auto&& self, const inq::FOFormula& g) -> void {
        const auto& n = g.node();
        switch (n.kind) {
            case inq::FOKind::Mem:
            case inq::FOKind::EMem: worlds.insert(n.a); states.insert(n.b); break;
            case inq::FOKind::Prop: worlds.insert(n.b); break;
            case inq::FOKind::Eq: worlds.insert(n.a); worlds.insert(n.b); break;
            case inq::FOKind::SubsetS: states.insert(n.a); states.insert(n.b); break;
            case inq::FOKind::ForallW:
            case inq::FOKind::ExistsW: worlds.insert(n.a); break;
            case inq::FOKind::ForallS:
            case inq::FOKind::ExistsS: states.insert(n.a); break;
            default: break;
        }
        for (const auto& k : n.kids) self(self, k);
    };
    walk(walk, fo);
    std::cout << "flatness grade: " << inq::flatness_grade(f) << "\n";
    std::cout << "tuple length:   " << inq::translation_tuple_length(f) << "\n";
    std::cout << "modal depth:    " << inq::modal_depth(f) << "\n";
    std::cout << "world vars:     " << worlds.size() << "\n";
    std::cout << "state vars:     " << states.size() << "\n";
    return 0;
}

int cmd_grade(const std::string& formula_text) {
    inq::Signature sig;
    inq::Formula f = inq::parse_extend(formula_text, sig);
    std::cout << "flatness grade: " << inq::flatness_grade(f) << "\n";
    std::cout << "modal depth:    " << inq::modal_depth(f) << "\n";
    std::cout << "core form:      " << inq::print(f, sig) << "\n";
    return 0;
}

int cmd_validate(const std::string& path, bool relational) {
    json j = load_json(path);
    if (relational) {
        inq::RelStruct r = inq::relational_from_json(j);
        inq::RelVerdict v = inq::validate_relational(r);
        switch (v.level) {
            case inq::RelVerdict::Model: std::cout << "model\n"; return 0;
            case inq::RelVerdict::Pseudo:
                std::cout << "pseudo";
                if (!v.reason.empty()) {
                    std::cout << " (" << v.reason << " fails at world "
                              << r.world_names[v.world] << ", state index " << v.state_index
                              << ", missing subset "
                              << inq::state_to_json(
                                     {r.world_names, r.sig, {}, {}, inq::ModelKind::Pseudo},
                                     v.missing_subset)
                                     .dump()
                              << ")";
                }
                std::cout << "\n";
                return 0;
            case inq::RelVerdict::Invalid:
                std::cout << "invalid: " << v.reason << "\n";
                return 1;
        }
    }
    inq::InqModel m = inq::model_from_json(j);
    inq::ModelVerdict v = inq::validate(m);
    switch (v.level) {
        case inq::ModelVerdict::Proper: std::cout << "proper\n"; return 0;
        case inq::ModelVerdict::Pseudo: std::cout << "pseudo\n"; return 0;
        case inq::ModelVerdict::Invalid:
            std::cout << "invalid: " << v.reason;
            if (v.world >= 0) std::cout << " (world " << m.world_names[v.world] << ")";
            std::cout << "\n";
            return 1;
    }
    return 1;
}

int cmd_closure(const std::string& path, bool relational) {
    json j = load_json(path);
    if (relational) {
        inq::RelStruct r = inq::relational_from_json(j);
        std::cout << inq::relational_to_json(inq::state_closure(r)).dump(2) << "\n";
        return 0;
    }
    inq::InqModel m = inq::model_from_json(j);
    inq::ModelVerdict v = inq::validate(m);
    if (!v.at_least_pseudo()) throw std::runtime_error("model invalid: " + v.reason);
    std::cout << inq::model_to_json(inq::inquisitive_closure(m)).dump(2) << "\n";
    return 0;
}

int cmd_encode(const std::string& path, const PointSpec& spec, const std::string& policy) {
    json j = load_json(path);
    inq::InqModel m = inq::model_from_json(j);
    inq::InfoState s = resolve_point(spec, m, j);
    auto p = inq::policy_from_name(policy);
    if (!p) throw std::runtime_error("unknown policy \"" + policy + "\"");
    std::cout << inq::relational_to_json(inq::encode(m, s, *p)).dump(2) << "\n";
    return 0;
}

int cmd_decode(const std::string& path) {
    inq::RelStruct r = inq::relational_from_json(load_json(path));
    inq::DecodedModel d = inq::decode(r);
    json j = inq::model_to_json(d.model);
    if (d.point) j["state"] = inq::state_to_json(d.model, *d.point);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_bisim(const std::string& path1, const PointSpec& spec1, const std::string& path2,
              const PointSpec& spec2, std::optional<int> rounds, int ef_samples,
              std::uint64_t seed) {
    json j1 = load_json(path1);
    json j2 = load_json(path2);
    inq::InqModel m1 = inq::model_from_json(j1);
    inq::InqModel m2 = inq::model_from_json(j2);
    inq::InfoState s1 = resolve_point(spec1, m1, j1);
    inq::InfoState s2 = resolve_point(spec2, m2, j2);
    inq::BisimResult r = rounds ? inq::n_bisim(m1, s1, m2, s2, *rounds)
                                : inq::full_bisim(m1, s1, m2, s2);
    json out;
    if (r.omega)
        out["level"] = "omega";
    else
        out["level"] = r.level;
    out["equivalent"] = r.equivalent;
    out["witness"] = r.witness;
    if (ef_samples > 0 && rounds) {
        std::mt19937_64 rng(seed);
        inq::EfReport rep = inq::ef_check(
            m1, s1, m2, s2, *rounds,
            [&](int) {
                return inq::fuzz::random_formula_md(rng, m1.sig.size(), *rounds, 9);
            },
            ef_samples);
        out["ef_formulas_checked"] = rep.formulas_checked;
        json dis = json::array();
        for (const inq::Formula& f : rep.disagreements) dis.push_back(inq::print(f, m1.sig));
        out["ef_disagreements"] = dis;
    }
    std::cout << out.dump(2) << "\n";
    return r.equivalent || !out.contains("ef_disagreements") ||
                   out["ef_disagreements"].empty()
               ? 0
               : 1;
}

int cmd_fuzz(inq::fuzz::FuzzConfig cfg, const std::vector<std::string>& checks,
             const std::vector<std::string>& policies, const std::string& mutate,
             const std::string& replay_path, bool as_json) {
    if (!mutate.empty()) {
        auto f = inq::mutation::fault_from_name(mutate);
        if (!f) throw std::runtime_error("unknown mutation \"" + mutate + "\"");
        inq::mutation::arm(*f);
    }
    if (!replay_path.empty()) {
        inq::fuzz::TrialData t = inq::fuzz::bundle_from_json(load_json(replay_path));
        bool fails = inq::fuzz::predicate_fails(t);
        std::cout << (fails ? "reproduced: predicate still fails"
                            : "not reproduced: predicate holds")
                  << "\n";
        inq::mutation::arm(inq::mutation::Fault::None);
        return fails ? 1 : 0;
    }
    if (!checks.empty()) {
        cfg.checks.clear();
        for (const std::string& c : checks) {
            auto ck = inq::fuzz::check_from_name(c);
            if (!ck) throw std::runtime_error("unknown check \"" + c + "\"");
            cfg.checks.push_back(*ck);
        }
    }
    if (!policies.empty()) {
        cfg.policies.clear();
        for (const std::string& p : policies) {
            auto pol = inq::policy_from_name(p);
            if (!pol) throw std::runtime_error("unknown policy \"" + p + "\"");
            cfg.policies.push_back(*pol);
        }
    }
    inq::fuzz::Report rep = inq::fuzz::run_fuzz(cfg);
    if (as_json)
        std::cout << inq::fuzz::report_to_json(rep).dump(2) << "\n";
    else
        std::cout << inq::fuzz::report_to_text(rep);
    inq::mutation::arm(inq::mutation::Fault::None);
    return rep.total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inqml: support semantics, first-order translation and bisimulation "
                 "for inquisitive modal logic"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "evaluate support of a formula");
    std::string check_model, check_formula, check_strategy = "naive";
    PointSpec check_point;
    bool check_trace = false;
    check->add_option("model", check_model, "model JSON file")->required();
    check->add_option("formula", check_formula, "formula text")->required();
    std::string check_state_opt, check_world_opt;
    auto* cs = check->add_option("--state", check_state_opt,
                                 "comma-separated world names (\"\" for the empty state)");
    auto* cw = check->add_option("--world", check_world_opt, "single world name");
    check->add_option("--strategy", check_strategy, "naive|graded")
        ->check(CLI::IsMember({"naive", "graded"}));
    check->add_flag("--trace", check_trace, "print the clause-by-clause derivation");
    cs->excludes(cw);

    // translate
    auto* translate = app.add_subcommand("translate", "standard translation into FO");
    std::string tr_formula, tr_variant = "state", tr_sig;
    translate->add_option("formula", tr_formula, "formula text")->required();
    translate->add_option("--variant", tr_variant, "state|world")
        ->check(CLI::IsMember({"state", "world"}));
    translate->add_option("--sig", tr_sig, "comma-separated proposition names");

    // grade
    auto* grade = app.add_subcommand("grade", "flatness grade and modal depth");
    std::string gr_formula;
    grade->add_option("formula", gr_formula, "formula text")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "classify a model file");
    std::string va_path;
    bool va_rel = false;
    validate->add_option("file", va_path, "JSON file")->required();
    validate->add_flag("--relational", va_rel, "treat the file as a relational structure");

    // closure
    auto* closure = app.add_subcommand("closure", "inquisitive closure / state closure");
    std::string cl_path;
    bool cl_rel = false;
    closure->add_option("file", cl_path, "JSON file")->required();
    closure->add_flag("--relational", cl_rel,
                      "state-close a pointed relational structure instead");

    // encode
    auto* encode = app.add_subcommand("encode", "relational encoding of a pointed model");
    std::string en_path, en_policy = "minimal";
    PointSpec en_point;
    std::string en_state_opt, en_world_opt;
    encode->add_option("model", en_path, "model JSON file")->required();
    auto* es = encode->add_option("--state", en_state_opt, "comma-separated world names");
    auto* ew = encode->add_option("--world", en_world_opt, "single world name");
    encode->add_option("--policy", en_policy, "minimal|subsets|full")
        ->check(CLI::IsMember({"minimal", "subsets", "full"}));
    es->excludes(ew);

    // decode
    auto* decode = app.add_subcommand("decode", "model underlying a relational structure");
    std::string de_path;
    decode->add_option("file", de_path, "relational JSON file")->required();

    // bisim
    auto* bisim = app.add_subcommand("bisim", "bisimulation game verdict");
    std::string b_path1, b_path2, b_state1, b_world1, b_state2, b_world2;
    int b_rounds = -1;
    bool b_full = false;
    int b_ef = 0;
    std::uint64_t b_seed = 1;
    bisim->add_option("model1", b_path1)->required();
    bisim->add_option("model2", b_path2)->required();
    auto* b1s = bisim->add_option("--state1", b_state1, "point of model1");
    auto* b1w = bisim->add_option("--world1", b_world1);
    auto* b2s = bisim->add_option("--state2", b_state2, "point of model2");
    auto* b2w = bisim->add_option("--world2", b_world2);
    bisim->add_option("-n,--rounds", b_rounds, "round bound (omit for the stabilized game)");
    bisim->add_flag("--full", b_full, "force the stabilized game");
    bisim->add_option("--ef", b_ef, "sample this many formulas when a round bound is given");
    bisim->add_option("--seed", b_seed, "sampler seed");
    b1s->excludes(b1w);
    b2s->excludes(b2w);

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "randomized differential testing");
    inq::fuzz::FuzzConfig fc;
    std::vector<std::string> fz_checks, fz_policies;
    std::string fz_mutate, fz_replay;
    bool fz_json = false;
    fuzz->add_option("--seed", fc.seed, "RNG seed");
    fuzz->add_option("--trials", fc.trials, "trials per check");
    fuzz->add_option("--max-worlds", fc.max_worlds)->check(CLI::Range(1, 16));
    fuzz->add_option("--props", fc.n_props)->check(CLI::Range(0, 8));
    fuzz->add_option("--depth", fc.max_formula_depth)->check(CLI::Range(0, 6));
    fuzz->add_option("--max-states", fc.max_states_per_world)->check(CLI::Range(1, 16));
    fuzz->add_option("--checks", fz_checks,
                     "subset of: fragment graded persistency closure ef rewrite roundtrip");
    fuzz->add_option("--policy", fz_policies, "subset of: minimal subsets full");
    fuzz->add_option("--mutate", fz_mutate,
                     "arm a documented fault: flat-implies inqdisj-no-plus-one "
                     "strict-implication closure-drop-empty swapped-box-guard");
    fuzz->add_option("--replay", fz_replay, "re-run a failure bundle");
    fuzz->add_flag("--json", fz_json, "machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            if (cs->count()) check_point.state_csv = check_state_opt;
            if (cw->count()) check_point.world = check_world_opt;
            return cmd_check(check_model, check_point, check_formula, check_strategy,
                             check_trace);
        }
        if (translate->parsed()) return cmd_translate(tr_formula, tr_variant, tr_sig);
        if (grade->parsed()) return cmd_grade(gr_formula);
        if (validate->parsed()) return cmd_validate(va_path, va_rel);
        if (closure->parsed()) return cmd_closure(cl_path, cl_rel);
        if (encode->parsed()) {
            if (es->count()) en_point.state_csv = en_state_opt;
            if (ew->count()) en_point.world = en_world_opt;
            return cmd_encode(en_path, en_point, en_policy);
        }
        if (decode->parsed()) return cmd_decode(de_path);
        if (bisim->parsed()) {
            PointSpec p1, p2;
            if (b1s->count()) p1.state_csv = b_state1;
            if (b1w->count()) p1.world = b_world1;
            if (b2s->count()) p2.state_csv = b_state2;
            if (b2w->count()) p2.world = b_world2;
            std::optional<int> rounds;
            if (!b_full && b_rounds >= 0) rounds = b_rounds;
            return cmd_bisim(b_path1, p1, b_path2, p2, rounds, b_ef, b_seed);
        }
        if (fuzz->parsed())
            return cmd_fuzz(fc, fz_checks, fz_policies, fz_mutate, fz_replay, fz_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
