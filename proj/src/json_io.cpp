#include "inq/json_io.hpp"

#include <algorithm>
#include <map>

#include "inq/config.hpp"

namespace inq {

using nlohmann::json;

namespace {

int world_index(const InqModel& m, const std::string& name) {
    for (int w = 0; w < m.n_worlds(); ++w)
        if (m.world_names[w] == name) return w;
    throw JsonFormatError("unknown world name \"" + name + "\"");
}

json state_names(const std::vector<std::string>& world_names, InfoState s) {
    json arr = json::array();
    for (std::size_t w = 0; w < world_names.size(); ++w)
        if (s.contains(static_cast<int>(w))) arr.push_back(world_names[w]);
    return arr;
}

InfoState state_from_json_list(const json& arr, const InqModel& m) {
    if (!arr.is_array()) throw JsonFormatError("state must be a list of world names");
    InfoState s;
    for (const auto& el : arr) s = s.with(world_index(m, el.get<std::string>()));
    return s;
}

}  // namespace

json state_to_json(const InqModel& m, InfoState s) {
    return state_names(m.world_names, s);
}

json model_to_json(const InqModel& m) {
    json j;
    j["worlds"] = m.world_names;
    json val = json::object();
    for (int p = 0; p < m.sig.size(); ++p)
        val[m.sig.name(p)] = state_names(m.world_names, m.valuation[p]);
    j["valuation"] = val;
    json sig = json::object();
    for (int w = 0; w < m.n_worlds(); ++w) {
        json fam = json::array();
        for (const InfoState& s : m.sigma[w]) fam.push_back(state_names(m.world_names, s));
        sig[m.world_names[w]] = fam;
    }
    j["sigma"] = sig;
    return j;
}

InqModel model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("worlds") || !j.contains("valuation") ||
        !j.contains("sigma"))
        throw JsonFormatError("model file needs \"worlds\", \"valuation\" and \"sigma\"");
    InqModel m;
    for (const auto& el : j.at("worlds")) m.world_names.push_back(el.get<std::string>());
    if (m.world_names.empty()) throw JsonFormatError("empty world list");
    require_within_cap(m.n_worlds());
    for (int w = 0; w < m.n_worlds(); ++w)
        for (int v = w + 1; v < m.n_worlds(); ++v)
            if (m.world_names[w] == m.world_names[v])
                throw JsonFormatError("duplicate world name \"" + m.world_names[w] + "\"");

    std::vector<std::string> props;
    for (auto it = j.at("valuation").begin(); it != j.at("valuation").end(); ++it)
        props.push_back(it.key());
    m.sig = Signature(props);
    for (const std::string& p : props)
        m.valuation.push_back(state_from_json_list(j.at("valuation").at(p), m));

    m.sigma.resize(m.n_worlds());
    const json& sig = j.at("sigma");
    for (int w = 0; w < m.n_worlds(); ++w) {
        const std::string& name = m.world_names[w];
        if (!sig.contains(name))
            throw JsonFormatError("sigma missing world \"" + name + "\"");
        for (const auto& st : sig.at(name))
            m.sigma[w].push_back(state_from_json_list(st, m));
    }
    for (auto it = sig.begin(); it != sig.end(); ++it)
        world_index(m, it.key());  // reject assignments to unknown worlds
    canonicalize(m);
    ModelVerdict v = validate(m);
    m.kind = v.level == ModelVerdict::Proper ? ModelKind::Proper : ModelKind::Pseudo;
    return m;
}

std::optional<InfoState> point_from_json(const json& j, const InqModel& m) {
    if (j.contains("state")) return state_from_json_list(j.at("state"), m);
    if (j.contains("world"))
        return InfoState::singleton(world_index(m, j.at("world").get<std::string>()));
    return std::nullopt;
}

json pointed_to_json(const PointedModel& pm) {
    json j = model_to_json(pm.model);
    j["state"] = state_names(pm.model.world_names, pm.point);
    return j;
}

json relational_to_json(const RelStruct& r) {
    json j;
    j["worlds"] = r.world_names;
    json states = json::array();
    for (const InfoState& s : r.states) states.push_back(state_names(r.world_names, s));
    j["states"] = states;
    json e = json::object();
    for (int w = 0; w < r.n_worlds(); ++w) e[r.world_names[w]] = r.E[w];
    j["E"] = e;
    json props = json::object();
    for (int p = 0; p < r.sig.size(); ++p)
        props[r.sig.name(p)] = state_names(r.world_names, r.props[p]);
    j["props"] = props;
    if (r.point) j["point"] = *r.point;
    return j;
}

RelStruct relational_from_json(const json& j) {
    if (!j.is_object() || !j.contains("worlds") || !j.contains("states") ||
        !j.contains("E") || !j.contains("props"))
        throw JsonFormatError(
            "relational file needs \"worlds\", \"states\", \"E\" and \"props\"");
    RelStruct r;
    for (const auto& el : j.at("worlds")) r.world_names.push_back(el.get<std::string>());
    if (r.world_names.empty()) throw JsonFormatError("empty world list");
    require_within_cap(r.n_worlds());

    // reuse the model-side name lookup via a shell model
    InqModel shell;
    shell.world_names = r.world_names;

    for (const auto& st : j.at("states")) {
        InfoState s;
        for (const auto& el : st) s = s.with(world_index(shell, el.get<std::string>()));
        r.states.push_back(s);
    }

    std::vector<std::string> props;
    for (auto it = j.at("props").begin(); it != j.at("props").end(); ++it)
        props.push_back(it.key());
    r.sig = Signature(props);
    for (const std::string& p : props) {
        InfoState s;
        for (const auto& el : j.at("props").at(p))
            s = s.with(world_index(shell, el.get<std::string>()));
        r.props.push_back(s);
    }

    r.E.resize(r.n_worlds());
    const json& e = j.at("E");
    for (int w = 0; w < r.n_worlds(); ++w) {
        const std::string& name = r.world_names[w];
        if (!e.contains(name)) throw JsonFormatError("E missing world \"" + name + "\"");
        for (const auto& el : e.at(name)) {
            int idx = el.get<int>();
            if (idx < 0 || idx >= r.n_states())
                throw JsonFormatError("state index out of range in E");
            r.E[w].push_back(idx);
        }
        std::sort(r.E[w].begin(), r.E[w].end());
        r.E[w].erase(std::unique(r.E[w].begin(), r.E[w].end()), r.E[w].end());
    }
    for (auto it = e.begin(); it != e.end(); ++it) world_index(shell, it.key());

    if (j.contains("point")) {
        int idx = j.at("point").get<int>();
        if (idx < 0 || idx >= r.n_states())
            throw JsonFormatError("distinguished state index out of range");
        r.point = idx;
    }
    return r;
}

InfoState state_from_names(const std::string& csv, const InqModel& m) {
    InfoState s;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string name = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        // trim spaces
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
        while (!name.empty() && name.back() == ' ') name.pop_back();
        if (!name.empty()) s = s.with(world_index(m, name));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return s;
}

}  // namespace inq
