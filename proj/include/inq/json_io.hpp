#ifndef INQ_JSON_IO_HPP
#define INQ_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "inq/model.hpp"
#include "inq/relational.hpp"

namespace inq {

// Model files:
//   {"worlds":["w0","w1"],
//    "valuation":{"p":["w0"]},
//    "sigma":{"w0":[[],["w0"]], "w1":[[],["w1"]]}}
// Pointed files additionally carry "state":["w0","w1"] or "world":"w0".
// States are lists of world names, emitted in world order. Proposition order
// follows the JSON object order (alphabetical).

nlohmann::json model_to_json(const InqModel& m);
InqModel model_from_json(const nlohmann::json& j);

// Reads the optional point; world-pointed files normalize to a singleton.
std::optional<InfoState> point_from_json(const nlohmann::json& j, const InqModel& m);
nlohmann::json pointed_to_json(const PointedModel& pm);

// Relational files:
//   {"worlds":[...], "states":[["w0"],["w0","w1"]],
//    "E":{"w0":[0,1]}, "props":{"p":["w0"]}, "point":1}
nlohmann::json relational_to_json(const RelStruct& r);
RelStruct relational_from_json(const nlohmann::json& j);

// Parses a comma-separated list of world names ("" is the empty state).
InfoState state_from_names(const std::string& csv, const InqModel& m);

nlohmann::json state_to_json(const InqModel& m, InfoState s);

struct JsonFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace inq

#endif
