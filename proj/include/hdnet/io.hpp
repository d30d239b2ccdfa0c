#pragma once

// JSON interchange formats.
//
//   network:  {"name": "...", "l": [0.5, "inf", ...], "r": [...]}
//   schedule: {"n": 3, "states": [{"state": "011", "prob": 0.5}, ...]}
//
// "name" is optional. Unbounded links are written as the string "inf".
// Finite values are written in shortest round-trip form, so parse(render(x))
// reproduces every double bit for bit.

#include <string>
#include <string_view>

#include <json.hpp>

#include "hdnet/network.hpp"

namespace hdnet {

nlohmann::json network_to_json(const DiamondNetwork& net);
DiamondNetwork network_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const nlohmann::json& j);

std::string render_network(const DiamondNetwork& net);
DiamondNetwork parse_network(std::string_view text);

std::string render_schedule(const Schedule& sched);
Schedule parse_schedule(std::string_view text);

DiamondNetwork load_network_file(const std::string& path);
Schedule load_schedule_file(const std::string& path);

}  // namespace hdnet
