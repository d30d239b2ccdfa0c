#include "hdnet/io.hpp"

#include <fstream>
#include <sstream>

#include "hdnet/error.hpp"

namespace hdnet {

using nlohmann::json;

namespace {

json link_to_json(const LinkCapacity& c) {
  if (c.is_unbounded()) return "inf";
  return c.value();
}

LinkCapacity link_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return LinkCapacity::unbounded();
    throw_invalid("link capacity string must be \"inf\"");
  }
  if (!j.is_number()) throw_invalid("link capacity must be a number or \"inf\"");
  return LinkCapacity::finite(j.get<double>());
}

std::vector<LinkCapacity> links_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw_invalid(std::string("network JSON needs an array \"") + key + "\"");
  }
  std::vector<LinkCapacity> out;
  for (const auto& v : j.at(key)) out.push_back(link_from_json(v));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_invalid(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

json network_to_json(const DiamondNetwork& net) {
  json j = json::object();
  if (!net.name().empty()) j["name"] = net.name();
  json l = json::array();
  json r = json::array();
  for (int i = 0; i < net.size(); ++i) {
    l.push_back(link_to_json(net.uplink(i)));
    r.push_back(link_to_json(net.downlink(i)));
  }
  j["l"] = std::move(l);
  j["r"] = std::move(r);
  if (net.has_labels()) j["labels"] = net.labels();
  return j;
}

DiamondNetwork network_from_json(const json& j) {
  if (!j.is_object()) throw_invalid("network JSON must be an object");
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw_invalid("network name must be a string");
    name = j.at("name").get<std::string>();
  }
  std::vector<int> labels;
  if (j.contains("labels")) {
    for (const auto& v : j.at("labels")) {
      if (!v.is_number_integer()) throw_invalid("labels must be integers");
      labels.push_back(v.get<int>());
    }
  }
  return DiamondNetwork(links_from_json(j, "l"), links_from_json(j, "r"), std::move(labels),
                        std::move(name));
}

json schedule_to_json(const Schedule& sched) {
  json states = json::array();
  for (const auto& [s, p] : sched.entries()) {
    states.push_back({{"state", to_string(StateMask{s}, sched.size())}, {"prob", p}});
  }
  return {{"n", sched.size()}, {"states", std::move(states)}};
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw_invalid("schedule JSON needs an integer \"n\"");
  }
  const int n = j.at("n").get<int>();
  if (!j.contains("states") || !j.at("states").is_array()) {
    throw_invalid("schedule JSON needs an array \"states\"");
  }
  std::map<std::uint32_t, double> probs;
  for (const auto& e : j.at("states")) {
    if (!e.contains("state") || !e.at("state").is_string() || !e.contains("prob") ||
        !e.at("prob").is_number()) {
      throw_invalid("schedule entries need \"state\" (string) and \"prob\" (number)");
    }
    const auto text = e.at("state").get<std::string>();
    if (static_cast<int>(text.size()) != n) throw_invalid("state width differs from n");
    const auto bits = parse_mask_bits(text);
    if (probs.count(bits) != 0) throw_invalid("duplicate schedule state " + text);
    probs[bits] = e.at("prob").get<double>();
  }
  return Schedule(n, std::move(probs));
}

std::string render_network(const DiamondNetwork& net) { return network_to_json(net).dump(); }

DiamondNetwork parse_network(std::string_view text) { return network_from_json(parse_json(text)); }

std::string render_schedule(const Schedule& sched) { return schedule_to_json(sched).dump(); }

Schedule parse_schedule(std::string_view text) { return schedule_from_json(parse_json(text)); }

DiamondNetwork load_network_file(const std::string& path) { return parse_network(read_file(path)); }

Schedule load_schedule_file(const std::string& path) { return parse_schedule(read_file(path)); }

}  // namespace hdnet
