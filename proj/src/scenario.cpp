#include "tfair/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "tfair/number_format.hpp"

namespace tfair {

std::vector<AgentId> Scenario::agent_ids() const {
  std::vector<AgentId> out;
  for (const auto& a : agents) {
    if (std::find(out.begin(), out.end(), a.id) == out.end()) out.push_back(a.id);
  }
  return out;
}

std::vector<AgentId> Scenario::active_agents(std::size_t round) const {
  std::vector<AgentId> out;
  for (const auto& id : agent_ids()) {
    const bool active = std::any_of(agents.begin(), agents.end(),
                                    [&](const AgentSpec& a) { return a.id == id && a.active_at(round); });
    if (active) out.push_back(id);
  }
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("scenario: " + where + ": " + what);
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<Item> parse_items(const json& raw, const std::string& where) {
  if (!raw.is_array()) fail(where, "\"items\" must be an array");
  std::vector<Item> items;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& it = raw[i];
    const std::string item_where = where + " item " + std::to_string(i);
    if (!it.is_object() || !it.contains("id") || !it["id"].is_string()) fail(item_where, "missing string \"id\"");
    Item item;
    item.id = it["id"].get<std::string>();
    if (!ids.insert(item.id).second) fail(item_where, "duplicate item id '" + item.id + "'");
    if (it.contains("utilities")) {
      if (!it["utilities"].is_object()) fail(item_where, "\"utilities\" must be an object");
      for (const auto& [agent, value] : it["utilities"].items()) {
        if (!value.is_number()) fail(item_where, "utility for '" + agent + "' is not a number");
        item.utilities[agent] = value.get<double>();
      }
    }
    items.push_back(std::move(item));
  }
  return items;
}

void append_rounds(const json& block, std::size_t position, std::vector<Round>& rounds) {
  const std::string where = "rounds[" + std::to_string(position) + "]";
  if (!block.is_object()) fail(where, "expected an object");
  if (block.contains("repeat")) {
    const auto count = as_index(block["repeat"], where + ".repeat");
    if (!block.contains("items")) fail(where, "generator needs \"items\"");
    const auto items = parse_items(block["items"], where);
    for (std::size_t k = 0; k < count; ++k) rounds.push_back(Round{rounds.size(), items});
    return;
  }
  if (!block.contains("items")) fail(where, "round needs \"items\"");
  Round r{rounds.size(), parse_items(block["items"], where)};
  if (block.contains("index")) {
    const auto index = as_index(block["index"], where + ".index");
    if (index != r.index) {
      fail(where, "round index " + std::to_string(index) + " breaks contiguity (expected " +
                      std::to_string(r.index) + ")");
    }
  }
  rounds.push_back(std::move(r));
}

}  // namespace

Scenario validate_scenario(const nlohmann::json& raw) {
  if (!raw.is_object()) fail("document", "expected a JSON object");
  Scenario s;

  if (!raw.contains("u_max") || !raw["u_max"].is_number()) fail("u_max", "required number");
  s.u_max = raw["u_max"].get<double>();
  if (!(s.u_max > 0.0)) fail("u_max", "must be > 0");

  if (!raw.contains("agents") || !raw["agents"].is_array()) fail("agents", "required array");
  for (std::size_t i = 0; i < raw["agents"].size(); ++i) {
    const auto& a = raw["agents"][i];
    const std::string where = "agents[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("id") || !a["id"].is_string()) fail(where, "missing string \"id\"");
    AgentSpec spec;
    spec.id = a["id"].get<std::string>();
    if (spec.id.empty() || spec.id == kDiscardAgent) fail(where, "invalid agent id");
    spec.arrival = a.contains("arrival") ? as_index(a["arrival"], where + ".arrival") : 0;
    if (a.contains("departure") && !a["departure"].is_null()) {
      spec.departure = as_index(a["departure"], where + ".departure");
      if (*spec.departure <= spec.arrival) {
        fail(where, "departure " + std::to_string(*spec.departure) + " must be after arrival " +
                        std::to_string(spec.arrival));
      }
    }
    s.agents.push_back(std::move(spec));
  }
  // Stints of the same agent must not overlap.
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < s.agents.size(); ++j) {
      const auto& a = s.agents[i];
      const auto& b = s.agents[j];
      if (a.id != b.id) continue;
      const bool a_before_b = a.departure && *a.departure <= b.arrival;
      const bool b_before_a = b.departure && *b.departure <= a.arrival;
      if (!a_before_b && !b_before_a) fail("agents", "overlapping stints for agent '" + a.id + "'");
    }
  }

  if (!raw.contains("rounds")) fail("rounds", "required");
  const auto& rounds = raw["rounds"];
  if (rounds.is_object()) {
    append_rounds(rounds, 0, s.rounds);
  } else if (rounds.is_array()) {
    for (std::size_t i = 0; i < rounds.size(); ++i) append_rounds(rounds[i], i, s.rounds);
  } else {
    fail("rounds", "expected an array or a generator object");
  }

  const auto known = s.agent_ids();
  for (const auto& round : s.rounds) {
    const std::string where = "round " + std::to_string(round.index);
    const auto active = s.active_agents(round.index);
    if (!round.items.empty() && active.empty()) fail(where, "items but no active agents");
    for (const auto& item : round.items) {
      for (const auto& [agent, value] : item.utilities) {
        if (std::find(known.begin(), known.end(), agent) == known.end()) {
          fail(where, "item '" + item.id + "' has utility for unknown agent '" + agent + "'");
        }
        if (!(value >= 0.0 && value <= s.u_max)) {
          fail(where, "item '" + item.id + "' utility " + format_number(value) + " for '" + agent +
                          "' outside [0, u_max=" + format_number(s.u_max) + "]");
        }
      }
      for (const auto& agent : active) {
        if (!item.utilities.count(agent)) {
          s.warnings.push_back(where + ": item '" + item.id + "' has no utility for '" + agent +
                               "', using 0");
        }
      }
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario not found: " + path.string());
  nlohmann::json raw;
  try {
    in >> raw;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("scenario: " + path.string() + ": invalid JSON: " + e.what());
  }
  return validate_scenario(raw);
}

}  // namespace tfair
