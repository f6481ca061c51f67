#ifndef TFAIR_SCENARIO_HPP
#define TFAIR_SCENARIO_HPP

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tfair/allocator.hpp"

namespace tfair {

/// One participation interval: active on rounds [arrival, departure).
/// The same id may appear in several non-overlapping stints.
struct AgentSpec {
  AgentId id;
  std::size_t arrival = 0;
  std::optional<std::size_t> departure;

  [[nodiscard]] bool active_at(std::size_t round) const {
    return round >= arrival && (!departure || round < *departure);
  }
};

struct Round {
  std::size_t index = 0;
  std::vector<Item> items;
};

struct Scenario {
  std::vector<AgentSpec> agents;
  double u_max = 1.0;
  std::vector<Round> rounds;
  /// Non-fatal findings from validation (e.g. defaulted utilities).
  std::vector<std::string> warnings;

  /// Distinct agent ids in order of first appearance.
  [[nodiscard]] std::vector<AgentId> agent_ids() const;
  /// Agents active in `round`, in agent_ids() order.
  [[nodiscard]] std::vector<AgentId> active_agents(std::size_t round) const;
};

/// Parses and normalizes a scenario document. Generator blocks
/// `{"repeat": N, "items": [...]}` expand into N identical rounds.
Scenario validate_scenario(const nlohmann::json& raw);

/// Reads and validates a scenario file. Missing file → ValidationError
/// "scenario not found: <path>".
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace tfair

#endif  // TFAIR_SCENARIO_HPP
