#ifndef TFAIR_ALLOCATOR_HPP
#define TFAIR_ALLOCATOR_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tfair/temporal_fairness.hpp"
#include "tfair/utility_vector.hpp"
#include "tfair/welfare.hpp"

namespace tfair {

/// An indivisible item with additive per-agent utilities. Agents without an
/// entry value the item at 0.
struct Item {
  std::string id;
  std::map<AgentId, double> utilities;

  [[nodiscard]] double utility_for(const AgentId& agent) const {
    const auto it = utilities.find(agent);
    return it == utilities.end() ? 0.0 : it->second;
  }
};

/// Agent id used for discarded items when free disposal is enabled.
inline const AgentId kDiscardAgent = "<discard>";

/// Item → agent mapping, stored in item order.
struct Allocation {
  std::vector<std::pair<std::string, AgentId>> assignment;

  [[nodiscard]] const AgentId& agent_for(const std::string& item) const;
  /// `item→agent` pairs joined by ';' (empty string for no items).
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

enum class TieBreak { lexicographic, random };

struct AllocatorOptions {
  /// Enumeration is refused when m * log2(n) exceeds this many bits.
  double enumeration_cap_bits = 20.0;
  TieBreak tie_break = TieBreak::lexicographic;
  std::uint64_t seed = 0;
  /// Adds a pseudo-agent (last in agent order) that may receive items.
  bool allow_discard = false;
  /// Welfare values within tie_tolerance * max(1, |best|) of the best count as tied.
  double tie_tolerance = 1e-12;
};

/// Mixed-radix view of the n^m allocation space: index k maps to the
/// assignment whose first item is the most significant digit, so increasing
/// k walks allocations in lexicographic order of (agent index per item).
class AllocationSpace {
 public:
  AllocationSpace(std::size_t n_items, std::size_t n_agents);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t n_items() const { return n_items_; }
  [[nodiscard]] std::size_t n_agents() const { return n_agents_; }
  /// Agent index for each item.
  [[nodiscard]] std::vector<std::size_t> decode(std::size_t index) const;

 private:
  std::size_t n_items_;
  std::size_t n_agents_;
  std::size_t size_;
};

/// Throws CapacityError ("allocation space too large") when the space for
/// `n_items` items over `n_agents` agents is beyond the configured cap.
void check_enumeration_cap(std::size_t n_items, std::size_t n_agents, const AllocatorOptions& options);

std::vector<Allocation> enumerate_allocations(const std::vector<Item>& items,
                                              const std::vector<AgentId>& active_agents,
                                              const AllocatorOptions& options = {});

/// u^A: per-agent sum of the utilities of the items each agent receives.
UtilityVector<double> step_utilities(const Allocation& allocation, const std::vector<Item>& items,
                                     const std::vector<AgentId>& active_agents);

struct OptimizeResult {
  Allocation allocation;
  std::size_t enumeration_index = 0;
  /// Step utilities over all agents tracked by the state (inactive agents get 0).
  UtilityVector<double> step;
  /// Z^t | A over all tracked agents.
  UtilityVector<double> previewed;
  /// Welfare of the previewed Z restricted to the active agents.
  double welfare = 0.0;
};

/// Welfare-argmax allocation of `items` to `active_agents` given the current
/// fairness state. Ties resolve to the earliest allocation in enumeration
/// order, or uniformly at random (seeded) with TieBreak::random.
OptimizeResult optimize(const FairnessState<double>& state, const std::vector<Item>& items,
                        const WelfareSpec& welfare, const std::vector<AgentId>& active_agents,
                        const AllocatorOptions& options = {}, std::mt19937_64* rng = nullptr);

/// Gives each item to the agent valuing it most (first in agent order on
/// ties). Exact for utilitarian welfare in instantaneous mode; an
/// approximation everywhere else.
Allocation greedy_utilitarian(const std::vector<Item>& items, const std::vector<AgentId>& active_agents);

}  // namespace tfair

#endif  // TFAIR_ALLOCATOR_HPP
