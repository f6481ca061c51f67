#include "tfair/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "tfair/number_format.hpp"

namespace tfair {

const AgentId& Allocation::agent_for(const std::string& item) const {
  for (const auto& [item_id, agent] : assignment) {
    if (item_id == item) return agent;
  }
  throw ValidationError("allocation: unknown item '" + item + "'");
}

std::string Allocation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i > 0) out += ';';
    out += assignment[i].first;
    out += "→";
    out += assignment[i].second;
  }
  return out;
}

AllocationSpace::AllocationSpace(std::size_t n_items, std::size_t n_agents)
    : n_items_(n_items), n_agents_(n_agents), size_(1) {
  if (n_agents == 0 && n_items > 0) throw ValidationError("allocation: no agents to receive items");
  for (std::size_t i = 0; i < n_items; ++i) {
    if (size_ > std::numeric_limits<std::size_t>::max() / n_agents) {
      throw CapacityError("allocation space too large: overflow");
    }
    size_ *= n_agents;
  }
}

std::vector<std::size_t> AllocationSpace::decode(std::size_t index) const {
  std::vector<std::size_t> digits(n_items_, 0);
  for (std::size_t i = n_items_; i-- > 0;) {
    digits[i] = index % n_agents_;
    index /= n_agents_;
  }
  return digits;
}

void check_enumeration_cap(std::size_t n_items, std::size_t n_agents, const AllocatorOptions& options) {
  if (n_agents <= 1 || n_items == 0) return;
  const double bits = static_cast<double>(n_items) * std::log2(static_cast<double>(n_agents));
  if (bits > options.enumeration_cap_bits + 1e-9) {
    throw CapacityError("allocation space too large: " + std::to_string(n_items) + " items over " +
                        std::to_string(n_agents) + " agents needs " + format_number(bits) +
                        " bits, cap is " + format_number(options.enumeration_cap_bits));
  }
}

namespace {

void require_unique(const std::vector<AgentId>& agents) {
  std::unordered_set<AgentId> seen;
  for (const auto& a : agents) {
    if (!seen.insert(a).second) throw ValidationError("allocation: duplicate agent '" + a + "'");
  }
}

std::vector<AgentId> candidate_agents(const std::vector<AgentId>& active_agents,
                                      const AllocatorOptions& options) {
  std::vector<AgentId> out = active_agents;
  if (options.allow_discard) out.push_back(kDiscardAgent);
  return out;
}

Allocation make_allocation(const std::vector<Item>& items, const std::vector<AgentId>& candidates,
                           const std::vector<std::size_t>& digits) {
  Allocation a;
  a.assignment.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) a.assignment.emplace_back(items[i].id, candidates[digits[i]]);
  return a;
}

}  // namespace

std::vector<Allocation> enumerate_allocations(const std::vector<Item>& items,
                                              const std::vector<AgentId>& active_agents,
                                              const AllocatorOptions& options) {
  if (active_agents.empty()) throw ValidationError("allocation: at least one active agent required");
  require_unique(active_agents);
  const auto candidates = candidate_agents(active_agents, options);
  check_enumeration_cap(items.size(), candidates.size(), options);
  const AllocationSpace space(items.size(), candidates.size());
  std::vector<Allocation> out;
  out.reserve(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) out.push_back(make_allocation(items, candidates, space.decode(k)));
  return out;
}

UtilityVector<double> step_utilities(const Allocation& allocation, const std::vector<Item>& items,
                                     const std::vector<AgentId>& active_agents) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(active_agents.size()));
  for (const auto& [item_id, agent] : allocation.assignment) {
    const auto item = std::find_if(items.begin(), items.end(), [&](const Item& it) { return it.id == item_id; });
    if (item == items.end()) throw ValidationError("allocation: unknown item '" + item_id + "'");
    if (agent == kDiscardAgent) continue;
    const auto pos = std::find(active_agents.begin(), active_agents.end(), agent);
    if (pos == active_agents.end()) throw ValidationError("allocation: unknown agent '" + agent + "'");
    u[pos - active_agents.begin()] += item->utility_for(agent);
  }
  return UtilityVector<double>(active_agents, std::move(u));
}

OptimizeResult optimize(const FairnessState<double>& state, const std::vector<Item>& items,
                        const WelfareSpec& welfare, const std::vector<AgentId>& active_agents,
                        const AllocatorOptions& options, std::mt19937_64* rng) {
  if (active_agents.empty()) throw ValidationError("allocation: at least one active agent required");
  require_unique(active_agents);
  welfare.validate(active_agents.size());

  std::vector<Eigen::Index> state_pos;
  state_pos.reserve(active_agents.size());
  for (const auto& a : active_agents) {
    const auto idx = state.index_of(a);
    if (!idx) throw ValidationError("allocation: active agent '" + a + "' is not tracked by the state");
    state_pos.push_back(static_cast<Eigen::Index>(*idx));
  }

  const auto candidates = candidate_agents(active_agents, options);
  check_enumeration_cap(items.size(), candidates.size(), options);
  const AllocationSpace space(items.size(), candidates.size());

  // utility[i, j]: item i's value to active agent j.
  Eigen::MatrixXd utility(static_cast<Eigen::Index>(items.size()),
                          static_cast<Eigen::Index>(active_agents.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < active_agents.size(); ++j) {
      utility(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = items[i].utility_for(active_agents[j]);
    }
  }

  const auto n_tracked = static_cast<Eigen::Index>(state.size());
  const auto n_active = static_cast<Eigen::Index>(active_agents.size());
  auto step_for = [&](const std::vector<std::size_t>& digits) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n_tracked);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const auto j = static_cast<Eigen::Index>(digits[i]);
      if (j < n_active) u[state_pos[static_cast<std::size_t>(j)]] += utility(static_cast<Eigen::Index>(i), j);
    }
    return u;
  };

  std::vector<double> values(space.size());
  Eigen::VectorXd active_z(n_active);
  for (std::size_t k = 0; k < space.size(); ++k) {
    const Eigen::VectorXd z = state.preview(step_for(space.decode(k)));
    for (Eigen::Index j = 0; j < n_active; ++j) active_z[j] = z[state_pos[static_cast<std::size_t>(j)]];
    values[k] = evaluate(welfare, active_z);
  }

  const double best = *std::max_element(values.begin(), values.end());
  const double threshold = best - options.tie_tolerance * std::max(1.0, std::abs(best));
  std::size_t chosen = 0;
  if (options.tie_break == TieBreak::random) {
    std::vector<std::size_t> tied;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] >= threshold) tied.push_back(k);
    }
    std::mt19937_64 fallback(options.seed);
    auto& gen = rng ? *rng : fallback;
    std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
    chosen = tied[pick(gen)];
  } else {
    while (values[chosen] < threshold) ++chosen;
  }

  const auto digits = space.decode(chosen);
  Eigen::VectorXd step = step_for(digits);
  Eigen::VectorXd previewed = state.preview(step);
  return OptimizeResult{make_allocation(items, candidates, digits), chosen,
                        UtilityVector<double>(state.agents(), std::move(step)),
                        UtilityVector<double>(state.agents(), std::move(previewed)), values[chosen]};
}

Allocation greedy_utilitarian(const std::vector<Item>& items, const std::vector<AgentId>& active_agents) {
  if (active_agents.empty()) throw ValidationError("allocation: at least one active agent required");
  Allocation a;
  for (const auto& item : items) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < active_agents.size(); ++j) {
      if (item.utility_for(active_agents[j]) > item.utility_for(active_agents[best])) best = j;
    }
    a.assignment.emplace_back(item.id, active_agents[best]);
  }
  return a;
}

}  // namespace tfair
