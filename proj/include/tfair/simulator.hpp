#ifndef TFAIR_SIMULATOR_HPP
#define TFAIR_SIMULATOR_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tfair/allocator.hpp"
#include "tfair/scenario.hpp"
#include "tfair/temporal_fairness.hpp"
#include "tfair/welfare.hpp"

namespace tfair {

/// What happens to a departed agent's Z if the same id arrives again.
enum class ReentryPolicy {
  fresh,    // restart at Z = 0
  restore,  // resume the Z held at departure
};

struct SimulationOptions {
  AllocatorOptions allocator;
  DenominatorPolicy denominators = DenominatorPolicy::global;
  ReentryPolicy reentry = ReentryPolicy::fresh;
};

/// One round of an episode. Vectors are indexed like EpisodeTrace::agents;
/// untracked agents have step 0 and perceived Z 0.
struct RoundRecord {
  std::size_t t = 0;
  std::vector<bool> tracked;
  Allocation allocation;
  Eigen::VectorXd step;
  Eigen::VectorXd perceived;
  Eigen::VectorXd cumulative;
  double welfare = 0.0;
};

struct EpisodeTrace {
  std::string label;
  std::vector<AgentId> agents;
  std::vector<RoundRecord> records;

  [[nodiscard]] std::size_t agent_index(const AgentId& id) const;
};

EpisodeTrace run_episode(const Scenario& scenario, const ParadigmConfig& paradigm,
                         const WelfareSpec& welfare, const SimulationOptions& options = {});

/// Aligned per-round series for a pair of agents.
struct MetricSeries {
  std::vector<double> cumulative_difference;  // ΣU_a − ΣU_b
  std::vector<double> perceived_difference;   // Z_a − Z_b
  std::vector<double> welfare;
};

MetricSeries metrics(const EpisodeTrace& trace, const AgentId& a, const AgentId& b);

struct ExperimentConfig {
  std::string label;
  ParadigmConfig paradigm;
  WelfareSpec welfare;
};

/// Default label: paradigm label, plus "/welfare" when not MMF.
std::string default_label(const ParadigmConfig& paradigm, const WelfareSpec& welfare);

/// Runs every config on the same scenario (in parallel, one state per
/// episode). Traces come back in config order. Labels must be unique.
std::vector<EpisodeTrace> compare(const Scenario& scenario, const std::vector<ExperimentConfig>& configs,
                                  const SimulationOptions& options = {});

/// Long-format CSV: t,config,agent,step_utility,cumulative_utility,perceived_Z,welfare,allocation.
/// Rows ordered by (config, t, agent); one row per tracked agent.
void write_trace_csv(std::ostream& out, const std::vector<EpisodeTrace>& traces);

}  // namespace tfair

#endif  // TFAIR_SIMULATOR_HPP
