#ifndef TFAIR_STATE_SPACE_HPP
#define TFAIR_STATE_SPACE_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tfair/allocator.hpp"
#include "tfair/scenario.hpp"
#include "tfair/temporal_fairness.hpp"
#include "tfair/welfare.hpp"

namespace tfair {

// Bounded augmented state under past discounting.
//
// With utilities in [0, u_max] and gamma_p < 1, the additive discounted update
// Z <- gamma_p * Z + u never exceeds u_max / (1 - gamma_p) (induction on t,
// starting from Z^0 = u^0 <= u_max). Uniform bins of width delta therefore
// give a per-agent state count that does not depend on t, whereas perfect
// recall needs floor((t + 1) * u_max / delta) + 1 bins at horizon t.

struct DiscretizationSpec {
  double delta = 0.1;
  double u_max = 1.0;
  double gamma_p = 0.9;

  void validate() const;
};

/// u_max / (1 - gamma_p). gamma_p = 1 throws ("unbounded (perfect recall)").
double discounted_bound(double gamma_p, double u_max);

/// Bins per agent under discounting: floor(bound / delta) + 1.
std::size_t state_count_discounted(const DiscretizationSpec& spec);

/// Bins per agent under perfect recall at horizon t: floor((t+1) u_max / delta) + 1.
std::size_t state_count_perfect(std::uint64_t t, double u_max, double delta);

/// floor(Z_i / delta) clamped to the top bin. Values more than delta/2 above
/// the bound are rejected: they can only come from a broken update.
Eigen::VectorXi discretize(const Eigen::VectorXd& z, const DiscretizationSpec& spec);

struct MdpState {
  std::size_t phase = 0;
  Eigen::VectorXi bins;
};

struct MdpAction {
  Allocation allocation;
  std::size_t next = 0;
  double reward = 0.0;
};

/// Deterministic finite MDP over (round phase, binned Z). State 0 is the
/// all-zero start. A state's Z is represented by its lower bin edges; the
/// reward of an action is the welfare of the committed (unbinned) Z.
struct AugmentedMDP {
  std::vector<AgentId> agents;
  std::vector<std::vector<Item>> cycle;
  ParadigmConfig paradigm;
  WelfareSpec welfare;
  DiscretizationSpec spec;
  std::size_t horizon = 0;
  std::vector<MdpState> states;
  std::vector<std::vector<MdpAction>> actions;
  /// Largest |Z_exact - Z_binned| over all transitions.
  double max_binning_error = 0.0;
  /// Largest per-agent bin index reached.
  int max_bin = 0;

  [[nodiscard]] Eigen::VectorXd representative_z(std::size_t state) const;
  [[nodiscard]] FairnessState<double> fairness_state(std::size_t state) const;
};

/// Analytic upper bound on the joint state count: phases * bins^agents.
double estimated_state_count(std::size_t phases, std::size_t agents, const DiscretizationSpec& spec);

/// Enumerates every (phase, bins) state reachable from the zero state (a
/// single state with no transitions when horizon = 0). Requires
/// discounted_additive with gamma_p < 1. Throws CapacityError when the
/// analytic estimate or the enumeration exceeds `state_cap`.
AugmentedMDP build_augmented_mdp(const std::vector<Round>& cycle, const std::vector<AgentId>& agents,
                                 const ParadigmConfig& paradigm, const WelfareSpec& welfare,
                                 const DiscretizationSpec& spec, std::size_t horizon,
                                 double state_cap = 1e6, const AllocatorOptions& allocator = {});

struct PlanResult {
  /// values[k][s]: optimal total reward with k steps to go, k = 0..horizon.
  std::vector<Eigen::VectorXd> values;
  /// policy[k][s]: action index with k steps to go (k >= 1), -1 if none.
  std::vector<std::vector<int>> policy;
};

/// Finite-horizon backward induction. Ties go to the lowest action index.
PlanResult value_iteration(const AugmentedMDP& mdp, double tie_tolerance = 1e-12);

struct Rollout {
  std::vector<std::size_t> states;
  std::vector<int> actions;
  std::vector<double> rewards;
  double total = 0.0;
};

/// Follows the planned policy from the zero state for the full horizon.
Rollout rollout_planned(const AugmentedMDP& mdp, const PlanResult& plan);

/// Follows the one-step welfare argmax (the myopic allocation rule) from the
/// zero state for the full horizon.
Rollout rollout_myopic(const AugmentedMDP& mdp, double tie_tolerance = 1e-12);

}  // namespace tfair

#endif  // TFAIR_STATE_SPACE_HPP
