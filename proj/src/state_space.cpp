#include "tfair/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "tfair/number_format.hpp"

namespace tfair {

namespace {

// Absorbs representation error such as 0.3 / 0.1 = 2.9999999999999996.
constexpr double kFloorSlack = 1e-9;

std::size_t snapped_floor(double x) { return static_cast<std::size_t>(std::floor(x + kFloorSlack)); }

std::size_t first_near_max(const std::vector<double>& values, double tie_tolerance) {
  const double best = *std::max_element(values.begin(), values.end());
  const double threshold = best - tie_tolerance * std::max(1.0, std::abs(best));
  std::size_t k = 0;
  while (values[k] < threshold) ++k;
  return k;
}

}  // namespace

void DiscretizationSpec::validate() const {
  if (!(u_max > 0.0)) throw ValidationError("discretization: u_max must be > 0");
  if (!(delta > 0.0)) throw ValidationError("discretization: delta must be > 0");
  if (delta > u_max) throw ValidationError("discretization: delta must not exceed u_max");
  if (!(gamma_p >= 0.0 && gamma_p < 1.0)) {
    throw ValidationError("discretization: gamma_p must lie in [0, 1), got " + format_number(gamma_p));
  }
}

double discounted_bound(double gamma_p, double u_max) {
  if (gamma_p == 1.0) throw ValidationError("unbounded (perfect recall)");
  if (!(gamma_p >= 0.0 && gamma_p < 1.0)) {
    throw ValidationError("gamma_p must lie in [0, 1), got " + format_number(gamma_p));
  }
  if (!(u_max > 0.0)) throw ValidationError("u_max must be > 0");
  return u_max / (1.0 - gamma_p);
}

std::size_t state_count_discounted(const DiscretizationSpec& spec) {
  spec.validate();
  return snapped_floor(discounted_bound(spec.gamma_p, spec.u_max) / spec.delta) + 1;
}

std::size_t state_count_perfect(std::uint64_t t, double u_max, double delta) {
  if (!(u_max > 0.0) || !(delta > 0.0)) throw ValidationError("u_max and delta must be > 0");
  return snapped_floor(static_cast<double>(t + 1) * u_max / delta) + 1;
}

Eigen::VectorXi discretize(const Eigen::VectorXd& z, const DiscretizationSpec& spec) {
  const double bound = discounted_bound(spec.gamma_p, spec.u_max);
  const auto top = static_cast<int>(state_count_discounted(spec) - 1);
  Eigen::VectorXi bins(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!(z[i] >= 0.0)) throw ValidationError("discretize: negative or NaN Z");
    if (z[i] > bound + spec.delta / 2) {
      throw ValidationError("discretize: Z = " + format_number(z[i]) + " exceeds the discounted bound " +
                            format_number(bound));
    }
    bins[i] = std::min(top, static_cast<int>(snapped_floor(z[i] / spec.delta)));
  }
  return bins;
}

Eigen::VectorXd AugmentedMDP::representative_z(std::size_t state) const {
  return states.at(state).bins.cast<double>() * spec.delta;
}

FairnessState<double> AugmentedMDP::fairness_state(std::size_t state) const {
  return FairnessState<double>::from_values(paradigm, agents, representative_z(state), 0.0, 0);
}

double estimated_state_count(std::size_t phases, std::size_t agents, const DiscretizationSpec& spec) {
  return static_cast<double>(phases) *
         std::pow(static_cast<double>(state_count_discounted(spec)), static_cast<double>(agents));
}

AugmentedMDP build_augmented_mdp(const std::vector<Round>& cycle, const std::vector<AgentId>& agents,
                                 const ParadigmConfig& paradigm, const WelfareSpec& welfare,
                                 const DiscretizationSpec& spec, std::size_t horizon, double state_cap,
                                 const AllocatorOptions& allocator) {
  paradigm.validate();
  spec.validate();
  if (paradigm.mode != Paradigm::discounted_additive) {
    throw ValidationError("planning requires discounted_additive mode (got " +
                          std::string(paradigm_name(paradigm.mode)) + ")");
  }
  if (paradigm.gamma_p != spec.gamma_p) {
    throw ValidationError("planning: discretization gamma_p differs from the paradigm's");
  }
  if (agents.empty()) throw ValidationError("planning: no agents");
  if (cycle.empty()) throw ValidationError("planning: empty round cycle");
  welfare.validate(agents.size());
  for (const auto& round : cycle) {
    for (const auto& item : round.items) {
      for (const auto& agent : agents) {
        const double u = item.utility_for(agent);
        if (u > spec.u_max) {
          throw ValidationError("planning: item '" + item.id + "' utility exceeds u_max");
        }
      }
    }
  }

  const double estimate = estimated_state_count(cycle.size(), agents.size(), spec);
  if (estimate > state_cap) {
    throw CapacityError("augmented state space too large: estimated " + format_number(estimate) +
                        " states, cap is " + format_number(state_cap));
  }

  AugmentedMDP mdp;
  mdp.agents = agents;
  for (const auto& r : cycle) mdp.cycle.push_back(r.items);
  mdp.paradigm = paradigm;
  mdp.welfare = welfare;
  mdp.spec = spec;
  mdp.horizon = horizon;
  mdp.states.push_back(MdpState{0, Eigen::VectorXi::Zero(static_cast<Eigen::Index>(agents.size()))});
  mdp.actions.emplace_back();
  if (horizon == 0) return mdp;

  std::vector<std::vector<Allocation>> allocations;
  std::vector<std::vector<Eigen::VectorXd>> steps;
  for (const auto& items : mdp.cycle) {
    allocations.push_back(enumerate_allocations(items, agents, allocator));
    steps.emplace_back();
    for (const auto& a : allocations.back()) steps.back().push_back(step_utilities(a, items, agents).values());
  }

  using Key = std::pair<std::size_t, std::vector<int>>;
  auto key_of = [](const MdpState& s) { return Key{s.phase, std::vector<int>(s.bins.data(), s.bins.data() + s.bins.size())}; };
  std::map<Key, std::size_t> index;
  index.emplace(key_of(mdp.states[0]), 0);

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const auto s = frontier.front();
    frontier.pop_front();
    const auto phase = mdp.states[s].phase;
    const auto next_phase = (phase + 1) % mdp.cycle.size();
    const auto fs = mdp.fairness_state(s);

    std::vector<MdpAction> acts;
    acts.reserve(allocations[phase].size());
    for (std::size_t a = 0; a < allocations[phase].size(); ++a) {
      const Eigen::VectorXd z = fs.preview(steps[phase][a]);
      MdpState next{next_phase, discretize(z, spec)};
      mdp.max_bin = std::max(mdp.max_bin, next.bins.size() ? next.bins.maxCoeff() : 0);
      mdp.max_binning_error =
          std::max(mdp.max_binning_error, (z - next.bins.cast<double>() * spec.delta).cwiseAbs().maxCoeff());

      const auto [it, inserted] = index.emplace(key_of(next), mdp.states.size());
      if (inserted) {
        if (static_cast<double>(mdp.states.size() + 1) > state_cap) {
          throw CapacityError("augmented state space exceeded cap " + format_number(state_cap) +
                              " during enumeration (estimated " + format_number(estimate) + ")");
        }
        mdp.states.push_back(std::move(next));
        mdp.actions.emplace_back();
        frontier.push_back(it->second);
      }
      acts.push_back(MdpAction{allocations[phase][a], it->second, evaluate(welfare, z)});
    }
    mdp.actions[s] = std::move(acts);
  }
  return mdp;
}

PlanResult value_iteration(const AugmentedMDP& mdp, double tie_tolerance) {
  const auto n = mdp.states.size();
  PlanResult plan;
  plan.values.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
  plan.policy.emplace_back(n, -1);
  std::vector<double> q;
  for (std::size_t k = 1; k <= mdp.horizon; ++k) {
    const auto& prev = plan.values.back();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    std::vector<int> pi(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
      const auto& acts = mdp.actions[s];
      if (acts.empty()) continue;
      q.clear();
      for (const auto& a : acts) q.push_back(a.reward + prev[static_cast<Eigen::Index>(a.next)]);
      const auto best = first_near_max(q, tie_tolerance);
      pi[s] = static_cast<int>(best);
      v[static_cast<Eigen::Index>(s)] = q[best];
    }
    plan.values.push_back(std::move(v));
    plan.policy.push_back(std::move(pi));
  }
  return plan;
}

Rollout rollout_planned(const AugmentedMDP& mdp, const PlanResult& plan) {
  Rollout r;
  std::size_t s = 0;
  r.states.push_back(s);
  for (std::size_t h = 0; h < mdp.horizon; ++h) {
    const int a = plan.policy.at(mdp.horizon - h).at(s);
    if (a < 0) break;
    const auto& act = mdp.actions[s][static_cast<std::size_t>(a)];
    r.actions.push_back(a);
    r.rewards.push_back(act.reward);
    r.total += act.reward;
    s = act.next;
    r.states.push_back(s);
  }
  return r;
}

Rollout rollout_myopic(const AugmentedMDP& mdp, double tie_tolerance) {
  Rollout r;
  std::size_t s = 0;
  r.states.push_back(s);
  std::vector<double> rewards;
  for (std::size_t h = 0; h < mdp.horizon; ++h) {
    const auto& acts = mdp.actions[s];
    if (acts.empty()) break;
    rewards.clear();
    for (const auto& a : acts) rewards.push_back(a.reward);
    const auto best = first_near_max(rewards, tie_tolerance);
    r.actions.push_back(static_cast<int>(best));
    r.rewards.push_back(acts[best].reward);
    r.total += acts[best].reward;
    s = acts[best].next;
    r.states.push_back(s);
  }
  return r;
}

}  // namespace tfair
