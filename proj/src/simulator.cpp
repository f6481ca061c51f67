#include "tfair/simulator.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <set>

namespace tfair {

std::size_t EpisodeTrace::agent_index(const AgentId& id) const {
  const auto it = std::find(agents.begin(), agents.end(), id);
  if (it == agents.end()) throw ValidationError("trace: unknown agent '" + id + "'");
  return static_cast<std::size_t>(it - agents.begin());
}

EpisodeTrace run_episode(const Scenario& scenario, const ParadigmConfig& paradigm,
                         const WelfareSpec& welfare, const SimulationOptions& options) {
  paradigm.validate();
  welfare.validate();

  EpisodeTrace trace;
  trace.label = default_label(paradigm, welfare);
  trace.agents = scenario.agent_ids();
  const auto n = static_cast<Eigen::Index>(trace.agents.size());

  auto state = FairnessState<double>::init(paradigm, {}, options.denominators);
  std::map<AgentId, double> departed_z;
  Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(n);
  std::mt19937_64 rng(options.allocator.seed);

  for (const auto& round : scenario.rounds) {
    const auto active = scenario.active_agents(round.index);

    for (const auto& id : state.agents()) {
      if (std::find(active.begin(), active.end(), id) == active.end()) {
        departed_z[id] = state.z()[static_cast<Eigen::Index>(*state.index_of(id))];
      }
    }
    for (const auto& id : std::vector<AgentId>(state.agents())) {
      if (std::find(active.begin(), active.end(), id) == active.end()) state = state.remove_agent(id);
    }
    for (const auto& id : active) {
      if (state.index_of(id)) continue;
      const auto prior = departed_z.find(id);
      const double initial =
          options.reentry == ReentryPolicy::restore && prior != departed_z.end() ? prior->second : 0.0;
      state = state.add_agent(id, initial);
    }

    RoundRecord rec;
    rec.t = round.index;
    rec.tracked.assign(trace.agents.size(), false);
    rec.step = Eigen::VectorXd::Zero(n);
    rec.perceived = Eigen::VectorXd::Zero(n);

    if (active.empty()) {
      rec.welfare = std::numeric_limits<double>::quiet_NaN();
      state = state.commit(Eigen::VectorXd::Zero(0));
    } else {
      OptimizeResult best;
      try {
        best = optimize(state, round.items, welfare, active, options.allocator, &rng);
      } catch (const ValidationError& e) {
        throw ValidationError("round " + std::to_string(round.index) + ": " + e.what());
      } catch (const CapacityError& e) {
        throw CapacityError("round " + std::to_string(round.index) + ": " + e.what());
      }
      state = state.commit(best.step.values());
      rec.allocation = std::move(best.allocation);
      rec.welfare = best.welfare;
      for (std::size_t i = 0; i < state.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(trace.agent_index(state.agents()[i]));
        rec.tracked[static_cast<std::size_t>(k)] = true;
        rec.step[k] = best.step[i];
        rec.perceived[k] = state.z()[static_cast<Eigen::Index>(i)];
      }
    }
    cumulative += rec.step;
    rec.cumulative = cumulative;
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

MetricSeries metrics(const EpisodeTrace& trace, const AgentId& a, const AgentId& b) {
  const auto ia = static_cast<Eigen::Index>(trace.agent_index(a));
  const auto ib = static_cast<Eigen::Index>(trace.agent_index(b));
  MetricSeries out;
  for (const auto& rec : trace.records) {
    out.cumulative_difference.push_back(rec.cumulative[ia] - rec.cumulative[ib]);
    out.perceived_difference.push_back(rec.perceived[ia] - rec.perceived[ib]);
    out.welfare.push_back(rec.welfare);
  }
  return out;
}

std::string default_label(const ParadigmConfig& paradigm, const WelfareSpec& welfare) {
  auto label = paradigm.label();
  if (welfare.kind != WelfareKind::egalitarian) label += "/" + welfare.label();
  return label;
}

std::vector<EpisodeTrace> compare(const Scenario& scenario, const std::vector<ExperimentConfig>& configs,
                                  const SimulationOptions& options) {
  if (configs.empty()) throw ValidationError("compare: at least one config required");
  std::set<std::string> labels;
  for (const auto& c : configs) {
    if (!labels.insert(c.label).second) throw ValidationError("compare: duplicate config label '" + c.label + "'");
  }

  std::vector<std::future<EpisodeTrace>> jobs;
  jobs.reserve(configs.size());
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async, [&scenario, &options, c] {
      auto trace = run_episode(scenario, c.paradigm, c.welfare, options);
      trace.label = c.label;
      return trace;
    }));
  }
  std::vector<EpisodeTrace> traces;
  traces.reserve(configs.size());
  for (auto& job : jobs) traces.push_back(job.get());
  return traces;
}

}  // namespace tfair
