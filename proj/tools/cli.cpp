#include "tfair/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "tfair/errors.hpp"
#include "tfair/number_format.hpp"
#include "tfair/simulator.hpp"
#include "tfair/state_space.hpp"

namespace tfair::cli {

namespace {

struct CommonFlags {
  std::string scenario;
  std::string welfare = "mmf";
  std::string out;
  std::uint64_t seed = 0;
  std::string tiebreak = "lex";
  std::string denominators = "global";
  std::string reentry = "fresh";
  bool discard = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario JSON file")->required();
  cmd->add_option("--welfare", f.welfare, "utilitarian | mmf | nash | gini:w1,w2,...");
  cmd->add_option("--out", f.out, "Output CSV path (standard output when omitted)");
  cmd->add_option("--seed", f.seed, "Seed for --tiebreak random");
  cmd->add_option("--tiebreak", f.tiebreak, "Tie-breaking rule")->check(CLI::IsMember({"lex", "random"}));
  cmd->add_option("--denominators", f.denominators, "Averaged-mode denominator for late arrivals")
      ->check(CLI::IsMember({"global", "per_agent"}));
  cmd->add_option("--reentry", f.reentry, "Z of a returning agent")->check(CLI::IsMember({"fresh", "restore"}));
  cmd->add_flag("--discard", f.discard, "Allow items to stay unassigned");
}

SimulationOptions simulation_options(const CommonFlags& f) {
  SimulationOptions o;
  o.allocator.tie_break = f.tiebreak == "random" ? TieBreak::random : TieBreak::lexicographic;
  o.allocator.seed = f.seed;
  o.allocator.allow_discard = f.discard;
  o.denominators = f.denominators == "per_agent" ? DenominatorPolicy::per_agent : DenominatorPolicy::global;
  o.reentry = f.reentry == "restore" ? ReentryPolicy::restore : ReentryPolicy::fresh;
  return o;
}

void check_gammas(const std::vector<double>& gammas) {
  for (double g : gammas) {
    if (!(g >= 0.0 && g <= 1.0)) throw ValidationError("--gamma must lie in [0, 1], got " + format_number(g));
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string token;
  while (std::getline(ss, token, sep)) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

/// Writes via a temporary file and rename, or to `fallback` when path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot write output file: " + path);
    write(file);
    file.flush();
    if (!file) throw ValidationError("failed writing output file: " + path);
  }
  std::filesystem::rename(tmp, target);
}

Scenario read_scenario(const std::string& path, std::ostream& err) {
  auto scenario = load_scenario(path);
  for (const auto& w : scenario.warnings) err << "warning: " << w << '\n';
  return scenario;
}

int simulate(const CommonFlags& f, const std::string& mode, const std::optional<double>& gamma,
             std::ostream& out, std::ostream& err) {
  ParadigmConfig paradigm{parse_paradigm(mode), 1.0};
  if (gamma) check_gammas({*gamma});
  if (paradigm.is_discounted()) {
    if (!gamma) throw ValidationError("--gamma is required for " + mode);
    paradigm.gamma_p = *gamma;
  }
  const auto welfare = WelfareSpec::parse(f.welfare);
  const auto scenario = read_scenario(f.scenario, err);
  const auto trace = run_episode(scenario, paradigm, welfare, simulation_options(f));
  emit(f.out, out, [&](std::ostream& os) { write_trace_csv(os, {trace}); });
  return kExitOk;
}

int compare_cmd(const CommonFlags& f, const std::string& modes, const std::vector<double>& gammas,
                std::ostream& out, std::ostream& err) {
  check_gammas(gammas);
  const auto welfare = WelfareSpec::parse(f.welfare);
  std::vector<ExperimentConfig> configs;
  for (const auto& name : split(modes, ',')) {
    const auto mode = parse_paradigm(name);
    ParadigmConfig paradigm{mode, 1.0};
    if (paradigm.is_discounted()) {
      if (gammas.empty()) throw ValidationError("--gamma is required for " + name);
      for (double g : gammas) {
        paradigm.gamma_p = g;
        configs.push_back({default_label(paradigm, welfare), paradigm, welfare});
      }
    } else {
      configs.push_back({default_label(paradigm, welfare), paradigm, welfare});
    }
  }
  if (configs.empty()) throw ValidationError("--mode: at least one paradigm required");
  const auto scenario = read_scenario(f.scenario, err);
  const auto traces = compare(scenario, configs, simulation_options(f));
  emit(f.out, out, [&](std::ostream& os) { write_trace_csv(os, traces); });
  return kExitOk;
}

// The table is for reading, so round away representation noise like 10.000000000000002.
std::string table_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int bounds_cmd(const std::vector<double>& gammas, double u_max, double delta,
               const std::vector<std::uint64_t>& horizons, std::ostream& out) {
  for (double g : gammas) {
    if (g == 1.0) throw ValidationError("perfect recall is unbounded (gamma = 1)");
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"gamma", "u_max", "delta", "bound", "states_discounted"};
  for (auto t : horizons) header.push_back("states_perfect@" + std::to_string(t));
  rows.push_back(header);
  for (double g : gammas) {
    const DiscretizationSpec spec{delta, u_max, g};
    spec.validate();
    std::vector<std::string> row{format_number(g), format_number(u_max), format_number(delta),
                                 table_number(discounted_bound(g, u_max)),
                                 std::to_string(state_count_discounted(spec))};
    for (auto t : horizons) row.push_back(std::to_string(state_count_perfect(t, u_max, delta)));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) out << "  ";
      out << std::left << std::setw(static_cast<int>(c + 1 == r.size() ? 0 : width[c])) << r[c];
    }
    out << '\n';
  }
  return kExitOk;
}

// Shortest prefix of the rounds that repeats to cover the whole scenario.
std::vector<Round> shortest_cycle(const std::vector<Round>& rounds) {
  auto same = [](const Round& a, const Round& b) {
    return std::equal(a.items.begin(), a.items.end(), b.items.begin(), b.items.end(),
                      [](const Item& x, const Item& y) { return x.id == y.id && x.utilities == y.utilities; });
  };
  for (std::size_t p = 1; p < rounds.size(); ++p) {
    bool periodic = true;
    for (std::size_t t = p; t < rounds.size() && periodic; ++t) periodic = same(rounds[t], rounds[t % p]);
    if (periodic) return {rounds.begin(), rounds.begin() + static_cast<std::ptrdiff_t>(p)};
  }
  return rounds;
}

int plan_cmd(const CommonFlags& f, const std::string& mode, const std::optional<double>& gamma, double delta,
             std::size_t horizon, double state_cap, std::ostream& out, std::ostream& err) {
  if (!gamma) throw ValidationError("--gamma is required for plan");
  check_gammas({*gamma});
  if (*gamma == 1.0) throw ValidationError("perfect recall is unbounded (gamma = 1)");
  const ParadigmConfig paradigm{parse_paradigm(mode), *gamma};
  const auto welfare = WelfareSpec::parse(f.welfare);
  const auto scenario = read_scenario(f.scenario, err);
  for (const auto& a : scenario.agents) {
    if (a.arrival != 0 || a.departure) {
      throw ValidationError("plan: agent '" + a.id + "' must be present for the whole cycle");
    }
  }
  const DiscretizationSpec spec{delta, scenario.u_max, *gamma};
  AllocatorOptions allocator;
  allocator.allow_discard = f.discard;
  const auto mdp = build_augmented_mdp(shortest_cycle(scenario.rounds), scenario.agent_ids(), paradigm, welfare, spec, horizon,
                                       state_cap, allocator);
  const auto plan = value_iteration(mdp);
  const auto planned = rollout_planned(mdp, plan);
  const auto myopic = rollout_myopic(mdp);

  emit(f.out, out, [&](std::ostream& os) {
    const auto per_agent = state_count_discounted(spec);
    os << "metric,value\n";
    os << "agents," << mdp.agents.size() << '\n';
    os << "phases," << mdp.cycle.size() << '\n';
    os << "horizon," << horizon << '\n';
    os << "gamma," << format_number(*gamma) << '\n';
    os << "delta," << format_number(delta) << '\n';
    os << "bound," << format_number(discounted_bound(*gamma, scenario.u_max)) << '\n';
    os << "states_per_agent_analytic," << per_agent << '\n';
    os << "states_joint_analytic," << format_number(estimated_state_count(mdp.cycle.size(), mdp.agents.size(), spec))
       << '\n';
    os << "reachable_states," << mdp.states.size() << '\n';
    os << "max_bin_reached," << mdp.max_bin << '\n';
    os << "max_binning_error," << format_number(mdp.max_binning_error) << '\n';
    for (std::size_t k = 0; k <= horizon; ++k) {
      os << "value_to_go@" << k << ',' << format_number(plan.values[k][0]) << '\n';
    }
    os << "rollout_dp," << format_number(planned.total) << '\n';
    os << "rollout_myopic," << format_number(myopic.total) << '\n';
    os << "dp_gain," << format_number(planned.total - myopic.total) << '\n';
  });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential fair allocation with instantaneous, perfect-recall and past-discounted fairness",
               "tfair"};
  app.require_subcommand(1);
  bool no_color = false;
  app.add_flag("--no-color", no_color, "Plain output (output is always uncolored)");

  CommonFlags sim_flags;
  std::string sim_mode = "instantaneous";
  std::optional<double> sim_gamma;
  auto* sim = app.add_subcommand("simulate", "Run one episode and write its trace CSV");
  add_common(sim, sim_flags);
  sim->add_option("--mode", sim_mode, "Fairness paradigm");
  sim->add_option("--gamma", sim_gamma, "Past-discount factor for discounted modes");

  CommonFlags cmp_flags;
  std::string cmp_modes = "instantaneous,perfect_additive,discounted_additive";
  std::vector<double> cmp_gammas;
  auto* cmp = app.add_subcommand("compare", "Run several paradigms on one scenario into one CSV");
  add_common(cmp, cmp_flags);
  cmp->add_option("--mode", cmp_modes, "Comma-separated paradigms");
  cmp->add_option("--gamma", cmp_gammas, "Comma-separated gammas for discounted modes")->delimiter(',');

  std::vector<double> bnd_gammas;
  double bnd_umax = 1.0;
  double bnd_delta = 0.1;
  std::vector<std::uint64_t> bnd_t;
  auto* bnd = app.add_subcommand("bounds", "Print the discounted bound and state counts");
  bnd->add_option("--gamma", bnd_gammas, "Comma-separated gammas in [0, 1)")->delimiter(',')->required();
  bnd->add_option("--umax", bnd_umax, "Per-step utility upper bound");
  bnd->add_option("--delta", bnd_delta, "Bin width");
  bnd->add_option("--t", bnd_t, "Comma-separated horizons for perfect-recall counts")->delimiter(',');

  CommonFlags plan_flags;
  std::string plan_mode = "discounted_additive";
  std::optional<double> plan_gamma;
  double plan_delta = 0.1;
  std::size_t plan_horizon = 10;
  double plan_cap = 1e6;
  auto* pln = app.add_subcommand("plan", "Plan over the binned augmented state with backward induction");
  add_common(pln, plan_flags);
  pln->add_option("--mode", plan_mode, "Fairness paradigm (discounted_additive)");
  pln->add_option("--gamma", plan_gamma, "Past-discount factor in [0, 1)");
  pln->add_option("--delta", plan_delta, "Bin width");
  pln->add_option("--horizon", plan_horizon, "Planning horizon");
  pln->add_option("--state-cap", plan_cap, "Maximum number of augmented states");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*sim) return simulate(sim_flags, sim_mode, sim_gamma, out, err);
    if (*cmp) return compare_cmd(cmp_flags, cmp_modes, cmp_gammas, out, err);
    if (*bnd) return bounds_cmd(bnd_gammas, bnd_umax, bnd_delta, bnd_t, out);
    if (*pln) return plan_cmd(plan_flags, plan_mode, plan_gamma, plan_delta, plan_horizon, plan_cap, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace tfair::cli
