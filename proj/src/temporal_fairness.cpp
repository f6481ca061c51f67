#include "tfair/temporal_fairness.hpp"

#include "tfair/number_format.hpp"
#include "tfair/serialization.hpp"

namespace tfair {

double ParadigmConfig::effective_gamma() const {
  switch (mode) {
    case Paradigm::instantaneous:
      return 0.0;
    case Paradigm::perfect_additive:
    case Paradigm::perfect_averaged:
      return 1.0;
    case Paradigm::discounted_additive:
    case Paradigm::discounted_averaged:
      return gamma_p;
  }
  return 0.0;
}

void ParadigmConfig::validate() const {
  if (is_discounted() && !(gamma_p >= 0.0 && gamma_p <= 1.0)) {
    throw ValidationError("gamma_p must lie in [0, 1], got " + format_number(gamma_p));
  }
}

std::string ParadigmConfig::label() const {
  std::string out(paradigm_name(mode));
  if (is_discounted()) out += "@" + format_number(gamma_p);
  return out;
}

Paradigm parse_paradigm(std::string_view name) {
  if (name == "instantaneous") return Paradigm::instantaneous;
  if (name == "perfect_additive" || name == "perfect") return Paradigm::perfect_additive;
  if (name == "perfect_averaged") return Paradigm::perfect_averaged;
  if (name == "discounted_additive" || name == "discounted") return Paradigm::discounted_additive;
  if (name == "discounted_averaged") return Paradigm::discounted_averaged;
  throw ValidationError("unknown paradigm mode '" + std::string(name) + "'");
}

std::string_view paradigm_name(Paradigm mode) {
  switch (mode) {
    case Paradigm::instantaneous:
      return "instantaneous";
    case Paradigm::perfect_additive:
      return "perfect_additive";
    case Paradigm::perfect_averaged:
      return "perfect_averaged";
    case Paradigm::discounted_additive:
      return "discounted_additive";
    case Paradigm::discounted_averaged:
      return "discounted_averaged";
  }
  return "unknown";
}

nlohmann::json state_to_json(const FairnessState<double>& state) {
  nlohmann::json j;
  j["mode"] = std::string(paradigm_name(state.config().mode));
  j["gamma_p"] = state.config().gamma_p;
  j["denominators"] =
      state.denominator_policy() == DenominatorPolicy::global ? "global" : "per_agent";
  j["agents"] = state.agents();
  j["z"] = std::vector<double>(state.z().data(), state.z().data() + state.z().size());
  j["agent_d"] = std::vector<double>(state.agent_denominators().data(),
                                     state.agent_denominators().data() +
                                         state.agent_denominators().size());
  j["d"] = state.d();
  j["t"] = state.t();
  return j;
}

FairnessState<double> fairness_state_from_json(const nlohmann::json& j) {
  try {
    ParadigmConfig config{parse_paradigm(j.at("mode").get<std::string>()),
                          j.at("gamma_p").get<double>()};
    const auto policy_name = j.value("denominators", std::string("global"));
    if (policy_name != "global" && policy_name != "per_agent") {
      throw ValidationError("fairness state: unknown denominator policy '" + policy_name + "'");
    }
    const auto policy =
        policy_name == "global" ? DenominatorPolicy::global : DenominatorPolicy::per_agent;
    auto z = j.at("z").get<std::vector<double>>();
    auto agent_d = j.value("agent_d", std::vector<double>{});
    return FairnessState<double>::from_values(
        config, j.at("agents").get<std::vector<AgentId>>(),
        Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size())),
        j.at("d").get<double>(), j.at("t").get<std::uint64_t>(), policy,
        Eigen::Map<const Eigen::VectorXd>(agent_d.data(), static_cast<Eigen::Index>(agent_d.size())));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("fairness state json: ") + e.what());
  }
}

}  // namespace tfair
