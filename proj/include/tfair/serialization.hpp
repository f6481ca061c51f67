#ifndef TFAIR_SERIALIZATION_HPP
#define TFAIR_SERIALIZATION_HPP

#include <json.hpp>

#include "tfair/temporal_fairness.hpp"

namespace tfair {

/// Checkpoint format: {mode, gamma_p, denominators, agents, z, agent_d, d, t}.
nlohmann::json state_to_json(const FairnessState<double>& state);
FairnessState<double> fairness_state_from_json(const nlohmann::json& j);

}  // namespace tfair

#endif  // TFAIR_SERIALIZATION_HPP
