#ifndef TFAIR_TEMPORAL_FAIRNESS_HPP
#define TFAIR_TEMPORAL_FAIRNESS_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfair/errors.hpp"
#include "tfair/utility_vector.hpp"

namespace tfair {

enum class Paradigm {
  instantaneous,
  perfect_additive,
  perfect_averaged,
  discounted_additive,
  discounted_averaged,
};

/// Update rule plus past-discount factor. gamma_p only matters for the
/// discounted modes.
struct ParadigmConfig {
  Paradigm mode = Paradigm::instantaneous;
  double gamma_p = 1.0;

  static ParadigmConfig instantaneous() { return {Paradigm::instantaneous, 0.0}; }
  static ParadigmConfig perfect_additive() { return {Paradigm::perfect_additive, 1.0}; }
  static ParadigmConfig perfect_averaged() { return {Paradigm::perfect_averaged, 1.0}; }
  static ParadigmConfig discounted_additive(double gamma) { return {Paradigm::discounted_additive, gamma}; }
  static ParadigmConfig discounted_averaged(double gamma) { return {Paradigm::discounted_averaged, gamma}; }

  [[nodiscard]] bool is_discounted() const {
    return mode == Paradigm::discounted_additive || mode == Paradigm::discounted_averaged;
  }
  [[nodiscard]] bool is_averaged() const {
    return mode == Paradigm::perfect_averaged || mode == Paradigm::discounted_averaged;
  }
  /// Decay actually applied to Z and d: gamma_p for discounted modes, 1 for
  /// perfect recall, 0 for instantaneous.
  [[nodiscard]] double effective_gamma() const;

  void validate() const;

  /// Mode name, with `@gamma` appended for discounted modes.
  [[nodiscard]] std::string label() const;
};

Paradigm parse_paradigm(std::string_view name);
std::string_view paradigm_name(Paradigm mode);

/// How averaged modes count time for agents that arrive after t = 0.
enum class DenominatorPolicy {
  global,     // late arrivals share the global discounted denominator
  per_agent,  // each agent's denominator counts from its own arrival
};

/// Fairness state Z (perceived cumulative utility) with its denominator and
/// step counter. Immutable: commit/add_agent/remove_agent return new states.
///
/// The state before the first commit is all-zero, so the first commit
/// yields Z = u (and d = 1 in averaged modes).
template <typename Scalar = double>
class FairnessState {
 public:
  using Vector = VectorX<Scalar>;

  FairnessState() = default;

  static FairnessState init(ParadigmConfig config, std::vector<AgentId> agents,
                            DenominatorPolicy policy = DenominatorPolicy::global) {
    config.validate();
    FairnessState s;
    s.config_ = config;
    s.policy_ = policy;
    const auto zero = UtilityVector<Scalar>::zeros(std::move(agents));
    s.ids_ = zero.ids();
    s.z_ = zero.values();
    s.agent_d_ = Vector::Zero(s.z_.size());
    return s;
  }

  /// Restores a state from explicit values (checkpoints, MDP states).
  /// `agent_d` is the per-agent denominator; pass empty to use `d` for all.
  static FairnessState from_values(ParadigmConfig config, std::vector<AgentId> agents, Vector z,
                                   Scalar d, std::uint64_t t,
                                   DenominatorPolicy policy = DenominatorPolicy::global,
                                   Vector agent_d = Vector()) {
    config.validate();
    const UtilityVector<Scalar> checked(std::move(agents), std::move(z));
    if (!(d >= Scalar(0))) throw ValidationError("fairness state: denominator must be >= 0");
    FairnessState s;
    s.config_ = config;
    s.policy_ = policy;
    s.ids_ = checked.ids();
    s.z_ = checked.values();
    s.d_ = d;
    s.t_ = t;
    if (agent_d.size() == 0) {
      s.agent_d_ = Vector::Constant(s.z_.size(), d);
    } else {
      if (agent_d.size() != s.z_.size()) {
        throw ValidationError("fairness state: per-agent denominators misaligned with agents");
      }
      s.agent_d_ = std::move(agent_d);
    }
    return s;
  }

  [[nodiscard]] const ParadigmConfig& config() const { return config_; }
  [[nodiscard]] DenominatorPolicy denominator_policy() const { return policy_; }
  [[nodiscard]] const std::vector<AgentId>& agents() const { return ids_; }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] const Vector& z() const { return z_; }
  [[nodiscard]] UtilityVector<Scalar> z_vector() const { return UtilityVector<Scalar>(ids_, z_); }
  /// Global discounted denominator (0 for additive modes).
  [[nodiscard]] Scalar d() const { return d_; }
  [[nodiscard]] const Vector& agent_denominators() const { return agent_d_; }
  [[nodiscard]] std::uint64_t t() const { return t_; }

  [[nodiscard]] std::optional<std::size_t> index_of(const AgentId& id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i] == id) return i;
    }
    return std::nullopt;
  }

  /// Z^t | A for step utilities aligned by position with agents().
  template <typename Derived>
  [[nodiscard]] Vector preview(const Eigen::MatrixBase<Derived>& u) const {
    check_step(u);
    const Scalar g = Scalar(config_.effective_gamma());
    switch (config_.mode) {
      case Paradigm::instantaneous:
        return u;
      case Paradigm::perfect_additive:
        return z_ + u;
      case Paradigm::discounted_additive:
        return g * z_ + u;
      case Paradigm::perfect_averaged:
      case Paradigm::discounted_averaged:
        return ((g * z_.array() * agent_d_.array() + u.array()) / (g * agent_d_.array() + Scalar(1)))
            .matrix();
    }
    throw ValidationError("unknown paradigm");
  }

  /// Same as above, aligning by agent id. Agents of the state missing from
  /// `u` must not exist: the ids have to match exactly (any order).
  [[nodiscard]] UtilityVector<Scalar> preview(const UtilityVector<Scalar>& u) const {
    return UtilityVector<Scalar>(ids_, preview(align(u)));
  }

  template <typename Derived>
  [[nodiscard]] FairnessState commit(const Eigen::MatrixBase<Derived>& u) const {
    FairnessState next = *this;
    next.z_ = preview(u);
    if (config_.is_averaged()) {
      const Scalar g = Scalar(config_.effective_gamma());
      next.d_ = g * d_ + Scalar(1);
      next.agent_d_ = (g * agent_d_.array() + Scalar(1)).matrix();
    }
    next.t_ = t_ + 1;
    return next;
  }

  [[nodiscard]] FairnessState commit(const UtilityVector<Scalar>& u) const { return commit(align(u)); }

  /// Appends an agent with Z = initial_z (0 unless restoring). In global
  /// denominator mode it shares the current d; per-agent mode starts at 0.
  [[nodiscard]] FairnessState add_agent(const AgentId& id, Scalar initial_z = Scalar(0)) const {
    if (index_of(id)) throw ValidationError("fairness state: agent '" + id + "' already tracked");
    if (!(initial_z >= Scalar(0))) throw ValidationError("fairness state: initial Z must be >= 0");
    FairnessState next = *this;
    next.ids_.push_back(id);
    const auto n = next.z_.size();
    next.z_.conservativeResize(n + 1);
    next.z_[n] = initial_z;
    next.agent_d_.conservativeResize(n + 1);
    next.agent_d_[n] = policy_ == DenominatorPolicy::global ? d_ : Scalar(0);
    return next;
  }

  [[nodiscard]] FairnessState remove_agent(const AgentId& id) const {
    const auto idx = index_of(id);
    if (!idx) throw ValidationError("fairness state: unknown agent '" + id + "'");
    FairnessState next = *this;
    next.ids_.erase(next.ids_.begin() + static_cast<std::ptrdiff_t>(*idx));
    next.z_ = erase_row(z_, *idx);
    next.agent_d_ = erase_row(agent_d_, *idx);
    return next;
  }

 private:
  template <typename Derived>
  void check_step(const Eigen::MatrixBase<Derived>& u) const {
    if (u.size() != z_.size()) {
      throw ValidationError("step utilities: " + std::to_string(u.size()) + " values for " +
                            std::to_string(z_.size()) + " tracked agents");
    }
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (!(u[i] >= Scalar(0))) {
        throw ValidationError("step utilities: negative or NaN utility for agent '" +
                              ids_[static_cast<std::size_t>(i)] + "'");
      }
    }
  }

  Vector align(const UtilityVector<Scalar>& u) const {
    if (u.size() != ids_.size()) {
      throw ValidationError("step utilities: agents do not match tracked agents");
    }
    Vector out(static_cast<Eigen::Index>(ids_.size()));
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      const auto j = u.index_of(ids_[i]);
      if (!j) throw ValidationError("step utilities: missing agent '" + ids_[i] + "'");
      out[static_cast<Eigen::Index>(i)] = u[*j];
    }
    return out;
  }

  static Vector erase_row(const Vector& v, std::size_t idx) {
    const auto i = static_cast<Eigen::Index>(idx);
    Vector out(v.size() - 1);
    out.head(i) = v.head(i);
    out.tail(v.size() - 1 - i) = v.tail(v.size() - 1 - i);
    return out;
  }

  ParadigmConfig config_{};
  DenominatorPolicy policy_ = DenominatorPolicy::global;
  std::vector<AgentId> ids_;
  Vector z_;
  Vector agent_d_;
  Scalar d_ = Scalar(0);
  std::uint64_t t_ = 0;
};

}  // namespace tfair

#endif  // TFAIR_TEMPORAL_FAIRNESS_HPP
