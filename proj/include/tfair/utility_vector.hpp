#ifndef TFAIR_UTILITY_VECTOR_HPP
#define TFAIR_UTILITY_VECTOR_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tfair/errors.hpp"

namespace tfair {

using AgentId = std::string;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-agent nonnegative utilities with the agent ids they belong to.
///
/// Values and ids are kept aligned by position. Construction validates that
/// ids are unique, lengths match and every value is >= 0 (NaN is rejected).
template <typename Scalar = double>
class UtilityVector {
 public:
  using Vector = VectorX<Scalar>;

  UtilityVector() = default;

  UtilityVector(std::vector<AgentId> ids, Vector values)
      : ids_(std::move(ids)), values_(std::move(values)) {
    if (static_cast<Eigen::Index>(ids_.size()) != values_.size()) {
      throw ValidationError("utility vector: " + std::to_string(ids_.size()) + " agent ids but " +
                            std::to_string(values_.size()) + " values");
    }
    std::unordered_set<AgentId> seen;
    for (const auto& id : ids_) {
      if (!seen.insert(id).second) {
        throw ValidationError("utility vector: duplicate agent id '" + id + "'");
      }
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (!(values_[i] >= Scalar(0))) {
        throw ValidationError("utility vector: negative or NaN utility for agent '" +
                              ids_[static_cast<std::size_t>(i)] + "'");
      }
    }
  }

  static UtilityVector zeros(std::vector<AgentId> ids) {
    const auto n = static_cast<Eigen::Index>(ids.size());
    return UtilityVector(std::move(ids), Vector::Zero(n));
  }

  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] bool empty() const { return ids_.empty(); }
  [[nodiscard]] const std::vector<AgentId>& ids() const { return ids_; }
  [[nodiscard]] const Vector& values() const { return values_; }
  [[nodiscard]] Scalar operator[](std::size_t i) const {
    return values_[static_cast<Eigen::Index>(i)];
  }

  [[nodiscard]] std::optional<std::size_t> index_of(const AgentId& id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  [[nodiscard]] Scalar at(const AgentId& id) const {
    const auto idx = index_of(id);
    if (!idx) throw ValidationError("utility vector: unknown agent '" + id + "'");
    return (*this)[*idx];
  }

  friend bool operator==(const UtilityVector& a, const UtilityVector& b) {
    return a.ids_ == b.ids_ && a.values_ == b.values_;
  }

 private:
  std::vector<AgentId> ids_;
  Vector values_;
};

}  // namespace tfair

#endif  // TFAIR_UTILITY_VECTOR_HPP
