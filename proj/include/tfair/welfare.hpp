#ifndef TFAIR_WELFARE_HPP
#define TFAIR_WELFARE_HPP

#include <Eigen/Core>

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "tfair/errors.hpp"
#include "tfair/utility_vector.hpp"

namespace tfair {

// Social welfare functions. The free functions accept any Eigen column
// expression so callers can pass blocks, maps or array expressions without
// materializing a UtilityVector.

namespace detail {
template <typename Derived>
void require_nonempty(const Eigen::MatrixBase<Derived>& z) {
  if (z.size() == 0) throw ValidationError("empty utility vector");
}

// Sums and products run sequentially over the ascending sort so results are
// bitwise invariant under permutation, and the Gini form with unit weights
// reproduces the utilitarian sum exactly.
template <typename Derived>
VectorX<typename Derived::Scalar> sorted_copy(const Eigen::MatrixBase<Derived>& z) {
  VectorX<typename Derived::Scalar> s = z;
  std::sort(s.data(), s.data() + s.size());
  return s;
}
}  // namespace detail

template <typename Derived>
typename Derived::Scalar utilitarian(const Eigen::MatrixBase<Derived>& z) {
  detail::require_nonempty(z);
  const auto s = detail::sorted_copy(z);
  typename Derived::Scalar acc(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += s[i];
  return acc;
}

/// Maximin (Rawlsian) welfare: the worst-off agent's utility.
template <typename Derived>
typename Derived::Scalar egalitarian(const Eigen::MatrixBase<Derived>& z) {
  detail::require_nonempty(z);
  return z.minCoeff();
}

/// Product of (z_i + offset). The offset defaults to 0, so one zero entry
/// zeroes the whole product.
template <typename Derived>
typename Derived::Scalar nash(const Eigen::MatrixBase<Derived>& z,
                              typename Derived::Scalar offset = typename Derived::Scalar(0)) {
  detail::require_nonempty(z);
  const auto s = detail::sorted_copy(z);
  typename Derived::Scalar acc(1);
  for (Eigen::Index i = 0; i < s.size(); ++i) acc *= s[i] + offset;
  return acc;
}

/// Ordered weighted average: sum_i w_i * z_(i) with z sorted ascending, so the
/// largest weight lands on the worst-off agent. Weights must be nonnegative,
/// nonincreasing and not all zero; they are not normalized.
template <typename Derived, typename WeightsDerived>
typename Derived::Scalar generalized_gini(const Eigen::MatrixBase<Derived>& z,
                                          const Eigen::MatrixBase<WeightsDerived>& weights) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonempty(z);
  if (weights.size() != z.size()) {
    throw ValidationError("gini weights: expected " + std::to_string(z.size()) + " weights, got " +
                          std::to_string(weights.size()));
  }
  bool any_positive = false;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0)) throw ValidationError("gini weights: negative or NaN weight");
    if (i > 0 && weights[i] > weights[i - 1]) {
      throw ValidationError("gini weights: must be nonincreasing");
    }
    any_positive = any_positive || weights[i] > 0;
  }
  if (!any_positive) throw ValidationError("gini weights: at least one weight must be positive");

  const auto s = detail::sorted_copy(z);
  Scalar acc(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += Scalar(weights[i]) * s[i];
  return acc;
}

enum class WelfareKind { utilitarian, egalitarian, nash, generalized_gini };

/// Which welfare function to use, as configured from a scenario or CLI flag.
struct WelfareSpec {
  WelfareKind kind = WelfareKind::egalitarian;
  std::vector<double> gini_weights;  // only for generalized_gini
  double nash_offset = 0.0;

  static WelfareSpec utilitarian() { return {WelfareKind::utilitarian, {}, 0.0}; }
  static WelfareSpec egalitarian() { return {WelfareKind::egalitarian, {}, 0.0}; }
  static WelfareSpec nash(double offset = 0.0) { return {WelfareKind::nash, {}, offset}; }
  static WelfareSpec gini(std::vector<double> weights) {
    return {WelfareKind::generalized_gini, std::move(weights), 0.0};
  }

  /// Parses `utilitarian|sum`, `egalitarian|mmf|maximin`, `nash`, or
  /// `gini:w1,w2,...` (also `generalized_gini:...`).
  static WelfareSpec parse(std::string_view text);

  /// Checks the spec in isolation, and against `n_agents` when given (> 0).
  void validate(std::size_t n_agents = 0) const;

  [[nodiscard]] std::string label() const;
};

template <typename Derived>
typename Derived::Scalar evaluate(const WelfareSpec& spec, const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  switch (spec.kind) {
    case WelfareKind::utilitarian:
      return utilitarian(z);
    case WelfareKind::egalitarian:
      return egalitarian(z);
    case WelfareKind::nash:
      return nash(z, Scalar(spec.nash_offset));
    case WelfareKind::generalized_gini: {
      if (spec.gini_weights.empty()) throw ValidationError("generalized_gini requires weights");
      const Eigen::Map<const Eigen::VectorXd> w(spec.gini_weights.data(),
                                                static_cast<Eigen::Index>(spec.gini_weights.size()));
      return generalized_gini(z, w);
    }
  }
  throw ValidationError("unknown welfare kind");
}

template <typename Scalar>
Scalar evaluate(const WelfareSpec& spec, const UtilityVector<Scalar>& z) {
  return evaluate(spec, z.values());
}

}  // namespace tfair

#endif  // TFAIR_WELFARE_HPP
