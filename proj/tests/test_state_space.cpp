#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "tfair/state_space.hpp"

using namespace tfair;
using Eigen::VectorXd;

namespace {

std::vector<Round> cake_donut_cycle() {
  return {Round{0, {Item{"cake", {{"Alice", 0.2}, {"Bob", 0.3}}}, Item{"donut", {{"Alice", 0.5}, {"Bob", 0.5}}}}}};
}

const std::vector<AgentId> kAliceBob{"Alice", "Bob"};

}  // namespace

TEST(StateSpace, DiscountedBound) {
  EXPECT_DOUBLE_EQ(discounted_bound(0.9, 0.5), 5.0);
  EXPECT_DOUBLE_EQ(discounted_bound(0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(discounted_bound(0.5, 1.0), 2.0);
  try {
    discounted_bound(1.0, 1.0);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unbounded (perfect recall)"), std::string::npos);
  }
}

TEST(StateSpace, Counts) {
  EXPECT_EQ(state_count_discounted({0.5, 1.0, 0.5}), 5u);
  EXPECT_EQ(state_count_discounted({0.1, 1.0, 0.9}), 101u);
  EXPECT_EQ(state_count_discounted({0.25, 1.0, 0.0}), 5u);
  EXPECT_EQ(state_count_perfect(9, 1.0, 0.5), 21u);
  EXPECT_EQ(state_count_perfect(0, 1.0, 1.0), 2u);
  EXPECT_EQ(state_count_perfect(100, 1.0, 0.1), 1011u);
  EXPECT_THROW(state_count_discounted({2.0, 1.0, 0.5}), ValidationError);
}

TEST(StateSpace, GrowthContrast) {
  const DiscretizationSpec spec{0.1, 1.0, 0.9};
  const double base = static_cast<double>(state_count_discounted(spec));
  double previous = 0.0;
  for (std::uint64_t t : {10u, 100u, 1000u}) {
    const double ratio = static_cast<double>(state_count_perfect(t, 1.0, 0.1)) / base;
    EXPECT_GT(ratio, previous);
    previous = ratio;
  }
}

TEST(StateSpace, Discretize) {
  EXPECT_EQ(discretize(VectorXd::Zero(1), {0.1, 1.0, 0.5})[0], 0);
  EXPECT_EQ(discretize(VectorXd::Constant(1, 2.0), {0.5, 1.0, 0.5})[0], 4);
  EXPECT_EQ(discretize(VectorXd::Constant(1, 0.55), {0.1, 1.0, 0.5})[0], 5);
  EXPECT_EQ(discretize(VectorXd::Constant(1, 0.3), {0.1, 1.0, 0.5})[0], 3);
  // Within delta/2 above the bound clamps to the top bin; further out is a bug.
  EXPECT_EQ(discretize(VectorXd::Constant(1, 2.2), {0.5, 1.0, 0.5})[0], 4);
  EXPECT_THROW(discretize(VectorXd::Constant(1, 2.3), {0.5, 1.0, 0.5}), ValidationError);
}

TEST(StateSpace, HorizonZeroMdp) {
  const auto mdp = build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.5),
                                       WelfareSpec::egalitarian(), {0.5, 1.0, 0.5}, 0);
  EXPECT_EQ(mdp.states.size(), 1u);
  EXPECT_TRUE(mdp.actions[0].empty());
  const auto plan = value_iteration(mdp);
  EXPECT_EQ(plan.values.size(), 1u);
  EXPECT_EQ(rollout_planned(mdp, plan).total, 0.0);
}

TEST(StateSpace, CakeDonutMdpStaysWithinAnalyticCount) {
  const DiscretizationSpec spec{0.5, 1.0, 0.5};
  const auto mdp = build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.5),
                                       WelfareSpec::egalitarian(), spec, 10);
  EXPECT_LE(static_cast<std::size_t>(mdp.max_bin) + 1, state_count_discounted(spec));
  EXPECT_LE(mdp.states.size(), 25u);
  for (std::size_t s = 0; s < mdp.states.size(); ++s) {
    EXPECT_EQ(mdp.actions[s].size(), 4u);
    for (const auto& a : mdp.actions[s]) EXPECT_LT(a.next, mdp.states.size());
  }
}

TEST(StateSpace, FinerGridTwoAgents) {
  const DiscretizationSpec spec{0.1, 1.0, 0.9};
  const auto mdp = build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.9),
                                       WelfareSpec::egalitarian(), spec, 10);
  EXPECT_LE(mdp.states.size(), 101u * 101u);
  EXPECT_LE(static_cast<std::size_t>(mdp.max_bin), 100u);
}

TEST(StateSpace, Errors) {
  EXPECT_THROW(build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::perfect_additive(),
                                   WelfareSpec::egalitarian(), {0.5, 1.0, 0.5}, 3),
               ValidationError);
  EXPECT_THROW(build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_averaged(0.5),
                                   WelfareSpec::egalitarian(), {0.5, 1.0, 0.5}, 3),
               ValidationError);
  EXPECT_THROW(build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.99),
                                   WelfareSpec::egalitarian(), {0.001, 1.0, 0.99}, 3),
               CapacityError);
  // Tiny explicit cap trips during enumeration, not on the estimate.
  EXPECT_THROW(build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.5),
                                   WelfareSpec::egalitarian(), {0.5, 1.0, 0.5}, 3, 5.0),
               CapacityError);
}

TEST(StateSpace, HorizonOnePolicyIsWelfareArgmax) {
  const auto mdp = build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(0.5),
                                       WelfareSpec::egalitarian(), {0.5, 1.0, 0.5}, 1);
  const auto plan = value_iteration(mdp);
  const auto items = cake_donut_cycle()[0].items;
  for (std::size_t s = 0; s < mdp.states.size(); ++s) {
    const auto best = optimize(mdp.fairness_state(s), items, WelfareSpec::egalitarian(), kAliceBob);
    EXPECT_EQ(plan.policy[1][s], static_cast<int>(best.enumeration_index));
    EXPECT_DOUBLE_EQ(plan.values[1][static_cast<Eigen::Index>(s)], best.welfare);
  }
}

TEST(StateSpace, AllZeroRewards) {
  const std::vector<Round> cycle{Round{0, {Item{"dust", {}}}}};
  const auto mdp = build_augmented_mdp(cycle, kAliceBob, ParadigmConfig::discounted_additive(0.5),
                                       WelfareSpec::utilitarian(), {0.5, 1.0, 0.5}, 4);
  const auto plan = value_iteration(mdp);
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_EQ(plan.values[k], VectorXd::Zero(static_cast<Eigen::Index>(mdp.states.size())));
    for (int a : plan.policy[k]) EXPECT_EQ(a, 0);
  }
}

TEST(StateSpace, PlannedRolloutDominatesMyopic) {
  for (double gamma : {0.3, 0.5, 0.8}) {
    const auto mdp = build_augmented_mdp(cake_donut_cycle(), kAliceBob, ParadigmConfig::discounted_additive(gamma),
                                         WelfareSpec::egalitarian(), {0.1, 1.0, gamma}, 10);
    const auto plan = value_iteration(mdp);
    const auto dp = rollout_planned(mdp, plan);
    const auto greedy = rollout_myopic(mdp);
    EXPECT_EQ(dp.actions.size(), 10u);
    EXPECT_NEAR(dp.total, plan.values[10][0], 1e-12);
    EXPECT_GE(dp.total, greedy.total - 1e-12);
  }
}

TEST(StateSpace, ReachableBinsNeverExceedAnalyticCount) {
  std::mt19937_64 rng(5);
  // Two items per round, so each utility stays below u_max / 2.
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (double gamma : {0.0, 0.2, 0.5, 0.7}) {
    for (double delta : {0.25, 0.5}) {
      std::vector<Round> cycle;
      for (std::size_t p = 0; p < 2; ++p) {
        cycle.push_back(Round{p, {Item{"x", {{"a", u(rng)}, {"b", u(rng)}}}, Item{"y", {{"a", u(rng)}, {"b", u(rng)}}}}});
      }
      const DiscretizationSpec spec{delta, 1.0, gamma};
      const auto mdp = build_augmented_mdp(cycle, {"a", "b"}, ParadigmConfig::discounted_additive(gamma),
                                           WelfareSpec::egalitarian(), spec, 5);
      std::set<int> bins;
      for (const auto& s : mdp.states) {
        for (Eigen::Index i = 0; i < s.bins.size(); ++i) bins.insert(s.bins[i]);
      }
      EXPECT_LE(bins.size(), state_count_discounted(spec));
      EXPECT_LE(mdp.states.size(), static_cast<std::size_t>(estimated_state_count(2, 2, spec)));
    }
  }
}
