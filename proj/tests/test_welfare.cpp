#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tfair/welfare.hpp"

using tfair::ValidationError;
using tfair::WelfareSpec;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

}  // namespace

TEST(Welfare, Utilitarian) {
  EXPECT_DOUBLE_EQ(tfair::utilitarian(vec({1, 2, 3})), 6.0);
  EXPECT_DOUBLE_EQ(tfair::utilitarian(vec({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(tfair::utilitarian(vec({0.5, 0.3})), 0.8);
  EXPECT_THROW(tfair::utilitarian(VectorXd()), ValidationError);
}

TEST(Welfare, Egalitarian) {
  EXPECT_DOUBLE_EQ(tfair::egalitarian(vec({1, 2, 3})), 1.0);
  EXPECT_DOUBLE_EQ(tfair::egalitarian(vec({0.2, 0.5})), 0.2);
  EXPECT_DOUBLE_EQ(tfair::egalitarian(vec({5, 5})), 5.0);
  EXPECT_THROW(tfair::egalitarian(VectorXd()), ValidationError);
}

TEST(Welfare, Nash) {
  EXPECT_DOUBLE_EQ(tfair::nash(vec({2, 3})), 6.0);
  EXPECT_DOUBLE_EQ(tfair::nash(vec({0, 5})), 0.0);
  EXPECT_DOUBLE_EQ(tfair::nash(vec({1, 1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(tfair::nash(vec({0, 5}), 1.0), 6.0);
  EXPECT_THROW(tfair::nash(VectorXd()), ValidationError);
}

TEST(Welfare, GeneralizedGini) {
  EXPECT_DOUBLE_EQ(tfair::generalized_gini(vec({3, 1}), vec({0.7, 0.3})), 1.6);
  EXPECT_DOUBLE_EQ(tfair::generalized_gini(vec({3, 1}), vec({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(tfair::generalized_gini(vec({2, 2, 2}), vec({0.5, 0.3, 0.2})), 2.0);
  EXPECT_THROW(tfair::generalized_gini(vec({3, 1}), vec({1})), ValidationError);
  EXPECT_THROW(tfair::generalized_gini(vec({3, 1}), vec({0.3, 0.7})), ValidationError);
  EXPECT_THROW(tfair::generalized_gini(vec({3, 1}), vec({0, 0})), ValidationError);
}

TEST(Welfare, EvaluateDispatch) {
  EXPECT_DOUBLE_EQ(tfair::evaluate(WelfareSpec::egalitarian(), vec({0.5, 0.3})), 0.3);
  EXPECT_DOUBLE_EQ(tfair::evaluate(WelfareSpec::utilitarian(), vec({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(tfair::evaluate(WelfareSpec::nash(), vec({2, 3})), 6.0);
  EXPECT_DOUBLE_EQ(tfair::evaluate(WelfareSpec::gini({0.7, 0.3}), vec({3, 1})), 1.6);
  EXPECT_THROW(tfair::evaluate(WelfareSpec::gini({0.7, 0.3}), vec({3, 1, 2})), ValidationError);
}

TEST(Welfare, AcceptsUtilityVectorAndFloat) {
  const tfair::UtilityVector<float> z({"a", "b"}, Eigen::Vector2f(1.0f, 4.0f));
  EXPECT_FLOAT_EQ(tfair::evaluate(WelfareSpec::utilitarian(), z), 5.0f);
  EXPECT_FLOAT_EQ(tfair::evaluate(WelfareSpec::gini({1, 0}), z), 1.0f);
}

TEST(WelfareSpec, Parse) {
  EXPECT_EQ(WelfareSpec::parse("mmf").kind, tfair::WelfareKind::egalitarian);
  EXPECT_EQ(WelfareSpec::parse("egalitarian").kind, tfair::WelfareKind::egalitarian);
  EXPECT_EQ(WelfareSpec::parse("sum").kind, tfair::WelfareKind::utilitarian);
  EXPECT_EQ(WelfareSpec::parse("nash").kind, tfair::WelfareKind::nash);
  EXPECT_DOUBLE_EQ(WelfareSpec::parse("nash:0.01").nash_offset, 0.01);
  const auto g = WelfareSpec::parse("gini:0.7,0.3");
  EXPECT_EQ(g.kind, tfair::WelfareKind::generalized_gini);
  EXPECT_EQ(g.gini_weights, (std::vector<double>{0.7, 0.3}));
  EXPECT_EQ(g.label(), "gini:0.7,0.3");
  EXPECT_THROW(WelfareSpec::parse("gini:0.3,0.7"), ValidationError);
  EXPECT_THROW(WelfareSpec::parse("gini"), ValidationError);
  EXPECT_THROW(WelfareSpec::parse("leximin"), ValidationError);
  EXPECT_THROW(WelfareSpec::parse("mmf:1"), ValidationError);
  EXPECT_THROW(WelfareSpec::parse("gini:a,b"), ValidationError);
}

// Property checks over random vectors.

class WelfareProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  VectorXd random_vector(std::size_t n, double lo = 0.0, double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    VectorXd v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = u(rng);
    return v;
  }
  VectorXd random_decreasing_weights(std::size_t n) {
    VectorXd w = random_vector(n, 0.01, 1.0);
    std::sort(w.data(), w.data() + w.size(), std::greater<>());
    return w;
  }
};

TEST_F(WelfareProperties, PermutationSymmetry) {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const VectorXd z = random_vector(n);
    const VectorXd w = random_decreasing_weights(n);
    VectorXd p = z;
    std::shuffle(p.data(), p.data() + p.size(), rng);
    EXPECT_EQ(tfair::utilitarian(p), tfair::utilitarian(z));
    EXPECT_EQ(tfair::egalitarian(p), tfair::egalitarian(z));
    EXPECT_EQ(tfair::nash(p), tfair::nash(z));
    EXPECT_EQ(tfair::generalized_gini(p, w), tfair::generalized_gini(z, w));
  }
}

TEST_F(WelfareProperties, Monotonicity) {
  std::uniform_real_distribution<double> bump(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const VectorXd z = random_vector(n, 0.01, 10.0);
    const VectorXd w = random_decreasing_weights(n);
    VectorXd up = z;
    up[static_cast<Eigen::Index>(trial % n)] += bump(rng);
    EXPECT_GE(tfair::utilitarian(up), tfair::utilitarian(z));
    EXPECT_GE(tfair::egalitarian(up), tfair::egalitarian(z));
    EXPECT_GE(tfair::nash(up), tfair::nash(z));
    EXPECT_GE(tfair::generalized_gini(up, w), tfair::generalized_gini(z, w) - 1e-12);
  }
}

TEST_F(WelfareProperties, GiniSchurConcavity) {
  std::uniform_real_distribution<double> frac(1e-6, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    VectorXd z = random_vector(n);
    VectorXd w = random_decreasing_weights(n);
    const auto i = static_cast<Eigen::Index>(trial % n);
    const auto j = static_cast<Eigen::Index>((trial + 1) % n);
    if (z[i] == z[j]) continue;
    const auto lo = z[i] < z[j] ? i : j;
    const auto hi = z[i] < z[j] ? j : i;
    const double eps = frac(rng) * (z[hi] - z[lo]) / 2;
    VectorXd moved = z;
    moved[lo] += eps;
    moved[hi] -= eps;
    EXPECT_GE(tfair::generalized_gini(moved, w), tfair::generalized_gini(z, w) - 1e-12);
  }
}

TEST_F(WelfareProperties, GiniDegeneracies) {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const VectorXd z = random_vector(n);
    VectorXd first = VectorXd::Zero(static_cast<Eigen::Index>(n));
    first[0] = 1.0;
    EXPECT_EQ(tfair::generalized_gini(z, first), tfair::egalitarian(z));
    EXPECT_EQ(tfair::generalized_gini(z, VectorXd::Ones(static_cast<Eigen::Index>(n))), tfair::utilitarian(z));
  }
}
