#include <gtest/gtest.h>

#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/schedule.hpp"

using namespace semsteg;

TEST(Schedule, SingleStepHandArithmetic) {
  const auto s = build_schedule(1, 0.1, 0.1);
  EXPECT_DOUBLE_EQ(s.alpha_bar(0), 1.0);
  EXPECT_DOUBLE_EQ(s.alpha_bar(1), 0.9);
  EXPECT_NEAR(s.a(1), 1.0540925533894598, 1e-15);
  // sqrt(1 - alpha_bar(0)) vanishes, leaving b(1) = -a(1) sqrt(1 - alpha_bar(1)).
  EXPECT_NEAR(s.b(1), -s.a(1) * std::sqrt(0.1), 1e-15);
  EXPECT_NEAR(telescoped_gain(s), 0.9486832980505138, 1e-15);
}

TEST(Schedule, ConstantBetaIsGeometric) {
  const double beta = 0.013;
  const auto s = build_schedule(20, beta, beta);
  for (int t = 0; t <= 20; ++t) EXPECT_NEAR(s.alpha_bar(t), std::pow(1.0 - beta, t), 1e-14) << t;
}

TEST(Schedule, CoefficientIdentities) {
  for (int steps : {1, 10, 50, 1000}) {
    const auto s = build_schedule(steps);
    for (int t = 1; t <= steps; ++t) {
      EXPECT_NEAR(s.gamma(t) * s.a(t), 1.0, 1e-15);
      EXPECT_NEAR(s.omega(t), s.b(t) * s.gamma(t), 1e-15);
      EXPECT_GE(s.a(t), 1.0);
      EXPECT_LT(s.alpha_bar(t), s.alpha_bar(t - 1));
      EXPECT_GT(s.alpha_bar(t), 0.0);
      // Matches the DDIM update written out from alpha_bar.
      const double prev = s.alpha_bar(t - 1), cur = s.alpha_bar(t);
      EXPECT_NEAR(s.b(t), std::sqrt(1 - prev) - std::sqrt(prev) * std::sqrt(1 - cur) / std::sqrt(cur),
                  1e-14);
    }
  }
}

TEST(Schedule, TelescopedGainMatchesBruteForceProduct) {
  const auto s = build_schedule(50, 1e-4, 2e-2);
  double prod = 1.0;
  for (int i = 0; i < 50; ++i) prod *= 1.0 - (1e-4 + (2e-2 - 1e-4) * i / 49.0);
  EXPECT_NEAR(telescoped_gain(s), std::sqrt(prod), 1e-12);
  EXPECT_NEAR(telescoped_gain(s), std::sqrt(s.alpha_bar(50)), 1e-12);
  // numpy.prod over the same linspace
  EXPECT_NEAR(telescoped_gain(s), 0.7764995797356976, 1e-12);
}

TEST(Schedule, RejectsBadParameters) {
  EXPECT_THROW(build_schedule(0), ValidationError);
  EXPECT_THROW(build_schedule(10, 0.0, 0.1), ValidationError);
  EXPECT_THROW(build_schedule(10, 0.1, 1.0), ValidationError);
  EXPECT_THROW(build_schedule(10, 0.2, 0.1), ValidationError);
  const auto s = build_schedule(5);
  EXPECT_THROW(s.a(0), ValidationError);
  EXPECT_THROW(s.a(6), ValidationError);
}
