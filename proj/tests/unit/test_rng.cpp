#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "nanbu/rng.hpp"

using namespace nanbu;

TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(CounterRng, DeterministicAndStreamSeparated) {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  CounterRng c(42, 8);
  CounterRng d(43, 7);
  int same_c = 0;
  int same_d = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = a();
    ASSERT_EQ(x, b());
    same_c += x == c();
    same_d += x == d();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(CounterRng, SplitMatchesFreshStream) {
  const CounterRng parent(5, 0);
  CounterRng child = parent.split(3);
  CounterRng fresh(5, 3);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(child(), fresh());
  }
}

TEST(Distributions, Uniform01InHalfOpenUnitInterval) {
  CounterRng rng(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Distributions, UniformIndexCoversRangeEvenly) {
  CounterRng rng(2, 0);
  std::array<int, 7> counts{};
  const int n = 70000;
  for (int k = 0; k < n; ++k) {
    const auto i = uniform_index(rng, 7);
    ASSERT_LT(i, 7u);
    ++counts[i];
  }
  for (int c : counts) {
    EXPECT_NEAR(c, n / 7.0, 5.0 * std::sqrt(n / 7.0));
  }
}

TEST(Distributions, ExponentialMean) {
  CounterRng rng(3, 0);
  const double rate = 4.0;
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const double e = exponential(rng, rate);
    ASSERT_GT(e, 0.0);
    sum += e;
  }
  EXPECT_NEAR(sum / n, 1.0 / rate, 4.0 / rate / std::sqrt(n));
}

TEST(Distributions, NormalPairMoments) {
  CounterRng rng(4, 0);
  double s1 = 0.0;
  double s2 = 0.0;
  const int n = 50000;
  for (int k = 0; k < n; ++k) {
    for (double g : normal_pair(rng)) {
      s1 += g;
      s2 += g * g;
    }
  }
  EXPECT_NEAR(s1 / (2 * n), 0.0, 0.02);
  EXPECT_NEAR(s2 / (2 * n), 1.0, 0.03);
}
