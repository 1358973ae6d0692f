#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ks.hpp"
#include "nanbu/errors.hpp"
#include "nanbu/simulation.hpp"

using namespace nanbu;
using namespace nanbu::sim;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.n = 50;
  c.cutoff = kernel::CutoffLevel(5.0);
  c.horizon = 1.0;
  c.seed = 99;
  c.diagnostic_times = {0.0, 0.25, 0.5, 1.0};
  return c;
}

}  // namespace

TEST(Rate, ClosedForm) {
  EXPECT_DOUBLE_EQ(total_jump_rate(50, kernel::CutoffLevel(5.0)), 2 * std::numbers::pi * 49 * 5);
  EXPECT_EQ(total_jump_rate(1, kernel::CutoffLevel(5.0)), 0.0);
}

TEST(Step, OnlyParticleIChanges) {
  const kernel::SoftPotentialParams p(-0.5, 0.7);
  ParticleState s = sample_initial(Gaussian{}, 20, 1);
  CounterRng rng(1, 1);
  for (int e = 0; e < 500; ++e) {
    const ParticleState before = s;
    const EventRecord r = step_in_place(s, p, kernel::CutoffLevel(3.0), rng);
    ASSERT_NE(r.i, r.j);
    ASSERT_LE(r.z, 3.0);
    ASSERT_GE(r.phi, 0.0);
    ASSERT_LT(r.phi, 2 * std::numbers::pi);
    EXPECT_GT(s.time, before.time);
    EXPECT_EQ(s.event_count, before.event_count + 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k != r.i) {
        ASSERT_EQ(s.velocities[k], before.velocities[k]);
      }
    }
    EXPECT_EQ(s.velocities[r.i], before.velocities[r.i] + r.applied_deviation);
  }
}

TEST(Step, PureFunctionalVariantMatchesInPlace) {
  const kernel::SoftPotentialParams p(-0.5, 0.7);
  const ParticleState s0 = sample_initial(Gaussian{}, 10, 2);
  CounterRng a(2, 1);
  CounterRng b(2, 1);
  ParticleState s1 = s0;
  step_in_place(s1, p, kernel::CutoffLevel(2.0), a);
  const auto [s2, rec] = step(s0, p, kernel::CutoffLevel(2.0), b);
  EXPECT_EQ(s1, s2);
}

TEST(Step, RejectsTooFewParticles) {
  ParticleState s{{Vec3{}}, 0.0, 0};
  CounterRng rng(1, 1);
  EXPECT_THROW(step_in_place(s, {-0.5, 0.7}, kernel::CutoffLevel(1.0), rng), std::logic_error);
  EXPECT_THROW(sample_initial(Gaussian{}, 1, 1), ConfigError);
}

TEST(Step, HoldingTimesAreExponential) {
  const kernel::SoftPotentialParams p(-0.5, 0.7);
  const kernel::CutoffLevel k(5.0);
  ParticleState s = sample_initial(Gaussian{}, 50, 3);
  CounterRng rng(3, 1);
  std::vector<double> gaps;
  double prev = 0.0;
  for (int e = 0; e < 5000; ++e) {
    step_in_place(s, p, k, rng);
    gaps.push_back(s.time - prev);
    prev = s.time;
  }
  const double rate = total_jump_rate(50, k);
  const auto ks = stats::ks_test(gaps, [rate](double t) { return 1.0 - std::exp(-rate * t); });
  EXPECT_GT(ks.p_value, 0.001) << "D=" << ks.statistic;
}

TEST(Run, EventCountNearPoissonMean) {
  const SimConfig c = small_config();
  const double mean = total_jump_rate(c.n, c.cutoff) * c.horizon;
  for (std::uint64_t r = 0; r < 5; ++r) {
    const auto result = run(c, r);
    EXPECT_NEAR(static_cast<double>(result.log.events), mean, 4.0 * std::sqrt(mean));
  }
}

TEST(Run, DeterministicAndReplicaDependent) {
  const SimConfig c = small_config();
  const auto a = run(c, 0);
  const auto b = run(c, 0);
  const auto other = run(c, 1);
  ASSERT_EQ(a.snapshots.size(), c.diagnostic_times.size());
  EXPECT_EQ(a.snapshots, b.snapshots);
  EXPECT_NE(a.snapshots.back().velocities, other.snapshots.back().velocities);
}

TEST(Run, SnapshotsAtDiagnosticTimes) {
  const SimConfig c = small_config();
  const auto result = run(c, 0);
  std::uint64_t prev = 0;
  for (std::size_t k = 0; k < c.diagnostic_times.size(); ++k) {
    EXPECT_EQ(result.snapshots[k].time, c.diagnostic_times[k]);
    EXPECT_GE(result.snapshots[k].event_count, prev);
    prev = result.snapshots[k].event_count;
  }
  EXPECT_EQ(result.snapshots.front().event_count, 0u);
  EXPECT_EQ(result.snapshots.front().velocities, sample_initial(c.initial, c.n, c.seed).velocities);
  EXPECT_EQ(result.snapshots.back().event_count, result.log.events);
}

TEST(Run, ZeroHorizonReturnsInitialState) {
  SimConfig c = small_config();
  c.horizon = 0.0;
  c.diagnostic_times = {0.0};
  const auto result = run(c, 0);
  ASSERT_EQ(result.snapshots.size(), 1u);
  EXPECT_EQ(result.log.events, 0u);
  EXPECT_EQ(result.snapshots[0].velocities,
            sample_initial(c.initial, c.n, c.seed, stream_id(0, StreamPurpose::initial))
                .velocities);
}

TEST(Run, ValidationListsEveryViolation) {
  SimConfig c = small_config();
  c.n = 1;
  c.diagnostic_times = {0.5, 0.2, 3.0};
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_GE(e.violations().size(), 3u);
  }
}

TEST(Coupled, EqualCutoffsGiveZeroDistance) {
  const SimConfig c = small_config();
  const auto r = coupled_run(c, kernel::CutoffLevel(4.0), kernel::CutoffLevel(4.0), 0);
  for (double d : r.distance) {
    EXPECT_EQ(d, 0.0);
  }
  EXPECT_EQ(r.hi_snapshots, r.lo_snapshots);
}

TEST(Coupled, HighMarginalIsTheUncoupledRun) {
  SimConfig c = small_config();
  c.cutoff = kernel::CutoffLevel(8.0);
  const auto coupled = coupled_run(c, kernel::CutoffLevel(2.0), kernel::CutoffLevel(8.0), 3);
  const auto plain = run(c, 3);
  ASSERT_EQ(coupled.hi_snapshots.size(), plain.snapshots.size());
  for (std::size_t k = 0; k < plain.snapshots.size(); ++k) {
    EXPECT_EQ(coupled.hi_snapshots[k].velocities, plain.snapshots[k].velocities);
  }
  EXPECT_GT(coupled.distance.back(), 0.0);
  EXPECT_EQ(coupled.distance.front(), 0.0);
}

TEST(Coupled, RejectsInvertedCutoffs) {
  EXPECT_THROW(coupled_run(small_config(), kernel::CutoffLevel(4.0), kernel::CutoffLevel(2.0)),
               ConfigError);
}

TEST(Coupled, LowerCutoffMarginalHasExpectedEventCount) {
  // The lo system jumps when z <= K_lo: Poisson with rate 2 pi (N-1) K_lo.
  SimConfig c = small_config();
  const kernel::CutoffLevel lo(2.0);
  const double mean = total_jump_rate(c.n, lo) * c.horizon;
  double total = 0.0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    total += static_cast<double>(
        coupled_run(c, lo, kernel::CutoffLevel(8.0), r).lo_snapshots.back().event_count);
  }
  EXPECT_NEAR(total / reps, mean, 4.0 * std::sqrt(mean / reps));
}

TEST(Distance, MeanSquare) {
  EXPECT_DOUBLE_EQ(mean_square_distance({{1, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 2, 0}}), 2.5);
  EXPECT_THROW(mean_square_distance({{1, 0, 0}}, {}), std::domain_error);
}
