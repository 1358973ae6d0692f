#include <gtest/gtest.h>

#include "nanbu/harness/config.hpp"
#include "nanbu/harness/experiments.hpp"
#include "nanbu/metrics.hpp"

using namespace nanbu;
using namespace nanbu::harness;

namespace {

ExperimentConfig base(const std::string& extra) {
  return parse_config("params.gamma = -0.5\nparams.nu = 0.7\nsim.n = 60\nsim.k = 4\n"
                      "sim.t = 0.3\nsim.seed = 5\ndiag.times = 0, 0.3\n" +
                      extra);
}

}  // namespace

TEST(KSweep, RowsAscendingAndEqualCutoffRowIsZero) {
  const auto cfg = base("sweep.k_lo = 1, 2, 4\nsweep.k_hi = 4\nreplicas = 4\n");
  const auto s = experiment_k_sweep(cfg);
  ASSERT_EQ(s.rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(s.rows[k].replicas, 4u);
    EXPECT_GE(s.rows[k].std_error, 0.0);
    if (k) {
      EXPECT_GT(s.rows[k].sweep_value, s.rows[k - 1].sweep_value);
    }
  }
  EXPECT_EQ(s.rows.back().mean, 0.0);
  EXPECT_EQ(s.rows.back().std_error, 0.0);
  ASSERT_TRUE(s.reference_slope.has_value());
  EXPECT_NEAR(*s.reference_slope, 1.0 - 2.0 / 0.7, 1e-15);
  EXPECT_TRUE(s.fitted_slope.has_value());
}

TEST(KSweep, UncoupledAgainstReference) {
  const auto cfg = base("sweep.k_values = 1, 2\nsweep.k_ref = 4\nreplicas = 2\n");
  const auto s = experiment_k_sweep(cfg);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_GT(s.rows[0].mean, 0.0);
}

TEST(NSweep, RowCountAndDeterminism) {
  const auto cfg = base("sweep.n_values = 10, 20, 40\nsweep.n_ref = 80\nreplicas = 3\n");
  const RunOptions opts{1, false};
  const auto a = experiment_n_sweep(cfg, opts);
  const auto b = experiment_n_sweep(cfg, RunOptions{3, false});
  ASSERT_EQ(a.rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(a.rows[k].sweep_value,
              static_cast<double>(std::get<NSweep>(cfg.sweep).n_values[k]));
    EXPECT_EQ(a.rows[k].mean, b.rows[k].mean) << "thread count changed the result";
    EXPECT_EQ(a.rows[k].std_error, b.rows[k].std_error);
    EXPECT_EQ(a.rows[k].elapsed_seconds, 0.0);
  }
}

TEST(NSweep, CloudAgainstItselfIsZero) {
  const auto cloud = sim::sample_initial(sim::Gaussian{}, 50, 3).velocities;
  EXPECT_EQ(reference_distance(cloud, cloud, 1, 2), 0.0);
  EXPECT_GT(reference_distance(std::vector<Vec3>(cloud.begin(), cloud.begin() + 10), cloud, 1, 2),
            0.0);
}

TEST(Aggregation, MeanAndStdError) {
  const auto [m, se] = mean_and_std_error({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m, 2.5);
  EXPECT_DOUBLE_EQ(se, std::sqrt(5.0 / 3.0 / 4.0));
  EXPECT_EQ(mean_and_std_error({7.0}).second, 0.0);
}

TEST(Aggregation, StdErrorScalesAsInverseSqrtReplicas) {
  auto cfg = base("sweep.k_lo = 2\nsweep.k_hi = 4\n");
  cfg.replicas = 10;
  const double se10 = experiment_k_sweep(cfg).rows[0].std_error;
  cfg.replicas = 40;
  const double se40 = experiment_k_sweep(cfg).rows[0].std_error;
  EXPECT_NEAR(se10 / se40, 2.0, 0.3 * 2.0);
}

TEST(Diagnostics, SimulateAndCoupleRows) {
  const auto cfg = base("sweep.k_lo = 2\nsweep.k_hi = 8\n");
  const auto rows = simulate_rows(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].events, 0u);
  EXPECT_GT(rows[1].events, 0u);
  EXPECT_GT(rows[0].blob_lp, 0.0);
  EXPECT_EQ(rows[0].energy, rows[0].m2);
  const auto d = couple_rows(cfg);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].second, 0.0);
  EXPECT_GT(d[1].second, 0.0);
}
