#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nanbu/harness/config.hpp"
#include "nanbu/simulation.hpp"

namespace nanbu::harness {

/// One aggregated sweep point.
struct ReportRow {
  double sweep_value = 0.0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(replicas); 0 for one replica
  std::size_t replicas = 0;
  double elapsed_seconds = 0.0;
};

struct SweepSummary {
  std::vector<ReportRow> rows;
  /// Least-squares slope of log(mean) against log(sweep_value) over rows with
  /// a positive mean; absent with fewer than two such rows.
  std::optional<double> fitted_slope;
  std::optional<double> reference_slope;
  /// Whether the row means strictly decrease along the sweep.
  bool strictly_decreasing = false;
};

struct RunOptions {
  unsigned threads = 1;
  /// When false, elapsed times are reported as 0 so reports are reproducible
  /// byte for byte.
  bool timing = true;
};

/// Mean W2^2 between the terminal cloud of each replica at each N and a
/// uniform N-point subsample (without replacement, drawn from the replica's
/// analysis stream) of one reference run with n_ref particles.
SweepSummary experiment_n_sweep(const ExperimentConfig& config, const RunOptions& options = {});

/// Coupled sweep: mean terminal D(T) of each K_lo against K_hi; reference
/// slope 1 - 2/nu. Uncoupled sweep: mean W2^2 of each K against one
/// reference run at k_ref with the same N.
SweepSummary experiment_k_sweep(const ExperimentConfig& config, const RunOptions& options = {});

/// W2^2 between `cloud` and a uniform cloud.size()-point subsample of
/// `reference` drawn from `stream`. Zero when the clouds coincide as sets.
double reference_distance(const std::vector<Vec3>& cloud, const std::vector<Vec3>& reference,
                          std::uint64_t seed, std::uint64_t stream);

/// Per-snapshot diagnostics of a single run.
struct SnapshotRow {
  double t = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  Vec3 momentum;
  double energy = 0.0;
  double blob_lp = 0.0;
  std::uint64_t events = 0;
};

std::vector<SnapshotRow> simulate_rows(const ExperimentConfig& config, std::uint64_t replica = 0);

/// (t, D(t)) for one coupled run with K_lo = sim.k and K_hi = sweep.k_hi.
std::vector<std::pair<double, double>> couple_rows(const ExperimentConfig& config,
                                                   std::uint64_t replica = 0);

/// Mean and standard error of the mean.
std::pair<double, double> mean_and_std_error(const std::vector<double>& values);

}  // namespace nanbu::harness
