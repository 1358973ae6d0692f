#include "nanbu/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "nanbu/blob.hpp"
#include "nanbu/errors.hpp"
#include "nanbu/metrics.hpp"

namespace nanbu::harness {
namespace {

// Runs task(0..count-1) on up to `threads` workers. Results are written by
// index, so the outcome does not depend on scheduling. The first exception
// (by task index) is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      task(k);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          task(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

struct Timed {
  double value = 0.0;
  double seconds = 0.0;
};

template <class F>
Timed timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  const double v = f();
  return {v, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
}

sim::SimConfig terminal_only(sim::SimConfig c) {
  c.diagnostic_times = {c.horizon};
  return c;
}

std::vector<Vec3> terminal_cloud(const sim::SimConfig& c, std::uint64_t replica) {
  return sim::run(terminal_only(c), replica).snapshots.back().velocities;
}

// Aggregates a (points x replicas) grid of timed samples into rows.
std::vector<ReportRow> aggregate(const std::vector<double>& sweep_values,
                                 const std::vector<Timed>& samples, std::size_t replicas,
                                 bool timing) {
  std::vector<ReportRow> rows;
  for (std::size_t p = 0; p < sweep_values.size(); ++p) {
    std::vector<double> values;
    double seconds = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
      values.push_back(samples[p * replicas + r].value);
      seconds += samples[p * replicas + r].seconds;
    }
    const auto [mean, se] = mean_and_std_error(values);
    rows.push_back({sweep_values[p], mean, se, replicas, timing ? seconds : 0.0});
  }
  return rows;
}

void finish(SweepSummary& s) {
  s.strictly_decreasing = true;
  for (std::size_t k = 1; k < s.rows.size(); ++k) {
    if (!(s.rows[k].mean < s.rows[k - 1].mean)) {
      s.strictly_decreasing = false;
    }
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : s.rows) {
    if (r.mean > 0.0 && r.sweep_value > 0.0) {
      xs.push_back(std::log(r.sweep_value));
      ys.push_back(std::log(r.mean));
    }
  }
  if (xs.size() < 2) {
    return;
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx > 0.0) {
    s.fitted_slope = sxy / sxx;
  }
}

}  // namespace

std::pair<double, double> mean_and_std_error(const std::vector<double>& values) {
  if (values.empty()) {
    return {0.0, 0.0};
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double reference_distance(const std::vector<Vec3>& cloud, const std::vector<Vec3>& reference,
                          std::uint64_t seed, std::uint64_t stream) {
  const std::size_t n = cloud.size();
  if (n == 0 || n > reference.size()) {
    throw std::domain_error("reference_distance: need 0 < cloud size <= reference size");
  }
  // Partial Fisher-Yates over the reference indices.
  std::vector<Vec3> pool = reference;
  CounterRng rng(seed, stream);
  for (std::size_t k = 0; k < n; ++k) {
    const auto pick = k + static_cast<std::size_t>(uniform_index(rng, pool.size() - k));
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(n);
  return metrics::wasserstein2_squared(metrics::EmpiricalMeasure(cloud),
                                       metrics::EmpiricalMeasure(std::move(pool)));
}

SweepSummary experiment_n_sweep(const ExperimentConfig& config, const RunOptions& options) {
  const auto* sweep = std::get_if<NSweep>(&config.sweep);
  if (sweep == nullptr) {
    throw ConfigError("sweep.n_values: N-sweep not configured");
  }
  validate(config);

  sim::SimConfig ref_cfg = config.base;
  ref_cfg.n = sweep->n_ref;
  if (sweep->k_ref) {
    ref_cfg.cutoff = kernel::CutoffLevel(*sweep->k_ref);
  }
  const std::vector<Vec3> reference = terminal_cloud(ref_cfg, sim::kReferenceReplica);

  const std::size_t reps = config.replicas;
  const std::size_t points = sweep->n_values.size();
  std::vector<Timed> samples(points * reps);
  parallel_for(points * reps, options.threads, [&](std::size_t task) {
    const std::size_t p = task / reps;
    const std::uint64_t r = task % reps;
    samples[task] = timed([&] {
      sim::SimConfig c = config.base;
      c.n = sweep->n_values[p];
      return reference_distance(terminal_cloud(c, r), reference, c.seed,
                                sim::stream_id(r, sim::StreamPurpose::analysis));
    });
  });

  std::vector<double> values(sweep->n_values.begin(), sweep->n_values.end());
  SweepSummary out;
  out.rows = aggregate(values, samples, reps, options.timing);
  finish(out);
  out.reference_slope = -0.5;
  return out;
}

SweepSummary experiment_k_sweep(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const std::size_t reps = config.replicas;
  SweepSummary out;

  if (const auto* s = std::get_if<CoupledSweep>(&config.sweep)) {
    const kernel::CutoffLevel hi(s->k_hi);
    const sim::SimConfig base = terminal_only(config.base);
    std::vector<Timed> samples(s->k_lo.size() * reps);
    parallel_for(samples.size(), options.threads, [&](std::size_t task) {
      const std::size_t p = task / reps;
      const std::uint64_t r = task % reps;
      samples[task] = timed([&] {
        return sim::coupled_run(base, kernel::CutoffLevel(s->k_lo[p]), hi, r).distance.back();
      });
    });
    out.rows = aggregate(s->k_lo, samples, reps, options.timing);
    finish(out);
    out.reference_slope = 1.0 - 2.0 / config.base.params.nu();
    return out;
  }

  const auto* s = std::get_if<KSweep>(&config.sweep);
  if (s == nullptr) {
    throw ConfigError("sweep.k_lo: K-sweep not configured");
  }
  sim::SimConfig ref_cfg = config.base;
  ref_cfg.cutoff = kernel::CutoffLevel(s->k_ref);
  const metrics::EmpiricalMeasure reference(terminal_cloud(ref_cfg, sim::kReferenceReplica));
  std::vector<Timed> samples(s->k_values.size() * reps);
  parallel_for(samples.size(), options.threads, [&](std::size_t task) {
    const std::size_t p = task / reps;
    const std::uint64_t r = task % reps;
    samples[task] = timed([&] {
      sim::SimConfig c = config.base;
      c.cutoff = kernel::CutoffLevel(s->k_values[p]);
      return metrics::wasserstein2_squared(metrics::EmpiricalMeasure(terminal_cloud(c, r)),
                                           reference);
    });
  });
  out.rows = aggregate(s->k_values, samples, reps, options.timing);
  finish(out);
  out.reference_slope = 1.0 - 2.0 / config.base.params.nu();
  return out;
}

std::vector<SnapshotRow> simulate_rows(const ExperimentConfig& config, std::uint64_t replica) {
  validate(config);
  const auto result = sim::run(config.base, replica);
  metrics::BlobSpec spec;
  spec.delta = config.delta();
  spec.p = config.blob_p;
  spec.epsilon = metrics::blob_epsilon(config.base.n, spec.delta);

  std::vector<SnapshotRow> rows;
  rows.reserve(result.snapshots.size());
  for (const auto& snap : result.snapshots) {
    const metrics::EmpiricalMeasure m(snap.velocities);
    const auto stats = metrics::conserved_stats(m);
    SnapshotRow row;
    row.t = snap.time;
    row.m2 = metrics::moment(m, 2.0);
    row.m4 = metrics::moment(m, 4.0);
    row.momentum = stats.momentum;
    row.energy = stats.energy;
    row.blob_lp = metrics::blob_lp_norm(m, spec);
    row.events = snap.event_count;
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<double, double>> couple_rows(const ExperimentConfig& config,
                                                   std::uint64_t replica) {
  validate(config);
  const auto* s = std::get_if<CoupledSweep>(&config.sweep);
  if (s == nullptr) {
    throw ConfigError("sweep.k_hi: required for a coupled run");
  }
  const auto result =
      sim::coupled_run(config.base, config.base.cutoff, kernel::CutoffLevel(s->k_hi), replica);
  std::vector<std::pair<double, double>> rows;
  for (std::size_t k = 0; k < result.times.size(); ++k) {
    rows.emplace_back(result.times[k], result.distance[k]);
  }
  return rows;
}

}  // namespace nanbu::harness
