#include <benchmark/benchmark.h>

#include <vector>

#include "nanbu/assignment.hpp"
#include "nanbu/blob.hpp"
#include "nanbu/kernel.hpp"
#include "nanbu/simulation.hpp"

namespace {

using namespace nanbu;

void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const kernel::SoftPotentialParams params(-0.5, 0.7);
  const kernel::CutoffLevel cutoff(8.0);
  sim::ParticleState ps = sim::sample_initial(sim::Gaussian{}, n, 1);
  CounterRng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::step_in_place(ps, params, cutoff, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->Arg(500)->Arg(4000);

void BM_CoupledRun(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.n = 500;
  cfg.horizon = 0.05;
  cfg.diagnostic_times = {cfg.horizon};
  const kernel::CutoffLevel lo(static_cast<double>(state.range(0)));
  const kernel::CutoffLevel hi(64.0);
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto r = sim::coupled_run(cfg, lo, hi);
    events += r.log.events;
    benchmark::DoNotOptimize(r.distance.back());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_CoupledRun)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Tanaka(benchmark::State& state) {
  const Vec3 x{0.3, -1.2, 0.7};
  const Vec3 y{0.4, -1.0, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel::tanaka_phi0(x, y));
  }
}
BENCHMARK(BM_Tanaka);

void BM_Assignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sim::sample_initial(sim::Gaussian{}, n, 1, 0).velocities;
  const auto b = sim::sample_initial(sim::Gaussian{}, n, 2, 0).velocities;
  std::vector<double> costs(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      costs[i * n + j] = norm2(a[i] - b[j]);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::solve_assignment(costs, n).cost);
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Assignment)->RangeMultiplier(4)->Range(100, 1600)->Unit(benchmark::kMillisecond);

void BM_BlobNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const metrics::EmpiricalMeasure m(sim::sample_initial(sim::Gaussian{}, n, 3).velocities);
  metrics::BlobSpec spec;
  spec.epsilon = metrics::blob_epsilon(n, spec.delta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::blob_lp_norm(m, spec));
  }
}
BENCHMARK(BM_BlobNorm)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
