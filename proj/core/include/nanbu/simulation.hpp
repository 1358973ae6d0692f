#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nanbu/initial_law.hpp"
#include "nanbu/kernel.hpp"
#include "nanbu/rng.hpp"
#include "nanbu/vec3.hpp"

/// Exact event-driven simulation of the Nanbu N-particle system with cutoff K.
///
/// The total jump rate 2 pi (N-1) K does not depend on the configuration, so
/// the process is simulated without thinning or time discretisation: wait an
/// Exp(2 pi (N-1) K) time, draw an ordered pair (i, j) uniformly, z ~ U[0, K]
/// and phi ~ U[0, 2 pi), and move v_i by c_K(v_i, v_j, z, phi). Only v_i
/// changes.
namespace nanbu::sim {

struct ParticleState {
  std::vector<Vec3> velocities;
  double time = 0.0;
  std::uint64_t event_count = 0;

  std::size_t size() const { return velocities.size(); }
  friend bool operator==(const ParticleState&, const ParticleState&) = default;
};

struct EventRecord {
  double time = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double z = 0.0;
  double phi = 0.0;
  Vec3 applied_deviation;
};

struct SimConfig {
  std::size_t n = 2;
  kernel::CutoffLevel cutoff{1.0};
  double horizon = 1.0;
  std::uint64_t seed = 1;
  kernel::SoftPotentialParams params{-0.5, 0.7};
  InitialLaw initial = Gaussian{};
  std::vector<double> diagnostic_times;

  /// Throws ConfigError listing every violated constraint.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Random-stream layout per replica: one stream for the initial draw, one for
/// the event sequence, one for any post-processing (e.g. subsampling).
enum class StreamPurpose : std::uint64_t { initial = 0, dynamics = 1, analysis = 2 };
std::uint64_t stream_id(std::uint64_t replica, StreamPurpose purpose);

/// Replica index reserved for surrogate reference runs.
inline constexpr std::uint64_t kReferenceReplica = std::uint64_t{1} << 60;

/// 2 pi (n - 1) K; zero for n <= 1.
double total_jump_rate(std::size_t n, kernel::CutoffLevel cutoff);

/// n i.i.d. draws from the initial law at time zero. Requires n >= 2.
ParticleState sample_initial(const InitialLaw& law, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream = 0);

/// Advance to and apply the next event in place. Throws std::logic_error for
/// fewer than two particles.
EventRecord step_in_place(ParticleState& state, const kernel::SoftPotentialParams& params,
                          kernel::CutoffLevel cutoff, CounterRng& rng);

std::pair<ParticleState, EventRecord> step(const ParticleState& state,
                                           const kernel::SoftPotentialParams& params,
                                           kernel::CutoffLevel cutoff, CounterRng& rng);

struct RunLog {
  std::uint64_t events = 0;
  double wall_seconds = 0.0;
  double final_m2 = 0.0;
  double final_m4 = 0.0;
  Vec3 final_momentum;
};

struct RunResult {
  /// One per diagnostic time; snapshot.time is the diagnostic time and the
  /// velocities are those after every event at or before it.
  std::vector<ParticleState> snapshots;
  RunLog log;
};

/// Simulate replica `replica` of config on [0, horizon]. With no diagnostic
/// times the horizon alone is sampled.
RunResult run(const SimConfig& config, std::uint64_t replica = 0);

struct CoupledResult {
  std::vector<double> times;
  std::vector<ParticleState> hi_snapshots;
  std::vector<ParticleState> lo_snapshots;
  /// D(t) = N^-1 sum_i |v_i^hi(t) - v_i^lo(t)|^2 at each diagnostic time.
  std::vector<double> distance;
  RunLog log;
};

/// Common-randomness coupling of the systems with cutoffs lo <= hi (the
/// cutoff in config is ignored). Events are drawn at the hi rate; the lo
/// system applies the event only when z <= K_lo, with its phase shifted by
/// phi0(v_i^hi - v_j^hi, v_i^lo - v_j^lo). Each marginal is exactly the
/// uncoupled system.
CoupledResult coupled_run(const SimConfig& config, kernel::CutoffLevel lo, kernel::CutoffLevel hi,
                          std::uint64_t replica = 0);

/// N^-1 sum_i |a_i - b_i|^2 for index-aligned clouds.
double mean_square_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

}  // namespace nanbu::sim
