#include "nanbu/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nanbu/errors.hpp"

namespace nanbu::sim {
namespace {

struct EventDraw {
  double dt;
  std::size_t i;
  std::size_t j;
  double z;
  double phi;
};

// Fixed draw order per event: holding time, i, j, z, phi.
EventDraw draw_event(std::size_t n, kernel::CutoffLevel cutoff, CounterRng& rng) {
  EventDraw d{};
  d.dt = exponential(rng, total_jump_rate(n, cutoff));
  d.i = static_cast<std::size_t>(uniform_index(rng, n));
  d.j = static_cast<std::size_t>(uniform_index(rng, n - 1));
  if (d.j >= d.i) {
    ++d.j;
  }
  d.z = cutoff.k() * uniform01(rng);
  d.phi = 2.0 * std::numbers::pi * uniform01(rng);
  return d;
}

RunLog summarize(const std::vector<Vec3>& v, std::uint64_t events, double wall) {
  RunLog log;
  log.events = events;
  log.wall_seconds = wall;
  for (const Vec3& u : v) {
    const double s = norm2(u);
    log.final_m2 += s;
    log.final_m4 += s * s;
    log.final_momentum += u;
  }
  const double inv = 1.0 / static_cast<double>(v.size());
  log.final_m2 *= inv;
  log.final_m4 *= inv;
  log.final_momentum *= inv;
  return log;
}

std::vector<double> sample_times(const SimConfig& config) {
  if (config.diagnostic_times.empty()) {
    return {config.horizon};
  }
  return config.diagnostic_times;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void SimConfig::validate() const {
  std::vector<std::string> errors;
  if (n < 2) {
    errors.emplace_back("sim.n>=2");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    errors.emplace_back("sim.t>=0");
  }
  double prev = -1.0;
  for (double t : diagnostic_times) {
    if (!(t >= 0.0 && t <= horizon)) {
      errors.emplace_back("diag.times within [0, sim.t] (got " + std::to_string(t) + ")");
    }
    if (!(t > prev)) {
      errors.emplace_back("diag.times strictly increasing");
    }
    prev = t;
  }
  try {
    sim::validate(initial);
  } catch (const ConfigError& e) {
    errors.insert(errors.end(), e.violations().begin(), e.violations().end());
  }
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
}

std::uint64_t stream_id(std::uint64_t replica, StreamPurpose purpose) {
  return (replica << 2) | static_cast<std::uint64_t>(purpose);
}

double total_jump_rate(std::size_t n, kernel::CutoffLevel cutoff) {
  if (n <= 1) {
    return 0.0;
  }
  return 2.0 * std::numbers::pi * static_cast<double>(n - 1) * cutoff.k();
}

ParticleState sample_initial(const InitialLaw& law, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream) {
  if (n < 2) {
    throw ConfigError("sim.n>=2");
  }
  return {sample_velocities(law, n, seed, stream), 0.0, 0};
}

EventRecord step_in_place(ParticleState& state, const kernel::SoftPotentialParams& params,
                          kernel::CutoffLevel cutoff, CounterRng& rng) {
  if (state.size() < 2) {
    throw std::logic_error("step: need at least two particles");
  }
  const EventDraw d = draw_event(state.size(), cutoff, rng);
  Vec3& vi = state.velocities[d.i];
  const Vec3 c = kernel::deviation_c(vi, state.velocities[d.j], d.z, d.phi, params, cutoff);
  vi += c;
  state.time += d.dt;
  ++state.event_count;
  return {state.time, d.i, d.j, d.z, d.phi, c};
}

std::pair<ParticleState, EventRecord> step(const ParticleState& state,
                                           const kernel::SoftPotentialParams& params,
                                           kernel::CutoffLevel cutoff, CounterRng& rng) {
  ParticleState next = state;
  EventRecord record = step_in_place(next, params, cutoff, rng);
  return {std::move(next), record};
}

RunResult run(const SimConfig& config, std::uint64_t replica) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ParticleState state = sample_initial(config.initial, config.n, config.seed,
                                       stream_id(replica, StreamPurpose::initial));
  CounterRng rng(config.seed, stream_id(replica, StreamPurpose::dynamics));
  const std::vector<double> times = sample_times(config);

  RunResult result;
  result.snapshots.reserve(times.size());
  std::size_t next_sample = 0;
  for (;;) {
    const EventDraw d = draw_event(state.size(), config.cutoff, rng);
    const double t_event = state.time + d.dt;
    while (next_sample < times.size() && times[next_sample] < t_event) {
      ParticleState snap = state;
      snap.time = times[next_sample++];
      result.snapshots.push_back(std::move(snap));
    }
    if (t_event > config.horizon) {
      break;
    }
    Vec3& vi = state.velocities[d.i];
    vi += kernel::deviation_c(vi, state.velocities[d.j], d.z, d.phi, config.params,
                              config.cutoff);
    state.time = t_event;
    ++state.event_count;
  }
  result.log = summarize(state.velocities, state.event_count, seconds_since(start));
  return result;
}

CoupledResult coupled_run(const SimConfig& config, kernel::CutoffLevel lo, kernel::CutoffLevel hi,
                          std::uint64_t replica) {
  config.validate();
  if (lo.k() > hi.k()) {
    throw ConfigError("sweep.k_lo<=sweep.k_hi (got " + std::to_string(lo.k()) + " > " +
                      std::to_string(hi.k()) + ")");
  }
  const auto start = std::chrono::steady_clock::now();
  ParticleState sys_hi = sample_initial(config.initial, config.n, config.seed,
                                        stream_id(replica, StreamPurpose::initial));
  ParticleState sys_lo = sys_hi;
  CounterRng rng(config.seed, stream_id(replica, StreamPurpose::dynamics));
  const std::vector<double> times = sample_times(config);

  CoupledResult result;
  result.times = times;
  std::size_t next_sample = 0;
  auto record = [&](double t) {
    ParticleState a = sys_hi;
    ParticleState b = sys_lo;
    a.time = b.time = t;
    result.distance.push_back(mean_square_distance(a.velocities, b.velocities));
    result.hi_snapshots.push_back(std::move(a));
    result.lo_snapshots.push_back(std::move(b));
  };

  double clock = 0.0;
  for (;;) {
    const EventDraw d = draw_event(config.n, hi, rng);
    const double t_event = clock + d.dt;
    while (next_sample < times.size() && times[next_sample] < t_event) {
      record(times[next_sample++]);
    }
    if (t_event > config.horizon) {
      break;
    }
    clock = t_event;

    Vec3& hi_i = sys_hi.velocities[d.i];
    const Vec3& hi_j = sys_hi.velocities[d.j];
    if (d.z <= lo.k()) {
      Vec3& lo_i = sys_lo.velocities[d.i];
      const Vec3& lo_j = sys_lo.velocities[d.j];
      const Vec3 x_hi = hi_i - hi_j;
      const Vec3 x_lo = lo_i - lo_j;
      double phi0 = 0.0;
      if (norm2(x_hi) > 0.0 && norm2(x_lo) > 0.0) {
        phi0 = kernel::tanaka_phi0(x_hi, x_lo);
      }
      const Vec3 c_lo = kernel::deviation_c(lo_i, lo_j, d.z, d.phi + phi0, config.params, lo);
      lo_i += c_lo;
      sys_lo.time = t_event;
      ++sys_lo.event_count;
    }
    hi_i += kernel::deviation_c(hi_i, hi_j, d.z, d.phi, config.params, hi);
    sys_hi.time = t_event;
    ++sys_hi.event_count;
  }
  result.log = summarize(sys_hi.velocities, sys_hi.event_count, seconds_since(start));
  return result;
}

double mean_square_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::domain_error("mean_square_distance: clouds must have equal nonzero size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += norm2(a[i] - b[i]);
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace nanbu::sim
