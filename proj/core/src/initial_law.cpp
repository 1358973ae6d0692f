#include "nanbu/initial_law.hpp"

#include <cmath>
#include <string>

#include "nanbu/errors.hpp"
#include "nanbu/rng.hpp"

namespace nanbu::sim {
namespace {

void check_gaussian(const Gaussian& g, std::vector<std::string>& errors) {
  if (!is_finite(g.mean)) {
    errors.emplace_back("init.mean finite");
  }
  if (!(g.variance > 0.0) || !std::isfinite(g.variance)) {
    errors.emplace_back("init.variance>0");
  }
}

Vec3 draw_gaussian(const Gaussian& g, CounterRng& rng) {
  const auto a = normal_pair(rng);
  const auto b = normal_pair(rng);
  const double sd = std::sqrt(g.variance);
  return g.mean + sd * Vec3{a[0], a[1], b[0]};
}

Vec3 draw(const Gaussian& g, CounterRng& rng) { return draw_gaussian(g, rng); }

Vec3 draw(const GaussianMixture& m, CounterRng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (const auto& c : m.components) {
    acc += c.weight;
    if (u < acc) {
      return draw_gaussian(c.component, rng);
    }
  }
  return draw_gaussian(m.components.back().component, rng);
}

Vec3 draw(const UniformBall& b, CounterRng& rng) {
  for (;;) {
    const Vec3 p{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0,
                 2.0 * uniform01(rng) - 1.0};
    const Vec3 offset = b.radius * p;
    if (norm(offset) <= b.radius) {
      return b.center + offset;
    }
  }
}

}  // namespace

void validate(const InitialLaw& law) {
  std::vector<std::string> errors;
  if (const auto* g = std::get_if<Gaussian>(&law)) {
    check_gaussian(*g, errors);
  } else if (const auto* m = std::get_if<GaussianMixture>(&law)) {
    if (m->components.empty()) {
      errors.emplace_back("init.weights nonempty");
    }
    double total = 0.0;
    for (const auto& c : m->components) {
      if (!(c.weight >= 0.0)) {
        errors.emplace_back("init.weights>=0");
      }
      total += c.weight;
      check_gaussian(c.component, errors);
    }
    if (!m->components.empty() && std::abs(total - 1.0) > 1e-12) {
      errors.emplace_back("init.weights sum to 1 (got " + std::to_string(total) + ")");
    }
  } else if (const auto* b = std::get_if<UniformBall>(&law)) {
    if (!is_finite(b->center)) {
      errors.emplace_back("init.center finite");
    }
    if (!(b->radius > 0.0) || !std::isfinite(b->radius)) {
      errors.emplace_back("init.radius>0");
    }
  }
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
}

std::vector<Vec3> sample_velocities(const InitialLaw& law, std::size_t n, std::uint64_t seed,
                                    std::uint64_t stream) {
  validate(law);
  CounterRng rng(seed, stream);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(std::visit([&](const auto& l) { return draw(l, rng); }, law));
  }
  return out;
}

}  // namespace nanbu::sim
