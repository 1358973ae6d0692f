#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "nanbu/vec3.hpp"

namespace nanbu::sim {

/// Isotropic gaussian; variance is per component.
struct Gaussian {
  Vec3 mean;
  double variance = 1.0;
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

struct WeightedGaussian {
  double weight = 1.0;
  Gaussian component;
  friend bool operator==(const WeightedGaussian&, const WeightedGaussian&) = default;
};

struct GaussianMixture {
  std::vector<WeightedGaussian> components;
  friend bool operator==(const GaussianMixture&, const GaussianMixture&) = default;
};

/// Uniform on the closed ball B(center, radius).
struct UniformBall {
  Vec3 center;
  double radius = 1.0;
  friend bool operator==(const UniformBall&, const UniformBall&) = default;
};

/// Initial velocity law. Every variant has a density with finite entropy and
/// moments of all orders.
using InitialLaw = std::variant<Gaussian, GaussianMixture, UniformBall>;

/// Throws ConfigError when parameters are invalid (non-positive variance or
/// radius, mixture weights not summing to one, non-finite entries).
void validate(const InitialLaw& law);

/// n i.i.d. draws from law; deterministic in (seed, stream).
std::vector<Vec3> sample_velocities(const InitialLaw& law, std::size_t n, std::uint64_t seed,
                                    std::uint64_t stream = 0);

}  // namespace nanbu::sim
