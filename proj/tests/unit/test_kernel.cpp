#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nanbu/kernel.hpp"
#include "nanbu/rng.hpp"

using namespace nanbu;
using namespace nanbu::kernel;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_vec(CounterRng& rng, double half_width) {
  return {half_width * (2 * uniform01(rng) - 1), half_width * (2 * uniform01(rng) - 1),
          half_width * (2 * uniform01(rng) - 1)};
}

void expect_domain_error_containing(auto&& f, const std::string& needle) {
  try {
    f();
    FAIL() << "expected std::domain_error containing " << needle;
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Params, RejectsOutOfRange) {
  expect_domain_error_containing([] { SoftPotentialParams(-1.2, 0.7); }, "gamma in (-1,0)");
  expect_domain_error_containing([] { SoftPotentialParams(-0.5, 1.0); }, "nu in (0,1)");
  expect_domain_error_containing([] { SoftPotentialParams(-0.5, 0.4); }, "gamma+nu>0");
  expect_domain_error_containing([] { CutoffLevel(0.5); }, "K>=1");
  EXPECT_NO_THROW(SoftPotentialParams(-0.5, 0.7));
}

TEST(Params, BetaSupport) {
  const SoftPotentialParams p(-0.5, 0.7);
  EXPECT_DOUBLE_EQ(p.beta(1.0), 1.0);
  EXPECT_DOUBLE_EQ(p.beta(0.5), std::pow(0.5, -1.7));
  EXPECT_EQ(p.beta(2.0), 0.0);
}

TEST(Frame, OrthonormalAndOrientedProperty) {
  CounterRng rng(10, 0);
  for (int s = 0; s < 2000; ++s) {
    const Vec3 x = random_vec(rng, 5.0);
    const Frame f = orthonormal_frame(x);
    const double len = norm(x);
    EXPECT_NEAR(norm(f.i_vec), len, 1e-12 * len);
    EXPECT_NEAR(norm(f.j_vec), len, 1e-12 * len);
    EXPECT_NEAR(dot(f.i_vec, x), 0.0, 1e-12 * len * len);
    EXPECT_NEAR(dot(f.j_vec, x), 0.0, 1e-12 * len * len);
    EXPECT_NEAR(dot(f.i_vec, f.j_vec), 0.0, 1e-12 * len * len);
    // (I, J, x) is right-handed.
    EXPECT_GT(dot(cross(f.i_vec, f.j_vec), x), 0.0);
  }
}

TEST(Frame, ReferenceAxisIsSmallestComponentLowestIndexOnTies) {
  // x = (1,1,1): all tie, e = e_1, so I is parallel to x × e_1 = (0, 1, -1).
  const Frame f = orthonormal_frame({1.0, 1.0, 1.0});
  EXPECT_EQ(f.i_vec.x, 0.0);
  EXPECT_NEAR(f.i_vec.y, -f.i_vec.z, 1e-15);
  // Smallest component along y: I parallel to x × e_2.
  const Frame g = orthonormal_frame({3.0, 0.5, 2.0});
  EXPECT_EQ(g.i_vec.y, 0.0);
  EXPECT_THROW(orthonormal_frame({0, 0, 0}), std::domain_error);
}

TEST(AngularMap, FrozenValues) {
  const SoftPotentialParams half(-0.25, 0.5);
  EXPECT_NEAR(angular_G(1.0, half), 0.59364643967277639, 1e-14);
  EXPECT_NEAR(angular_H(0.1, half), 4.728786198731028, 1e-13);
  EXPECT_EQ(angular_G(0.0, half), kPi / 2);
  EXPECT_EQ(angular_H(kPi / 2, half), 0.0);
  const SoftPotentialParams p(-0.5, 0.7);
  EXPECT_DOUBLE_EQ(p.envelope_lower(), kPi / 2);
  EXPECT_NEAR(p.envelope_upper(), 1.6645180701851391, 1e-14);
}

TEST(AngularMap, RoundTripAndMonotone) {
  for (double nu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const SoftPotentialParams p(-0.5 * nu, nu);
    double prev = angular_G(0.0, p);
    for (double z : {0.0, 0.1, 1.0, 10.0, 1e4, 1e6}) {
      EXPECT_NEAR(angular_H(angular_G(z, p), p), z, 1e-12 * std::max(1.0, z));
    }
    for (double z = 1e-3; z < 1e6; z *= 1.7) {
      const double g = angular_G(z, p);
      EXPECT_LT(g, prev);
      const double env = std::pow(1.0 + z, -1.0 / nu);
      EXPECT_LE(p.envelope_lower() * env, g * (1 + 1e-14));
      EXPECT_GE(p.envelope_upper() * env, g * (1 - 1e-14));
      prev = g;
    }
  }
  EXPECT_THROW(angular_G(-1.0, SoftPotentialParams(-0.5, 0.7)), std::domain_error);
  EXPECT_THROW(angular_H(2.0, SoftPotentialParams(-0.5, 0.7)), std::domain_error);
}

TEST(Deviation, FrozenValue) {
  const SoftPotentialParams p(-0.5, 0.7);
  const Vec3 c = deviation_c({1.0, -2.0, 0.5}, {0.2, 0.3, -1.0}, 0.7, 1.1, p);
  EXPECT_NEAR(c.x, -0.67461548338697256, 1e-14);
  EXPECT_NEAR(c.y, 0.18654234161776042, 1e-14);
  EXPECT_NEAR(c.z, 0.27045856201452449, 1e-14);
}

TEST(Deviation, MagnitudeAtUnitNu05) {
  const SoftPotentialParams half(-0.25, 0.5);
  // |x| = 1, so theta = G(1) and |c| = sin(G(1)/2).
  const Vec3 c = deviation_c({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, 0.3, half);
  EXPECT_NEAR(norm(c), 0.29248382657407400, 1e-14);
}

TEST(Deviation, MagnitudeIdentityProperty) {
  CounterRng rng(11, 0);
  for (int s = 0; s < 10000; ++s) {
    const Vec3 v = random_vec(rng, 10.0);
    const Vec3 vs = random_vec(rng, 10.0);
    const double theta = kPi * uniform01(rng);
    const double phi = 2 * kPi * uniform01(rng);
    const double expected = std::sin(0.5 * theta) * norm(v - vs);
    EXPECT_NEAR(norm(deviation_a(v, vs, theta, phi)), expected, 1e-12);
  }
}

TEST(Deviation, ZeroCases) {
  const SoftPotentialParams p(-0.5, 0.7);
  const Vec3 v{1, 2, 3};
  EXPECT_EQ(deviation_c(v, v, 0.5, 1.0, p), Vec3{});
  EXPECT_EQ(deviation_c(v, {0, 0, 0}, 5.0001, 1.0, p, CutoffLevel(5.0)), Vec3{});
  EXPECT_NE(deviation_c(v, {0, 0, 0}, 5.0, 1.0, p, CutoffLevel(5.0)), Vec3{});
  EXPECT_THROW(deviation_c(v, {0, 0, 0}, -1.0, 1.0, p), std::domain_error);
}

TEST(Tanaka, PhaseAlignmentBoundProperty) {
  CounterRng rng(12, 0);
  for (int s = 0; s < 3000; ++s) {
    const Vec3 x = random_vec(rng, 3.0);
    const Vec3 y = (s % 3 == 0) ? x + 1e-4 * random_vec(rng, 1.0) : random_vec(rng, 3.0);
    const double phi0 = tanaka_phi0(x, y);
    ASSERT_GE(phi0, 0.0);
    ASSERT_LT(phi0, 2 * kPi);
    const Frame fx = orthonormal_frame(x);
    const Frame fy = orthonormal_frame(y);
    for (int k = 0; k < 64; ++k) {
      const double phi = 2 * kPi * k / 64;
      EXPECT_LE(norm(gamma_vec(fx, phi) - gamma_vec(fy, phi + phi0)), norm(x - y) + 1e-10);
    }
  }
}

TEST(Tanaka, IdenticalInputsGiveZeroPhase) {
  const Vec3 x{0.3, -1.0, 2.0};
  EXPECT_NEAR(std::min(tanaka_phi0(x, x), 2 * kPi - tanaka_phi0(x, x)), 0.0, 1e-15);
  EXPECT_THROW(tanaka_phi0(x, Vec3{}), std::domain_error);
}

TEST(AngularMoments, FrozenValues) {
  const SoftPotentialParams p(-0.5, 0.7);
  const auto m = angular_moments(2.0, CutoffLevel(5.0), p);
  EXPECT_NEAR(m.phi_k, 1.3845458956539405, 1e-8);
  EXPECT_NEAR(m.psi_k, 0.03394765139610569, 1e-8);
  EXPECT_NEAR(angular_moment_total(2.0, p), 1.4184935470500461, 1e-8);
}

TEST(AngularMoments, TotalIndependentOfCutoff) {
  const SoftPotentialParams p(-0.3, 0.6);
  for (double x : {0.1, 1.0, 7.5}) {
    const double total = angular_moment_total(x, p);
    double prev_psi = INFINITY;
    for (double k : {0.0, 1.0, 3.0, 30.0, 300.0}) {
      const auto m = angular_moments(x, k, p);
      EXPECT_NEAR(m.phi_k + m.psi_k, total, 1e-8 * total);
      EXPECT_LE(m.psi_k, prev_psi);
      prev_psi = m.psi_k;
    }
  }
}
