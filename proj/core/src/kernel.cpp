#include "nanbu/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nanbu/quadrature.hpp"

namespace nanbu::kernel {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (1 - cos t) without cancellation for small t.
double one_minus_cos(double t) {
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s;
}

}  // namespace

SoftPotentialParams::SoftPotentialParams(double gamma, double nu) : gamma_(gamma), nu_(nu) {
  if (!(gamma > -1.0 && gamma < 0.0)) {
    throw std::domain_error("gamma in (-1,0) violated: gamma=" + std::to_string(gamma));
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    throw std::domain_error("nu in (0,1) violated: nu=" + std::to_string(nu));
  }
  if (!(gamma + nu > 0.0)) {
    throw std::domain_error("gamma+nu>0 violated: gamma+nu=" + std::to_string(gamma + nu));
  }
  half_pi_pow_ = std::pow(kHalfPi, -nu);
}

double SoftPotentialParams::beta(double theta) const {
  if (theta <= 0.0 || theta > std::numbers::pi) {
    throw std::domain_error("beta: theta outside (0, pi]");
  }
  return theta <= kHalfPi ? std::pow(theta, -1.0 - nu_) : 0.0;
}

// G(z)(1+z)^(1/nu) = ((1+z)/(nu z + (pi/2)^-nu))^(1/nu) is monotone in z, so
// its extremes sit at z = 0 (value pi/2) and z -> inf (value nu^(-1/nu)).
double SoftPotentialParams::envelope_lower() const {
  return std::min(kHalfPi, std::pow(nu_, -1.0 / nu_));
}

double SoftPotentialParams::envelope_upper() const {
  return std::max(kHalfPi, std::pow(nu_, -1.0 / nu_));
}

CutoffLevel::CutoffLevel(double k) : k_(k) {
  if (!(k >= 1.0) || !std::isfinite(k)) {
    throw std::domain_error("K>=1 violated: K=" + std::to_string(k));
  }
}

Frame orthonormal_frame(const Vec3& x) {
  const double len = norm(x);
  if (!(len > 0.0)) {
    throw std::domain_error("orthonormal_frame: zero vector");
  }
  const double ax = std::abs(x.x);
  const double ay = std::abs(x.y);
  const double az = std::abs(x.z);
  Vec3 e{1.0, 0.0, 0.0};
  if (ay < ax && ay <= az) {
    e = {0.0, 1.0, 0.0};
  } else if (az < ax && az < ay) {
    e = {0.0, 0.0, 1.0};
  }
  const Vec3 u = cross(x, e);
  const Vec3 i_vec = (len / norm(u)) * u;
  const Vec3 j_vec = cross((1.0 / len) * x, i_vec);
  return {i_vec, j_vec};
}

Vec3 gamma_vec(const Frame& frame, double phi) {
  return std::cos(phi) * frame.i_vec + std::sin(phi) * frame.j_vec;
}

Vec3 gamma_vec(const Vec3& x, double phi) { return gamma_vec(orthonormal_frame(x), phi); }

double angular_H(double theta, const SoftPotentialParams& params) {
  if (!(theta > 0.0 && theta <= kHalfPi)) {
    throw std::domain_error("angular_H: theta outside (0, pi/2]");
  }
  if (theta == kHalfPi) {
    return 0.0;
  }
  return (std::pow(theta, -params.nu()) - std::pow(kHalfPi, -params.nu())) / params.nu();
}

double angular_G(double z, const SoftPotentialParams& params) {
  if (!(z >= 0.0)) {
    throw std::domain_error("angular_G: z < 0");
  }
  if (z == 0.0) {
    return kHalfPi;
  }
  const double nu = params.nu();
  return std::pow(nu * z + std::pow(kHalfPi, -nu), -1.0 / nu);
}

Vec3 deviation_a(const Vec3& v, const Vec3& v_star, double theta, double phi) {
  const Vec3 x = v - v_star;
  if (norm2(x) == 0.0) {
    return {};
  }
  const double s = std::sin(0.5 * theta);
  return -(s * s) * x + (0.5 * std::sin(theta)) * gamma_vec(x, phi);
}

Vec3 deviation_c(const Vec3& v, const Vec3& v_star, double z, double phi,
                 const SoftPotentialParams& params, std::optional<CutoffLevel> cutoff) {
  if (!(z >= 0.0)) {
    throw std::domain_error("deviation_c: z < 0");
  }
  if (cutoff && z > cutoff->k()) {
    return {};
  }
  const Vec3 x = v - v_star;
  const double len2 = norm2(x);
  if (len2 == 0.0) {
    return {};
  }
  // z / |x|^gamma with |x|^(-gamma) = (|x|^2)^(-gamma/2)
  const double theta = angular_G(z * std::pow(len2, -0.5 * params.gamma()), params);
  return deviation_a(v, v_star, theta, phi);
}

double tanaka_phi0(const Vec3& x_vec, const Vec3& y_vec) {
  if (norm2(x_vec) == 0.0 || norm2(y_vec) == 0.0) {
    throw std::domain_error("tanaka_phi0: zero input");
  }
  const Frame fx = orthonormal_frame(x_vec);
  const Frame fy = orthonormal_frame(y_vec);
  const double a = dot(fx.i_vec, fy.i_vec) + dot(fx.j_vec, fy.j_vec);
  const double b = dot(fx.i_vec, fy.j_vec) - dot(fx.j_vec, fy.i_vec);
  double phi0 = std::atan2(b, a);
  if (phi0 < 0.0) {
    phi0 += kTwoPi;
  }
  return phi0 >= kTwoPi ? 0.0 : phi0;
}

AngularMoments angular_moments(double x, double k, const SoftPotentialParams& params) {
  if (!(x > 0.0)) {
    throw std::domain_error("angular_moments: x <= 0");
  }
  if (!(k >= 0.0)) {
    throw std::domain_error("angular_moments: k < 0");
  }
  const double scale = std::pow(x, -params.gamma());  // 1 / x^gamma
  const double phi_k = std::numbers::pi * quad::adaptive_simpson(
                                              [&](double z) {
                                                return one_minus_cos(angular_G(z * scale, params));
                                              },
                                              0.0, k);
  // Tail in the angle variable: z = x^gamma H(t) maps [K, inf) onto
  // (0, G(K / x^gamma)], so no infinite range needs truncating.
  const double nu = params.nu();
  const double t_max = angular_G(k * scale, params);
  const double tail = quad::adaptive_simpson(
      [nu](double t) { return t > 0.0 ? one_minus_cos(t) * std::pow(t, -1.0 - nu) : 0.0; }, 0.0,
      t_max);
  return {phi_k, std::numbers::pi * tail / scale};
}

AngularMoments angular_moments(double x, CutoffLevel cutoff, const SoftPotentialParams& params) {
  return angular_moments(x, cutoff.k(), params);
}

double angular_moment_total(double x, const SoftPotentialParams& params) {
  if (!(x > 0.0)) {
    throw std::domain_error("angular_moment_total: x <= 0");
  }
  const double nu = params.nu();
  const double integral = quad::adaptive_simpson(
      [nu](double t) { return t > 0.0 ? one_minus_cos(t) * std::pow(t, -1.0 - nu) : 0.0; }, 0.0,
      kHalfPi);
  return std::numbers::pi * std::pow(x, params.gamma()) * integral;
}

}  // namespace nanbu::kernel
