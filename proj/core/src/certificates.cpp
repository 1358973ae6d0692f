#include "nanbu/certificates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nanbu/quadrature.hpp"
#include "nanbu/rng.hpp"

namespace nanbu::kernel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// c is a degree-1 trigonometric polynomial in phi and |c|^2 is constant in
// phi, so an 8-point periodic trapezoid integrates both exactly.
constexpr int kPhiPoints = 8;

Vec3 uniform_box(CounterRng& rng, double half_width) {
  return {half_width * (2.0 * uniform01(rng) - 1.0), half_width * (2.0 * uniform01(rng) - 1.0),
          half_width * (2.0 * uniform01(rng) - 1.0)};
}

Vec3 unit_direction(CounterRng& rng) {
  for (;;) {
    const auto a = normal_pair(rng);
    const auto b = normal_pair(rng);
    const Vec3 d{a[0], a[1], b[0]};
    const double len = norm(d);
    if (len > 1e-12) {
      return (1.0 / len) * d;
    }
  }
}

double log_uniform(CounterRng& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, uniform01(rng));
}

// Relative change of the running maximum between the first half of the
// sample and the full sample.
struct MaxStability {
  double half = 0.0;
  double full = 0.0;
  bool finite = true;

  void add(std::size_t index, std::size_t total, double ratio) {
    if (!std::isfinite(ratio)) {
      finite = false;
      return;
    }
    full = std::max(full, ratio);
    if (index < total / 2) {
      half = std::max(half, ratio);
    }
  }
  double relative_change() const { return full > 0.0 ? (full - half) / full : 0.0; }
};

Vec3 phi_integral(const Vec3& v, const Vec3& v_star, double z, const SoftPotentialParams& params) {
  Vec3 sum;
  for (int k = 0; k < kPhiPoints; ++k) {
    sum += deviation_c(v, v_star, z, kTwoPi * k / kPhiPoints, params);
  }
  return (kTwoPi / kPhiPoints) * sum;
}

double phi_energy(const Vec3& v, const Vec3& v_star, double z, const SoftPotentialParams& params) {
  double sum = 0.0;
  for (int k = 0; k < kPhiPoints; ++k) {
    sum += norm2(deviation_c(v, v_star, z, kTwoPi * k / kPhiPoints, params));
  }
  return (kTwoPi / kPhiPoints) * sum;
}

// Integrate over z in [0, K], or [0, inf) when there is no cutoff; the
// natural z-scale of c is |v - v*|^gamma.
double z_integral(const std::function<double(double)>& f, std::optional<CutoffLevel> cutoff,
                  double z_scale) {
  if (cutoff) {
    return quad::adaptive_simpson(f, 0.0, cutoff->k());
  }
  return quad::semi_infinite(f, 0.0, z_scale);
}

std::string format_stability(const MaxStability& s) {
  std::ostringstream os;
  os.precision(6);
  os << "max(half)=" << s.half << " max(full)=" << s.full;
  return os.str();
}

}  // namespace

double tanaka_gap(const Vec3& x_vec, const Vec3& y_vec, int grid_points) {
  const double phi0 = tanaka_phi0(x_vec, y_vec);
  const Frame fx = orthonormal_frame(x_vec);
  const Frame fy = orthonormal_frame(y_vec);
  const double bound = norm(x_vec - y_vec);
  double worst = -bound;
  for (int k = 0; k < grid_points; ++k) {
    const double phi = kTwoPi * k / grid_points;
    const double d = norm(gamma_vec(fx, phi) - gamma_vec(fy, phi + phi0));
    worst = std::max(worst, d - bound);
  }
  return worst;
}

double g_difference_ratio(double x, double y, const SoftPotentialParams& params) {
  if (!(x > 0.0 && y > 0.0) || x == y) {
    throw std::domain_error("g_difference_ratio: need distinct positive x, y");
  }
  const double integral = quad::semi_infinite(
      [&](double z) {
        const double d = angular_G(z / x, params) - angular_G(z / y, params);
        return d * d;
      },
      0.0, 0.5 * (x + y));
  return integral / ((x - y) * (x - y) / (x + y));
}

double deviation_energy_ratio(const Vec3& v, const Vec3& v_star, std::optional<CutoffLevel> cutoff,
                              const SoftPotentialParams& params) {
  const double x = norm(v - v_star);
  if (!(x > 0.0)) {
    throw std::domain_error("deviation_energy_ratio: v == v_star");
  }
  const double integral =
      z_integral([&](double z) { return phi_energy(v, v_star, z, params); }, cutoff,
                 std::pow(x, params.gamma()));
  return integral / std::pow(x, params.gamma() + 2.0);
}

double deviation_drift_ratio(const Vec3& v, const Vec3& v_star, std::optional<CutoffLevel> cutoff,
                             const SoftPotentialParams& params) {
  const double x = norm(v - v_star);
  if (!(x > 0.0)) {
    throw std::domain_error("deviation_drift_ratio: v == v_star");
  }
  const double integral =
      z_integral([&](double z) { return norm(phi_integral(v, v_star, z, params)); }, cutoff,
                 std::pow(x, params.gamma()));
  return integral / std::pow(x, params.gamma() + 1.0);
}

Vec3 integrated_drift(const Vec3& v, const Vec3& v_star, CutoffLevel cutoff,
                      const SoftPotentialParams& params) {
  Vec3 out;
  for (int axis = 0; axis < 3; ++axis) {
    const double value = quad::adaptive_simpson(
        [&](double z) { return phi_integral(v, v_star, z, params)[axis]; }, 0.0, cutoff.k());
    (axis == 0 ? out.x : (axis == 1 ? out.y : out.z)) = value;
  }
  return out;
}

PairBalance symmetrized_pair_balance(const Vec3& v_i, const Vec3& v_j, double theta) {
  PairBalance total{0.0, {}};
  const double h = kTwoPi / kPhiPoints;
  for (int k = 0; k < kPhiPoints; ++k) {
    const double phi = h * k;
    const Vec3 a_ij = deviation_a(v_i, v_j, theta, phi);
    const Vec3 a_ji = deviation_a(v_j, v_i, theta, phi);
    total.energy += h * (2.0 * dot(v_i, a_ij) + norm2(a_ij) + 2.0 * dot(v_j, a_ji) + norm2(a_ji));
    total.momentum += h * (a_ij + a_ji);
  }
  return total;
}

CertificateResult certify_deviation_magnitude(const CertificateOptions& opts) {
  CounterRng rng(opts.seed, 1);
  double worst = 0.0;
  for (std::size_t s = 0; s < opts.magnitude_samples; ++s) {
    const Vec3 v = uniform_box(rng, 10.0);
    const Vec3 vs = uniform_box(rng, 10.0);
    const double theta = std::numbers::pi * (1.0 - uniform01(rng));
    const double phi = kTwoPi * uniform01(rng);
    // sqrt((1 - cos t) / 2) == sin(t / 2) on [0, pi]; the sine form avoids the
    // cancellation of 1 - cos t at small angles.
    const double expected = std::sin(0.5 * theta) * norm(v - vs);
    worst = std::max(worst, std::abs(norm(deviation_a(v, vs, theta, phi)) - expected));
  }
  return {"deviation_magnitude", opts.magnitude_samples, worst, 1e-12, worst < 1e-12,
          "max | |a| - sqrt((1-cos t)/2)|v-v*| |"};
}

CertificateResult certify_angular_map(const CertificateOptions& opts) {
  const std::array<double, 6> zs{0.0, 0.1, 1.0, 10.0, 1e4, 1e6};
  std::vector<SoftPotentialParams> param_set{SoftPotentialParams(opts.gamma, opts.nu)};
  for (double nu : {0.1, 0.3, 0.5, 0.9}) {
    param_set.emplace_back(-0.5 * nu, nu);
  }
  double worst_roundtrip = 0.0;
  double worst_envelope = 0.0;
  bool g0_exact = true;
  for (const auto& params : param_set) {
    g0_exact = g0_exact && angular_G(0.0, params) == 0.5 * std::numbers::pi;
    for (double z : zs) {
      const double err = std::abs(angular_H(angular_G(z, params), params) - z);
      worst_roundtrip = std::max(worst_roundtrip, err / std::max(1.0, z));
    }
    const double c2 = params.envelope_lower();
    const double c3 = params.envelope_upper();
    for (int k = 0; k <= 2400; ++k) {
      const double z = k == 0 ? 0.0 : std::pow(10.0, -6.0 + 12.0 * (k - 1) / 2399.0);
      const double g = angular_G(z, params);
      const double env = std::pow(1.0 + z, -1.0 / params.nu());
      // relative violations; negative means the bound holds
      worst_envelope = std::max(worst_envelope, (c2 * env - g) / g);
      worst_envelope = std::max(worst_envelope, (g - c3 * env) / g);
    }
  }
  const bool ok = worst_roundtrip <= 1e-12 && g0_exact && worst_envelope <= 1e-12;
  std::ostringstream detail;
  detail << "roundtrip=" << worst_roundtrip << " envelope_violation=" << worst_envelope
         << " G(0)==pi/2:" << (g0_exact ? "yes" : "no");
  return {"angular_map", zs.size() * param_set.size(), worst_roundtrip, 1e-12, ok, detail.str()};
}

CertificateResult certify_tanaka(const CertificateOptions& opts) {
  CounterRng rng(opts.seed, 2);
  double worst = -1.0;
  for (std::size_t s = 0; s < opts.tanaka_samples; ++s) {
    const double scale = log_uniform(rng, 1e-3, 1e3);
    Vec3 x = scale * unit_direction(rng);
    Vec3 y;
    switch (s % 5) {
      case 0:
        y = log_uniform(rng, 1e-3, 1e3) * unit_direction(rng);
        break;
      case 1:
        y = x + (scale * log_uniform(rng, 1e-8, 1.0)) * unit_direction(rng);
        break;
      case 2:
        y = -x + (scale * log_uniform(rng, 1e-8, 1.0)) * unit_direction(rng);
        break;
      case 3: {
        // Near the ties that switch the frame's reference axis.
        const double t = 1e-9 * (2.0 * uniform01(rng) - 1.0);
        x = scale * Vec3{1.0, 1.0 + t, -1.0 + t};
        y = x + (scale * log_uniform(rng, 1e-6, 1.0)) * unit_direction(rng);
        break;
      }
      default:
        y = (log_uniform(rng, 1e-3, 1e3) / scale) * x;
        break;
    }
    if (norm2(y) == 0.0) {
      continue;
    }
    // Scale-free comparison: the tolerance is absolute, as stated.
    worst = std::max(worst, tanaka_gap(x, y, opts.tanaka_grid));
  }
  return {"tanaka_phase_alignment", opts.tanaka_samples, worst, 1e-10, worst <= 1e-10,
          "max_phi |Gamma(X,phi)-Gamma(Y,phi+phi0)| - |X-Y|"};
}

CertificateResult certify_g_difference(const CertificateOptions& opts) {
  const SoftPotentialParams params(opts.gamma, opts.nu);
  CounterRng rng(opts.seed, 3);
  MaxStability stat;
  const std::size_t n = opts.quadrature_samples;
  for (std::size_t s = 0; s < n; ++s) {
    const double x = 10.0 * (1.0 - uniform01(rng));
    const double y = 10.0 * (1.0 - uniform01(rng));
    if (x == y) {
      continue;
    }
    stat.add(s, n, g_difference_ratio(x, y, params));
  }
  const double change = stat.relative_change();
  return {"g_difference_integral", n, change, 0.10, stat.finite && change <= 0.10,
          format_stability(stat)};
}

namespace {

template <class Ratio>
CertificateResult certify_deviation_family(const CertificateOptions& opts, const char* name,
                                           std::uint64_t stream, Ratio ratio) {
  const SoftPotentialParams params(opts.gamma, opts.nu);
  const std::array<std::optional<CutoffLevel>, 4> cutoffs{CutoffLevel(1.0), CutoffLevel(10.0),
                                                          CutoffLevel(100.0), std::nullopt};
  const std::size_t n = opts.quadrature_samples;
  double worst_change = 0.0;
  bool finite = true;
  std::ostringstream detail;
  detail.precision(6);
  for (const auto& cutoff : cutoffs) {
    CounterRng rng(opts.seed, stream);  // same inputs for every K
    MaxStability stat;
    for (std::size_t s = 0; s < n; ++s) {
      const Vec3 v = uniform_box(rng, 5.0);
      const Vec3 vs = v + log_uniform(rng, 1e-2, 1e2) * unit_direction(rng);
      stat.add(s, n, ratio(v, vs, cutoff, params));
    }
    finite = finite && stat.finite;
    worst_change = std::max(worst_change, stat.relative_change());
    detail << "K=" << (cutoff ? std::to_string(static_cast<int>(cutoff->k())) : std::string("inf"))
           << " " << format_stability(stat) << "; ";
  }
  return {name, n * cutoffs.size(), worst_change, 0.10, finite && worst_change <= 0.10,
          detail.str()};
}

}  // namespace

CertificateResult certify_deviation_energy(const CertificateOptions& opts) {
  return certify_deviation_family(opts, "deviation_energy", 4,
                                  [](const Vec3& v, const Vec3& vs, auto cutoff, const auto& p) {
                                    return deviation_energy_ratio(v, vs, cutoff, p);
                                  });
}

CertificateResult certify_deviation_drift(const CertificateOptions& opts) {
  return certify_deviation_family(opts, "deviation_drift", 5,
                                  [](const Vec3& v, const Vec3& vs, auto cutoff, const auto& p) {
                                    return deviation_drift_ratio(v, vs, cutoff, p);
                                  });
}

CertificateResult certify_pair_balance(const CertificateOptions& opts) {
  CounterRng rng(opts.seed, 6);
  double worst = 0.0;
  const std::size_t n = opts.magnitude_samples;
  for (std::size_t s = 0; s < n; ++s) {
    const Vec3 vi = uniform_box(rng, 5.0);
    const Vec3 vj = uniform_box(rng, 5.0);
    const double theta = 0.5 * std::numbers::pi * (1.0 - uniform01(rng));
    const PairBalance b = symmetrized_pair_balance(vi, vj, theta);
    const double scale = std::max(1.0, norm2(vi) + norm2(vj));
    worst = std::max({worst, std::abs(b.energy) / scale, norm(b.momentum) / std::sqrt(scale)});
  }
  return {"pair_balance", n, worst, 1e-10, worst <= 1e-10,
          "phi-integrated energy/momentum change of (i,j)+(j,i)"};
}

std::vector<CertificateResult> run_kernel_certificates(const CertificateOptions& opts) {
  return {certify_deviation_magnitude(opts), certify_angular_map(opts),
          certify_tanaka(opts),              certify_g_difference(opts),
          certify_deviation_energy(opts),    certify_deviation_drift(opts),
          certify_pair_balance(opts)};
}

}  // namespace nanbu::kernel
