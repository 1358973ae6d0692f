#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nanbu/kernel.hpp"
#include "nanbu/vec3.hpp"

/// Numerical certificates for the kernel inequalities. Each ratio divides a
/// quadrature value by the right-hand side of the corresponding bound with
/// its (unknown) constant removed, so a bounded ratio is the certificate.
namespace nanbu::kernel {

/// max over a phi-grid of |Gamma(X,phi) - Gamma(Y,phi+phi0)| - |X - Y|.
double tanaka_gap(const Vec3& x_vec, const Vec3& y_vec, int grid_points = 64);

/// int_0^inf (G(z/x) - G(z/y))^2 dz divided by (x-y)^2/(x+y). Requires x != y.
double g_difference_ratio(double x, double y, const SoftPotentialParams& params);

/// int_0^inf int_0^2pi |c_K|^2 dphi dz divided by |v - v*|^(gamma+2).
/// No cutoff means the untruncated c.
double deviation_energy_ratio(const Vec3& v, const Vec3& v_star, std::optional<CutoffLevel> cutoff,
                              const SoftPotentialParams& params);

/// int_0^inf |int_0^2pi c_K dphi| dz divided by |v - v*|^(gamma+1).
double deviation_drift_ratio(const Vec3& v, const Vec3& v_star, std::optional<CutoffLevel> cutoff,
                             const SoftPotentialParams& params);

/// int_0^K int_0^2pi c dphi dz computed by quadrature of deviation_c.
Vec3 integrated_drift(const Vec3& v, const Vec3& v_star, CutoffLevel cutoff,
                      const SoftPotentialParams& params);

/// phi-integrated energy and momentum change of the ordered pairs (i,j) and
/// (j,i) at a fixed deviation angle; both vanish identically.
struct PairBalance {
  double energy;
  Vec3 momentum;
};
PairBalance symmetrized_pair_balance(const Vec3& v_i, const Vec3& v_j, double theta);

struct CertificateResult {
  std::string name;
  std::size_t samples = 0;
  double value = 0.0;      // the quantity compared against the threshold
  double threshold = 0.0;  // pass iff value <= threshold
  bool passed = false;
  std::string detail;
};

struct CertificateOptions {
  std::uint64_t seed = 20240601;
  std::size_t magnitude_samples = 10'000;
  std::size_t tanaka_samples = 10'000;
  int tanaka_grid = 64;
  std::size_t quadrature_samples = 1'000;
  double gamma = -0.5;
  double nu = 0.7;
};

CertificateResult certify_deviation_magnitude(const CertificateOptions& opts);
CertificateResult certify_angular_map(const CertificateOptions& opts);
CertificateResult certify_tanaka(const CertificateOptions& opts);

/// Stability of the empirical maximum of a ratio: value is the relative change
/// of the maximum when the sample doubles, threshold 10%.
CertificateResult certify_g_difference(const CertificateOptions& opts);
CertificateResult certify_deviation_energy(const CertificateOptions& opts);
CertificateResult certify_deviation_drift(const CertificateOptions& opts);

CertificateResult certify_pair_balance(const CertificateOptions& opts);

std::vector<CertificateResult> run_kernel_certificates(const CertificateOptions& opts);

}  // namespace nanbu::kernel
