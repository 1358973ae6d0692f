#pragma once

#include <optional>
#include <utility>

#include "nanbu/vec3.hpp"

/// Deterministic collision mathematics for the truncated Nanbu system with a
/// moderately soft potential: angular law, its tail H and inverse G, the
/// azimuthal frame, deviation vectors and the phase alignment used by coupled
/// systems. Everything here is a pure function.
namespace nanbu::kernel {

/// Soft-potential exponents. The angular law is beta(theta) = theta^(-1-nu)
/// on (0, pi/2] and zero beyond, so H and G have closed forms.
class SoftPotentialParams {
 public:
  /// Throws std::domain_error unless gamma in (-1,0), nu in (0,1), gamma+nu>0.
  SoftPotentialParams(double gamma, double nu);

  double gamma() const { return gamma_; }
  double nu() const { return nu_; }

  /// beta(theta); zero on (pi/2, pi].
  double beta(double theta) const;

  /// Envelope constants with c2 (1+z)^(-1/nu) <= G(z) <= c3 (1+z)^(-1/nu).
  double envelope_lower() const;
  double envelope_upper() const;

  friend bool operator==(const SoftPotentialParams&, const SoftPotentialParams&) = default;

 private:
  double gamma_;
  double nu_;
  double half_pi_pow_;  // (pi/2)^(-nu)
};

/// Truncation level K >= 1 of the z-parameterised jump measure.
class CutoffLevel {
 public:
  explicit CutoffLevel(double k);
  double k() const { return k_; }
  friend bool operator==(const CutoffLevel&, const CutoffLevel&) = default;
  friend auto operator<=>(const CutoffLevel&, const CutoffLevel&) = default;

 private:
  double k_;
};

/// The pair (I(x), J(x)): orthogonal to x and to each other, each of norm |x|.
struct Frame {
  Vec3 i_vec;
  Vec3 j_vec;
};

/// Deterministic frame: cross x with the basis vector along its smallest
/// |component| (lowest index on ties), scale to |x|, then J = x/|x| ^ I.
Frame orthonormal_frame(const Vec3& x);

/// Gamma(x, phi) = cos(phi) I(x) + sin(phi) J(x).
Vec3 gamma_vec(const Vec3& x, double phi);
Vec3 gamma_vec(const Frame& frame, double phi);

/// H(theta) = int_theta^{pi/2} beta. Domain (0, pi/2].
double angular_H(double theta, const SoftPotentialParams& params);

/// G = H^{-1}, valued in (0, pi/2]. Domain z >= 0.
double angular_G(double z, const SoftPotentialParams& params);

/// a(v, v*, theta, phi) = v'(v, v*, theta, phi) - v.
Vec3 deviation_a(const Vec3& v, const Vec3& v_star, double theta, double phi);

/// c(v, v*, z, phi) = a(v, v*, G(z / |v - v*|^gamma), phi), multiplied by
/// 1{z <= K} when a cutoff is given. Zero when v == v*.
Vec3 deviation_c(const Vec3& v, const Vec3& v_star, double z, double phi,
                 const SoftPotentialParams& params,
                 std::optional<CutoffLevel> cutoff = std::nullopt);

/// Phase shift phi0 in [0, 2pi) with
/// |Gamma(X, phi) - Gamma(Y, phi + phi0)| <= |X - Y| for every phi.
double tanaka_phi0(const Vec3& x_vec, const Vec3& y_vec);

/// Phi_K(x) = pi int_0^K (1 - cos G(z/x^gamma)) dz and the complementary tail
/// Psi_K(x) = pi int_K^inf (...) dz.
struct AngularMoments {
  double phi_k;
  double psi_k;
};
AngularMoments angular_moments(double x, CutoffLevel cutoff, const SoftPotentialParams& params);

/// Same, for any truncation k >= 0 (k below 1 is only meaningful for limits).
AngularMoments angular_moments(double x, double k, const SoftPotentialParams& params);

/// Phi_K + Psi_K, independent of K: pi x^gamma int_0^{pi/2} (1-cos t) beta(t) dt.
double angular_moment_total(double x, const SoftPotentialParams& params);

}  // namespace nanbu::kernel
