#pragma once

#include <cstddef>

#include "nanbu/metrics.hpp"

namespace nanbu::metrics {

/// Indicator-ball mollifier psi_eps = 3/(4 pi eps^3) 1{|x| <= eps} and the
/// exponents of the L^p diagnostics.
struct BlobSpec {
  double epsilon = 0.1;  // (0, 1]
  double p = 1.4;        // (1, 2)
  double delta = 0.75;   // (0, 1)

  /// Throws std::domain_error on any violated range.
  void validate() const;
  /// Conjugate exponent r = p / (p - 1).
  double conjugate() const { return p / (p - 1.0); }
};

/// eps_N = N^(-(1 - delta)/3).
double blob_epsilon(std::size_t n, double delta);

/// Midpoint-rule L^p norm of (mu * psi_eps) on the origin-anchored grid of
/// cell side eps / refine.
double blob_lp_norm_on_grid(const EmpiricalMeasure& m, const BlobSpec& spec, int refine);

/// L^p norm of the mollified empirical measure. Starting at grid_refine, the
/// grid is halved until two successive values agree to 2%; the finer value is
/// returned. Throws NumericalError when no agreement is reached by refine 64.
double blob_lp_norm(const EmpiricalMeasure& m, const BlobSpec& spec, int grid_refine = 4);

/// Computable cube-occupancy upper bound on ||mu_y * psi_eps||_{L^p}:
///   (3/4pi)^(1/r) #I / (N eps^(3/r))
///   + 3375 (N^-p eps^(-3(p-1)) sum_D #{i : x_i in D}^p)^(1/p),
/// with I = {i : |x_i - y_i| > eps} and D ranging over origin-anchored cubes of
/// side eps meeting B(0, N^(delta/3)). Both clouds must lie in that ball;
/// std::domain_error names the first offending index otherwise.
double blob_lp_bound(const EmpiricalMeasure& x_cloud, const EmpiricalMeasure& y_cloud,
                     const BlobSpec& spec);

}  // namespace nanbu::metrics
