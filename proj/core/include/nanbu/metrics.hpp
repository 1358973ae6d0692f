#pragma once

#include <cstddef>
#include <vector>

#include "nanbu/vec3.hpp"

namespace nanbu::metrics {

/// Point cloud with uniform weights 1/N. Never empty; all points finite.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Vec3> points_;
};

/// Exact W2^2 between equal-size clouds: the optimal assignment's mean
/// squared matching cost. Throws std::domain_error on a size mismatch.
double wasserstein2_squared(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
double wasserstein2(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// m_q = N^-1 sum |v_i|^q, q > 0.
double moment(const EmpiricalMeasure& m, double q);

struct ConservedStats {
  Vec3 momentum;
  double energy = 0.0;
};
ConservedStats conserved_stats(const EmpiricalMeasure& m);

}  // namespace nanbu::metrics
