#include "nanbu/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nanbu/assignment.hpp"

namespace nanbu::metrics {

EmpiricalMeasure::EmpiricalMeasure(std::vector<Vec3> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::domain_error("EmpiricalMeasure: no points");
  }
  for (const Vec3& p : points_) {
    if (!is_finite(p)) {
      throw std::domain_error("EmpiricalMeasure: non-finite point");
    }
  }
}

double wasserstein2_squared(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("wasserstein2: clouds differ in size (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  std::vector<double> costs(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 ai = a.points()[i];
    double* row = costs.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = norm2(ai - b.points()[j]);
    }
  }
  const Assignment match = solve_assignment(costs, n);
  return match.cost / static_cast<double>(n);
}

double wasserstein2(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  return std::sqrt(wasserstein2_squared(a, b));
}

double moment(const EmpiricalMeasure& m, double q) {
  if (!(q > 0.0)) {
    throw std::domain_error("moment: q must be positive");
  }
  double sum = 0.0;
  if (q == 2.0) {
    for (const Vec3& p : m.points()) {
      sum += norm2(p);
    }
  } else {
    for (const Vec3& p : m.points()) {
      sum += std::pow(norm2(p), 0.5 * q);
    }
  }
  return sum * (1.0 / static_cast<double>(m.size()));
}

ConservedStats conserved_stats(const EmpiricalMeasure& m) {
  ConservedStats s;
  for (const Vec3& p : m.points()) {
    s.momentum += p;
    s.energy += norm2(p);
  }
  const double inv = 1.0 / static_cast<double>(m.size());
  s.momentum *= inv;
  s.energy *= inv;
  return s;
}

}  // namespace nanbu::metrics
