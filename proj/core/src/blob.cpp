#include "nanbu/blob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nanbu/errors.hpp"

namespace nanbu::metrics {
namespace {

constexpr std::int64_t kAxisOffset = std::int64_t{1} << 20;
constexpr int kMaxRefine = 64;

std::uint64_t pack(std::int64_t a, std::int64_t b, std::int64_t c) {
  for (std::int64_t k : {a, b, c}) {
    if (k <= -kAxisOffset || k >= kAxisOffset) {
      throw std::domain_error("blob grid: point cloud too wide for the grid resolution");
    }
  }
  return (static_cast<std::uint64_t>(a + kAxisOffset) << 42) |
         (static_cast<std::uint64_t>(b + kAxisOffset) << 21) |
         static_cast<std::uint64_t>(c + kAxisOffset);
}

// Sum over distinct keys of (multiplicity)^p.
double sum_of_powers(std::vector<std::uint64_t>& keys, double p) {
  std::sort(keys.begin(), keys.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) {
      ++j;
    }
    total += std::pow(static_cast<double>(j - i), p);
    i = j;
  }
  return total;
}

}  // namespace

void BlobSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("blob: epsilon in (0,1] violated");
  }
  if (!(p > 1.0 && p < 2.0)) {
    throw std::domain_error("blob: p in (1,2) violated");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("blob: delta in (0,1) violated");
  }
}

double blob_epsilon(std::size_t n, double delta) {
  return std::pow(static_cast<double>(n), -(1.0 - delta) / 3.0);
}

double blob_lp_norm_on_grid(const EmpiricalMeasure& m, const BlobSpec& spec, int refine) {
  spec.validate();
  if (refine < 2) {
    throw std::domain_error("blob_lp_norm: grid_refine must be >= 2");
  }
  const double eps = spec.epsilon;
  const double h = eps / refine;
  const double eps2 = eps * eps;
  std::vector<std::uint64_t> keys;
  keys.reserve(m.size() * static_cast<std::size_t>(4.2 * refine * refine * refine + 64));
  for (const Vec3& v : m.points()) {
    // cell k has center (k + 1/2) h
    auto range = [&](double c) {
      return std::pair{static_cast<std::int64_t>(std::floor((c - eps) / h - 0.5)),
                       static_cast<std::int64_t>(std::ceil((c + eps) / h - 0.5))};
    };
    const auto [x0, x1] = range(v.x);
    const auto [y0, y1] = range(v.y);
    const auto [z0, z1] = range(v.z);
    for (std::int64_t a = x0; a <= x1; ++a) {
      const double dx = (a + 0.5) * h - v.x;
      for (std::int64_t b = y0; b <= y1; ++b) {
        const double dy = (b + 0.5) * h - v.y;
        const double dxy = dx * dx + dy * dy;
        if (dxy > eps2) {
          continue;
        }
        for (std::int64_t c = z0; c <= z1; ++c) {
          const double dz = (c + 0.5) * h - v.z;
          if (dxy + dz * dz <= eps2) {
            keys.push_back(pack(a, b, c));
          }
        }
      }
    }
  }
  // density on a cell = 3/(4 pi eps^3) * count / N
  const double height = 3.0 / (4.0 * std::numbers::pi * eps * eps * eps) /
                        static_cast<double>(m.size());
  const double integral = h * h * h * sum_of_powers(keys, spec.p);
  return height * std::pow(integral, 1.0 / spec.p);
}

double blob_lp_norm(const EmpiricalMeasure& m, const BlobSpec& spec, int grid_refine) {
  if (grid_refine < 2) {
    throw std::domain_error("blob_lp_norm: grid_refine must be >= 2");
  }
  double coarse = blob_lp_norm_on_grid(m, spec, grid_refine);
  std::ostringstream history;
  history << "refine " << grid_refine << ": " << coarse;
  for (int refine = 2 * grid_refine; refine <= kMaxRefine; refine *= 2) {
    const double fine = blob_lp_norm_on_grid(m, spec, refine);
    history << "; refine " << refine << ": " << fine;
    if (std::abs(fine - coarse) <= 0.02 * std::abs(fine)) {
      return fine;
    }
    coarse = fine;
  }
  throw NumericalError("blob_lp_norm: grid refinements did not agree to 2% (" + history.str() +
                       ")");
}

double blob_lp_bound(const EmpiricalMeasure& x_cloud, const EmpiricalMeasure& y_cloud,
                     const BlobSpec& spec) {
  spec.validate();
  if (x_cloud.size() != y_cloud.size()) {
    throw std::domain_error("blob_lp_bound: clouds differ in size");
  }
  const std::size_t n = x_cloud.size();
  const double nd = static_cast<double>(n);
  const double radius = std::pow(nd, spec.delta / 3.0);
  auto check = [&](const EmpiricalMeasure& cloud, const char* name) {
    for (std::size_t i = 0; i < n; ++i) {
      if (norm(cloud.points()[i]) > radius) {
        throw std::domain_error(std::string("blob_lp_bound: ") + name + "[" + std::to_string(i) +
                                "] lies outside B(0, N^(delta/3)) with radius " +
                                std::to_string(radius));
      }
    }
  };
  check(x_cloud, "x");
  check(y_cloud, "y");

  const double eps = spec.epsilon;
  const double p = spec.p;
  const double r = spec.conjugate();
  std::size_t mismatched = 0;
  std::vector<std::uint64_t> cubes;
  cubes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& x = x_cloud.points()[i];
    if (norm(x - y_cloud.points()[i]) > eps) {
      ++mismatched;
    }
    // Every x_i lies in the ball, so its cube meets it.
    cubes.push_back(pack(static_cast<std::int64_t>(std::floor(x.x / eps)),
                         static_cast<std::int64_t>(std::floor(x.y / eps)),
                         static_cast<std::int64_t>(std::floor(x.z / eps))));
  }
  const double first = std::pow(3.0 / (4.0 * std::numbers::pi), 1.0 / r) *
                       static_cast<double>(mismatched) / (nd * std::pow(eps, 3.0 / r));
  const double occupancy = sum_of_powers(cubes, p);
  const double second =
      3375.0 * std::pow(std::pow(nd, -p) * std::pow(eps, -3.0 * (p - 1.0)) * occupancy, 1.0 / p);
  return first + second;
}

}  // namespace nanbu::metrics
