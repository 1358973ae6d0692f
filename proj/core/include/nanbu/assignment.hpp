#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nanbu::metrics {

struct Assignment {
  std::vector<std::size_t> row_to_col;
  /// sum_i cost(i, row_to_col[i]), accumulated in row order.
  double cost = 0.0;
};

/// Exact minimum-cost perfect matching on a dense n x n row-major cost matrix
/// by shortest augmenting paths with dual potentials (Jonker-Volgenant style).
/// Ties are broken towards the lowest column index, so the result is
/// deterministic. O(n^3) worst case.
Assignment solve_assignment(std::span<const double> costs, std::size_t n);

}  // namespace nanbu::metrics
