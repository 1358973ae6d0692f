#include "nanbu/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nanbu::metrics {

Assignment solve_assignment(std::span<const double> costs, std::size_t n) {
  if (costs.size() != n * n) {
    throw std::domain_error("solve_assignment: cost matrix is not n x n");
  }
  Assignment result;
  if (n == 0) {
    return result;
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = 0;
  // 1-based columns; column 0 is the virtual root of each augmenting tree.
  std::vector<double> row_pot(n + 1, 0.0);
  std::vector<double> col_pot(n + 1, 0.0);
  std::vector<std::size_t> col_owner(n + 1, kNone);  // row (1-based) matched to column
  std::vector<std::size_t> parent(n + 1, 0);
  std::vector<double> slack(n + 1);
  std::vector<char> visited(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t col = 0;
    std::fill(slack.begin(), slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[col] = 1;
      const std::size_t r = col_owner[col];
      const double* row_costs = costs.data() + (r - 1) * n;
      const double ur = row_pot[r];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (visited[j]) {
          continue;
        }
        const double reduced = row_costs[j - 1] - ur - col_pot[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          parent[j] = col;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          row_pot[col_owner[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col = next;
    } while (col_owner[col] != kNone);
    // Flip the augmenting path back to the root.
    do {
      const std::size_t prev = parent[col];
      col_owner[col] = col_owner[prev];
      col = prev;
    } while (col != 0);
  }

  result.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    result.row_to_col[col_owner[j] - 1] = j - 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    result.cost += costs[i * n + result.row_to_col[i]];
  }
  return result;
}

}  // namespace nanbu::metrics
