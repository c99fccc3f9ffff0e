#include "vidflux/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vidflux {

namespace {

// Square-matrix Kuhn-Munkres with potentials, O(n^3). 1-based internally,
// column 0 is the virtual root.
std::vector<int> solve_square(const std::vector<std::vector<double>>& cost, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j]) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Assignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(cost.size());
  const int n = m == 0 ? 0 : static_cast<int>(cost[0].size());
  Assignment result;
  if (m == 0 || n == 0) return result;

  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("cost matrix rows have unequal lengths");
    }
    for (double c : row) {
      if (!std::isfinite(c)) throw std::invalid_argument("cost entries must be finite");
    }
  }

  // Pad to square with zero-cost dummies; dummy pairs are dropped afterwards.
  const int dim = std::max(m, n);
  std::vector<std::vector<double>> padded(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) padded[i][j] = cost[i][j];
  }

  std::vector<int> row_to_col = solve_square(padded, dim);
  for (int i = 0; i < m; ++i) {
    int j = row_to_col[i];
    if (j >= 0 && j < n) {
      result.pairs.emplace_back(i, j);
      result.total_cost += cost[i][j];
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

}  // namespace vidflux
