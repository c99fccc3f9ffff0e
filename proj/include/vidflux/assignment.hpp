#pragma once

#include <utility>
#include <vector>

namespace vidflux {

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total_cost = 0.0;
};

// Minimum-total-cost one-to-one assignment of min(m, n) pairs for an m x n
// cost matrix (shortest augmenting path / Jonker-Volgenant). Entries must be
// finite; encode forbidden pairs with a large sentinel cost. Ties are
// resolved deterministically by scanning rows and columns in ascending order.
Assignment solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace vidflux
