#include <doctest.h>

#include <limits>

#include "oracles.hpp"
#include "vidflux/assignment.hpp"

using namespace vidflux;

TEST_CASE("assignment: diagonal zeros give the identity") {
  std::vector<std::vector<double>> cost = {
      {0, 5, 5}, {5, 0, 5}, {5, 5, 0}};
  auto a = solve_assignment(cost);
  REQUIRE(a.pairs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.pairs[i].first == i);
    CHECK(a.pairs[i].second == i);
  }
  CHECK(a.total_cost == 0.0);
}

TEST_CASE("assignment: 2x2 hand case") {
  auto a = solve_assignment({{1, 2}, {2, 1}});
  REQUIRE(a.pairs.size() == 2);
  CHECK(a.pairs[0] == std::pair<int, int>(0, 0));
  CHECK(a.pairs[1] == std::pair<int, int>(1, 1));
  CHECK(a.total_cost == doctest::Approx(2.0));
}

TEST_CASE("assignment: empty and degenerate shapes") {
  CHECK(solve_assignment({}).pairs.empty());
  auto one = solve_assignment({{3.5}});
  REQUIRE(one.pairs.size() == 1);
  CHECK(one.total_cost == doctest::Approx(3.5));
  CHECK_THROWS_AS(solve_assignment({{1.0, 2.0}, {1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(solve_assignment({{std::numeric_limits<double>::infinity()}}),
                  std::invalid_argument);
}

TEST_CASE("assignment: rectangular matrices assign min(m,n) pairs") {
  auto wide = solve_assignment({{5, 1, 9, 2}, {4, 6, 1, 8}});
  CHECK(wide.pairs.size() == 2);
  CHECK(wide.total_cost == doctest::Approx(2.0));  // (0,1)+(1,2)

  auto tall = solve_assignment({{5, 4}, {1, 6}, {9, 1}, {2, 8}});
  CHECK(tall.pairs.size() == 2);
  CHECK(tall.total_cost == doctest::Approx(2.0));  // (1,0)+(2,1)
}

TEST_CASE("assignment: random matrices equal the brute-force optimum") {
  oracles::TestRng rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = rng.uniform_int(1, 6);
    const int n = rng.uniform_int(1, 6);
    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (auto& row : cost) {
      for (auto& c : row) c = rng.uniform(0.0, 10.0);
    }
    auto got = solve_assignment(cost);
    CHECK(got.pairs.size() == static_cast<std::size_t>(std::min(m, n)));
    CHECK(got.total_cost ==
          doctest::Approx(oracles::brute_force_assignment_cost(cost)).epsilon(1e-9));
  }
}

TEST_CASE("assignment: never worse than greedy row-by-row") {
  oracles::TestRng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 7);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (auto& c : row) c = rng.uniform(0.0, 1.0);
    }
    // greedy: each row takes its cheapest unused column
    std::vector<char> used(n, 0);
    double greedy = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = -1;
      for (int j = 0; j < n; ++j) {
        if (!used[j] && (best < 0 || cost[i][j] < cost[i][best])) best = j;
      }
      used[best] = 1;
      greedy += cost[i][best];
    }
    CHECK(solve_assignment(cost).total_cost <= greedy + 1e-12);
  }
}

TEST_CASE("assignment: deterministic across repeated runs") {
  oracles::TestRng rng(63);
  std::vector<std::vector<double>> cost(5, std::vector<double>(5));
  for (auto& row : cost) {
    for (auto& c : row) c = rng.uniform(0.0, 1.0);
  }
  auto first = solve_assignment(cost);
  for (int i = 0; i < 10; ++i) {
    auto again = solve_assignment(cost);
    CHECK(again.pairs == first.pairs);
    CHECK(again.total_cost == first.total_cost);
  }
}
