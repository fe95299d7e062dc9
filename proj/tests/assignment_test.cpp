#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "lgtrack/assignment.hpp"
#include "lgtrack/errors.hpp"
#include "oracles.hpp"

using namespace lgtrack;

namespace {

void expect_consistent(const AssignmentResult& r, int rows, int cols) {
  std::set<int> rs, cs;
  for (auto [i, j] : r.matches) {
    EXPECT_TRUE(rs.insert(i).second);
    EXPECT_TRUE(cs.insert(j).second);
  }
  for (int i : r.unmatched_rows) EXPECT_TRUE(rs.insert(i).second);
  for (int j : r.unmatched_cols) EXPECT_TRUE(cs.insert(j).second);
  EXPECT_EQ(static_cast<int>(rs.size()), rows);
  EXPECT_EQ(static_cast<int>(cs.size()), cols);
}

}  // namespace

TEST(AssignmentTest, TwoByTwo) {
  CostMatrix c(2, 2);
  c << 1, 2, 2, 4;
  const auto r = solve_assignment(c);
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0], std::make_pair(0, 1));
  EXPECT_EQ(r.matches[1], std::make_pair(1, 0));
  EXPECT_DOUBLE_EQ(r.total_cost(c), 4.0);
}

TEST(AssignmentTest, EmptyInputs) {
  const auto r0 = solve_assignment(CostMatrix(0, 3));
  EXPECT_TRUE(r0.matches.empty());
  EXPECT_EQ(r0.unmatched_cols.size(), 3u);
  const auto r1 = solve_assignment(CostMatrix(2, 0));
  EXPECT_EQ(r1.unmatched_rows.size(), 2u);
}

TEST(AssignmentTest, MaxCostDemotesPairs) {
  CostMatrix c(2, 2);
  c << 0.1, 5, 5, 3;
  const auto r = solve_assignment(c, 1.0);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], std::make_pair(0, 0));
  EXPECT_EQ(r.unmatched_rows, std::vector<int>{1});
  EXPECT_EQ(r.unmatched_cols, std::vector<int>{1});
}

TEST(AssignmentTest, MatchesBruteForceOnRandomRectangles) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> ints(0, 9);
  std::uniform_real_distribution<double> reals(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const int rows = dim(rng), cols = dim(rng);
    CostMatrix c(rows, cols);
    const bool integral = t % 2 == 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) c(i, j) = integral ? ints(rng) : reals(rng);
    const auto r = solve_assignment(c);
    expect_consistent(r, rows, cols);
    EXPECT_EQ(static_cast<int>(r.matches.size()), std::min(rows, cols));
    EXPECT_EQ(r.total_cost(c), oracle::brute_force_min_cost(c)) << c;
  }
}

TEST(AssignmentTest, ResultSortedByRow) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  CostMatrix c(5, 8);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 8; ++j) c(i, j) = u(rng);
  const auto r = solve_assignment(c);
  for (std::size_t k = 1; k < r.matches.size(); ++k) EXPECT_LT(r.matches[k - 1].first, r.matches[k].first);
}

TEST(AssignmentTest, BlockedEntriesAreNeverMatched) {
  const double big = 1e12;
  CostMatrix c(2, 2);
  c << 1, big, big, big;
  const auto r = solve_assignment(c, 10.0);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], std::make_pair(0, 0));
}

TEST(AssignmentTest, RejectsNonFiniteCosts) {
  CostMatrix c(2, 2);
  c << 1, std::numeric_limits<double>::infinity(), 2, 3;
  EXPECT_THROW(solve_assignment(c), InvalidArgument);
  c(0, 1) = std::nan("");
  EXPECT_THROW(solve_assignment(c), InvalidArgument);
}

TEST(AssignmentTest, LargeSquareIsFast) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  CostMatrix c(200, 200);
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) c(i, j) = u(rng);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = solve_assignment(c);
  const auto dt = std::chrono::steady_clock::now() - t0;
  EXPECT_EQ(r.matches.size(), 200u);
  EXPECT_LT(std::chrono::duration<double>(dt).count(), 0.1);
}
