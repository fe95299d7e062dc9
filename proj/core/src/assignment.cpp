#include "lgtrack/assignment.hpp"

#include <algorithm>

#include "lgtrack/errors.hpp"

namespace lgtrack {

namespace {

// Assigns every row of `c` (rows <= cols) to a distinct column. Returns the
// column chosen for each row.
std::vector<int> min_cost_rows(const CostMatrix& c) {
  const int n = static_cast<int>(c.rows());
  const int m = static_cast<int>(c.cols());
  constexpr double inf = std::numeric_limits<double>::infinity();

  // 1-based with a virtual column 0 holding the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (owner[j] != 0) col_of_row[owner[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

double AssignmentResult::total_cost(const CostMatrix& costs) const {
  double total = 0.0;
  for (const auto& [r, c] : matches) total += costs(r, c);
  return total;
}

AssignmentResult solve_assignment(const CostMatrix& costs, double max_cost) {
  const int rows = static_cast<int>(costs.rows());
  const int cols = static_cast<int>(costs.cols());
  if (!costs.allFinite()) throw InvalidArgument("cost matrix has non-finite entries");
  AssignmentResult result;
  std::vector<char> row_used(rows, 0), col_used(cols, 0);

  if (rows > 0 && cols > 0) {
    std::vector<std::pair<int, int>> pairs;
    if (rows <= cols) {
      const auto col_of_row = min_cost_rows(costs);
      for (int r = 0; r < rows; ++r) pairs.emplace_back(r, col_of_row[r]);
    } else {
      const CostMatrix t = costs.transpose();
      const auto row_of_col = min_cost_rows(t);
      for (int c = 0; c < cols; ++c) pairs.emplace_back(row_of_col[c], c);
      std::sort(pairs.begin(), pairs.end());
    }
    for (const auto& [r, c] : pairs) {
      if (c < 0 || r < 0 || !(costs(r, c) <= max_cost)) continue;
      result.matches.emplace_back(r, c);
      row_used[r] = 1;
      col_used[c] = 1;
    }
  }
  for (int r = 0; r < rows; ++r) {
    if (!row_used[r]) result.unmatched_rows.push_back(r);
  }
  for (int c = 0; c < cols; ++c) {
    if (!col_used[c]) result.unmatched_cols.push_back(c);
  }
  return result;
}

}  // namespace lgtrack
