#pragma once

#include <Eigen/Core>

#include <limits>
#include <utility>
#include <vector>

namespace lgtrack {

/// Rows index detections, columns index tracks.
using CostMatrix = Eigen::MatrixXd;

struct AssignmentResult {
  std::vector<std::pair<int, int>> matches;  // (row, column)
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;

  double total_cost(const CostMatrix& costs) const;
};

/// Exact minimum-cost one-to-one assignment over a rectangular matrix
/// (shortest augmenting paths with dual potentials, O(n^2 m)). Every row is
/// assigned when rows <= cols and vice versa; afterwards any pair costing
/// more than `max_cost` is demoted to unmatched on both sides. Matches are
/// returned sorted by row, unmatched indices ascending. Entries must be
/// finite; block a pair with a large finite cost instead of infinity.
AssignmentResult solve_assignment(const CostMatrix& costs,
                                  double max_cost = std::numeric_limits<double>::infinity());

}  // namespace lgtrack
