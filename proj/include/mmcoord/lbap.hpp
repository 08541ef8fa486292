// Copyright 2026 The mmcoord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMCOORD_LBAP_HPP_
#define MMCOORD_LBAP_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mmcoord {

// Tolerance on the unit-bottleneck test of the feasibility reduction.
inline constexpr double kFeasibilitySlack = 1e-12;

// Square assignment cost matrix; rows are candidate users, columns FRB slots.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int size, double fill = 0.0)
      : size_(size),
        cells_(static_cast<std::size_t>(size) * size, fill) {
    if (size < 1) throw std::invalid_argument("CostMatrix: size must be >= 1");
  }

  int size() const { return size_; }

  double at(int row, int col) const { return cells_[index(row, col)]; }
  double& at(int row, int col) { return cells_[index(row, col)]; }

 private:
  std::size_t index(int row, int col) const {
    if (row < 0 || row >= size_ || col < 0 || col >= size_)
      throw std::out_of_range("CostMatrix: index out of range");
    return static_cast<std::size_t>(row) * size_ + col;
  }

  int size_ = 0;
  std::vector<double> cells_;
};

// A perfect row-per-column assignment and the largest cost it selects.
struct AssignmentResult {
  std::vector<int> row_of_col;
  double bottleneck = 0.0;
};

namespace detail {

// Kuhn augmenting path restricted to cells with cost <= threshold.
inline bool try_augment(const CostMatrix& costs, double threshold, int row,
                        std::vector<char>& visited_col,
                        std::vector<int>& row_of_col) {
  const int n = costs.size();
  for (int col = 0; col < n; ++col) {
    if (visited_col[col] || costs.at(row, col) > threshold) continue;
    visited_col[col] = 1;
    if (row_of_col[col] < 0 ||
        try_augment(costs, threshold, row_of_col[col], visited_col,
                    row_of_col)) {
      row_of_col[col] = row;
      return true;
    }
  }
  return false;
}

// Maximum bipartite matching over the thresholded cell set. Rows and columns
// are scanned in ascending order, which pins down the witness when several
// optimal assignments exist.
inline bool perfect_matching_under(const CostMatrix& costs, double threshold,
                                   std::vector<int>& row_of_col) {
  const int n = costs.size();
  row_of_col.assign(n, -1);
  std::vector<char> visited_col(n);
  for (int row = 0; row < n; ++row) {
    std::fill(visited_col.begin(), visited_col.end(), 0);
    if (!try_augment(costs, threshold, row, visited_col, row_of_col))
      return false;
  }
  return true;
}

}  // namespace detail

// Minimizes the largest selected cost over all perfect assignments
// (threshold search over the sorted distinct costs, feasibility by maximum
// matching). Exact: the result is always one of the matrix entries.
inline AssignmentResult solve_lbap(const CostMatrix& costs) {
  const int n = costs.size();
  if (n < 1) throw std::invalid_argument("solve_lbap: empty cost matrix");

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double v = costs.at(r, c);
      if (std::isnan(v))
        throw std::invalid_argument("solve_lbap: NaN cost");
      values.push_back(v);
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Smallest threshold index admitting a perfect matching; the largest one
  // always does (all cells allowed).
  std::vector<int> row_of_col;
  int lo = 0;
  int hi = static_cast<int>(values.size()) - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (detail::perfect_matching_under(costs, values[mid], row_of_col))
      hi = mid;
    else
      lo = mid + 1;
  }

  AssignmentResult result;
  detail::perfect_matching_under(costs, values[lo], result.row_of_col);
  double bottleneck = values[0];
  for (int col = 0; col < n; ++col)
    bottleneck = std::max(bottleneck, costs.at(result.row_of_col[col], col));
  result.bottleneck = bottleneck;
  return result;
}

// Linearized per-FDC feasibility system for one SINR target: one constraint
// family per FDC of the subsystem, `lhs[f][k][l] <= rhs[f][l]` summed over
// the selected cells of the target FDC's assignment. `shift` is the additive
// constant that makes all coefficients positive before forming cost ratios.
struct FeasibilityCoefficients {
  int families = 0;  // constraint families (subsystem FDC count)
  int size = 0;      // users / FRBs of the target FDC
  std::vector<double> lhs;  // [family][row k][col l]
  std::vector<double> rhs;  // [family][col l]
  double shift = 1.0;

  double lhs_at(int family, int row, int col) const {
    return lhs[(static_cast<std::size_t>(family) * size + row) * size + col];
  }
  double& lhs_at(int family, int row, int col) {
    return lhs[(static_cast<std::size_t>(family) * size + row) * size + col];
  }
  double rhs_at(int family, int col) const {
    return rhs[static_cast<std::size_t>(family) * size + col];
  }
  double& rhs_at(int family, int col) {
    return rhs[static_cast<std::size_t>(family) * size + col];
  }

  void resize(int n_families, int n_size) {
    families = n_families;
    size = n_size;
    lhs.assign(static_cast<std::size_t>(n_families) * n_size * n_size, 0.0);
    rhs.assign(static_cast<std::size_t>(n_families) * n_size, 0.0);
  }

  double min_coefficient() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : lhs) m = std::min(m, v);
    for (double v : rhs) m = std::min(m, v);
    return m;
  }
};

// Smallest shift used by default: keeps every shifted coefficient at least 1
// with a little headroom, so the cost ratios below stay well conditioned.
inline double choose_shift(double min_coefficient) {
  return 1.0 + std::max(0.0, -min_coefficient) + 1e-6;
}

// Collapses the constraint families into one bottleneck cost matrix:
//   cost[k][l] = max_f (shift + lhs[f][k][l]) / (shift + rhs[f][l])
// A perfect assignment satisfying every family exists iff the minimum
// bottleneck is at most 1.
inline CostMatrix build_feasibility_lbap(const FeasibilityCoefficients& fc) {
  if (fc.families < 1 || fc.size < 1)
    throw std::invalid_argument("build_feasibility_lbap: empty system");
  if (fc.shift + fc.min_coefficient() <= 0.0)
    throw std::invalid_argument(
        "build_feasibility_lbap: shift does not make coefficients positive");
  CostMatrix costs(fc.size);
  for (int k = 0; k < fc.size; ++k) {
    for (int l = 0; l < fc.size; ++l) {
      double worst = -std::numeric_limits<double>::infinity();
      for (int f = 0; f < fc.families; ++f) {
        const double ratio =
            (fc.shift + fc.lhs_at(f, k, l)) / (fc.shift + fc.rhs_at(f, l));
        worst = std::max(worst, ratio);
      }
      costs.at(k, l) = worst;
    }
  }
  return costs;
}

struct FeasibilityVerdict {
  bool feasible = false;
  double bottleneck = 0.0;
  std::optional<std::vector<int>> witness;  // row per column when feasible
};

// Feasibility of the constraint system via the bottleneck reduction. The
// witness assignment satisfies every family (up to the documented slack).
inline FeasibilityVerdict check_feasibility(const FeasibilityCoefficients& fc) {
  const CostMatrix costs = build_feasibility_lbap(fc);
  AssignmentResult best = solve_lbap(costs);
  FeasibilityVerdict verdict;
  verdict.bottleneck = best.bottleneck;
  verdict.feasible = best.bottleneck <= 1.0 + kFeasibilitySlack;
  if (verdict.feasible) verdict.witness = std::move(best.row_of_col);
  return verdict;
}

}  // namespace mmcoord

#endif  // MMCOORD_LBAP_HPP_
