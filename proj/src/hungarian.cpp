// Copyright 2026 The jsccalloc Authors
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

#include <algorithm>
#include <cmath>
#include <vector>

#include "jsccalloc/assign.hpp"

namespace jscc {

namespace {

// Kuhn-Munkres with row/column potentials on a square matrix; O(n^3).
// Returns row -> column.
std::vector<int> hungarian_square(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
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
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

HungarianResult solve_hungarian(const CostMatrix& c) {
  c.validate();
  HungarianResult result;
  if (c.rows == 0 || c.cols == 0) return result;

  double finite_sum = 0.0;
  for (double v : c.values) {
    if (v < CostMatrix::kForbidden) finite_sum += v;
  }
  double big_m = 1.0 + finite_sum;

  // Pad to square; dummy rows/columns cost 0 and absorb the surplus side.
  int n = std::max(c.rows, c.cols);
  std::vector<std::vector<double>> padded(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < c.rows; ++k) {
    for (int m = 0; m < c.cols; ++m) {
      padded[k][m] = c.forbidden(k, m) ? big_m : c.at(k, m);
    }
  }

  std::vector<int> row_to_col = hungarian_square(padded);
  for (int k = 0; k < c.rows; ++k) {
    int m = row_to_col[k];
    if (m < 0 || m >= c.cols) continue;  // matched to a padding column
    if (c.forbidden(k, m)) {
      ++result.num_stripped;
      continue;
    }
    result.assignment.pairs.emplace_back(k, m);
    result.total_cost += c.at(k, m);
  }
  std::sort(result.assignment.pairs.begin(), result.assignment.pairs.end());
  return result;
}

}  // namespace jscc
