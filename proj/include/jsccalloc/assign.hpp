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

#ifndef JSCCALLOC_ASSIGN_HPP_
#define JSCCALLOC_ASSIGN_HPP_

#include <limits>
#include <utility>
#include <vector>

namespace jscc {

// Dense K x M cost grid. Forbidden pairs are marked with kForbidden
// (infinity); finite entries must be >= 0.
struct CostMatrix {
  int rows = 0;  // users
  int cols = 0;  // RBs
  std::vector<double> values;  // row-major

  static constexpr double kForbidden = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  CostMatrix(int r, int c) : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, 0.0) {}

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
  bool forbidden(int r, int c) const { return !(at(r, c) < kForbidden); }

  // Throws std::invalid_argument unless all finite entries are >= 0.
  void validate() const;
};

// Partial matching: each user and each RB appears at most once.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (user, rb), sorted by user

  int cardinality() const { return static_cast<int>(pairs.size()); }
};

double assignment_cost(const CostMatrix& c, const Assignment& a);

// Size of the largest matching that avoids forbidden entries.
int max_feasible_matching(const CostMatrix& c);

struct FlowResult {
  bool feasible = false;
  Assignment assignment;
  double total_cost = 0.0;
};

// Minimum-total-cost matching of exactly J pairs via successive shortest
// paths; exact and integral. Infeasible when fewer than J pairs can be
// matched simultaneously. Throws std::invalid_argument for J outside
// [0, min(rows, cols)].
FlowResult solve_k_assignment_flow(const CostMatrix& c, int j_pairs);

struct LpOptions {
  double tol = 1e-8;           // relative duality-gap stop
  int max_iterations = 500;
  double step_fraction = 0.99;  // fraction of the step to the boundary
};

enum class LpStatus { kOptimal, kInfeasible, kNotConverged };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> alpha;  // row-major K x M fractional assignment
  double objective = 0.0;
  double dual_bound = 0.0;  // best lower bound from the dual estimate
  int iterations = 0;
};

// LP relaxation (0 <= alpha <= 1, row/col sums <= 1, total = J) solved by a
// primal affine-scaling interior-point method. Forbidden entries enter with
// a data-dependent big-M cost, so with a feasible instance no optimal
// solution uses one.
LpResult solve_p5_interior_point(const CostMatrix& c, int j_pairs, const LpOptions& opts = {});

struct RoundResult {
  bool ok = false;  // false = could not certify the cost bound
  Assignment assignment;
  double total_cost = 0.0;
};

// Extracts an integral J-pair assignment from a fractional LP point with
// cost <= lp_objective + tol: direct thresholding when near-integral, else
// an exact solve restricted to the LP support.
RoundResult round_lp_solution(const CostMatrix& c, const std::vector<double>& alpha, int j_pairs,
                              double lp_objective, double tol);

struct HungarianResult {
  Assignment assignment;  // stripped of big-M (forced forbidden) pairs
  double total_cost = 0.0;
  int num_stripped = 0;
};

// Classic O(n^3) optimal assignment of size min(rows, cols). Forbidden
// entries are padded with big-M = 1 + sum of finite costs and stripped from
// the returned pairing.
HungarianResult solve_hungarian(const CostMatrix& c);

}  // namespace jscc

#endif  // JSCCALLOC_ASSIGN_HPP_
