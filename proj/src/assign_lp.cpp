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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jsccalloc/assign.hpp"

namespace jscc {

namespace {

// Standard-form encoding of the relaxed J-cardinality assignment problem.
// Variables: the K*M assignment fractions followed by row slacks (only when
// J < K) and column slacks (only when J < M). Constraints become equalities;
// rows implied by others are dropped so A keeps full row rank:
//   - the cardinality row is implied when J == K or J == M,
//   - with J == K == M the last column row is implied by the rest.
struct StandardForm {
  int num_rows = 0;
  int num_vars = 0;
  std::vector<std::vector<int>> var_rows;  // constraint indices touching each variable
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
  Eigen::VectorXd start;  // strictly interior feasible point
};

StandardForm build_standard_form(const CostMatrix& c, int j_pairs, double big_m) {
  int K = c.rows, M = c.cols, J = j_pairs;
  bool row_slack = J < K;
  bool col_slack = J < M;
  bool keep_total = row_slack && col_slack;
  // With equalities on both sides the constraint set is rank-deficient by
  // one; drop the last column row.
  int col_rows = (!row_slack && !col_slack) ? M - 1 : M;

  StandardForm sf;
  int alpha_vars = K * M;
  sf.num_vars = alpha_vars + (row_slack ? K : 0) + (col_slack ? M : 0);
  sf.num_rows = K + col_rows + (keep_total ? 1 : 0);
  sf.var_rows.resize(sf.num_vars);
  sf.rhs = Eigen::VectorXd::Ones(sf.num_rows);
  if (keep_total) sf.rhs[sf.num_rows - 1] = static_cast<double>(J);
  sf.cost = Eigen::VectorXd::Zero(sf.num_vars);
  sf.start = Eigen::VectorXd::Zero(sf.num_vars);

  int total_row = sf.num_rows - 1;
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) {
      int i = k * M + m;
      sf.var_rows[i].push_back(k);
      if (m < col_rows) sf.var_rows[i].push_back(K + m);
      if (keep_total) sf.var_rows[i].push_back(total_row);
      sf.cost[i] = c.forbidden(k, m) ? big_m : c.at(k, m);
      sf.start[i] = static_cast<double>(J) / static_cast<double>(K * M);
    }
  }
  int next = alpha_vars;
  if (row_slack) {
    for (int k = 0; k < K; ++k, ++next) {
      sf.var_rows[next].push_back(k);
      sf.start[next] = 1.0 - static_cast<double>(J) / K;
    }
  }
  if (col_slack) {
    for (int m = 0; m < M; ++m, ++next) {
      if (m < col_rows) sf.var_rows[next].push_back(K + m);
      sf.start[next] = 1.0 - static_cast<double>(J) / M;
    }
  }
  return sf;
}

}  // namespace

LpResult solve_p5_interior_point(const CostMatrix& c, int j_pairs, const LpOptions& opts) {
  c.validate();
  if (j_pairs < 0 || j_pairs > std::min(c.rows, c.cols)) {
    throw std::invalid_argument("j_pairs must lie in [0, min(rows, cols)]");
  }
  LpResult result;
  result.alpha.assign(static_cast<std::size_t>(c.rows) * c.cols, 0.0);
  if (j_pairs == 0) {
    result.status = LpStatus::kOptimal;
    return result;
  }
  if (max_feasible_matching(c) < j_pairs) {
    result.status = LpStatus::kInfeasible;
    return result;
  }

  double finite_sum = 0.0;
  double cost_scale = 1.0;
  for (double v : c.values) {
    if (v < CostMatrix::kForbidden) {
      finite_sum += v;
      cost_scale = std::max(cost_scale, v);
    }
  }
  double big_m = 1.0 + finite_sum;

  StandardForm sf = build_standard_form(c, j_pairs, big_m);
  Eigen::VectorXd x = sf.start;
  int n = sf.num_vars, m_rows = sf.num_rows;

  double best_bound = -std::numeric_limits<double>::infinity();
  double objective = sf.cost.dot(x);
  const double dual_feas_tol = 1e-7 * (1.0 + big_m);

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    result.iterations = iter;
    Eigen::VectorXd d2 = x.cwiseProduct(x);

    // Normal matrix A D^2 A^T and right-hand side A D^2 c, assembled from
    // the per-variable sparsity (each variable touches <= 3 rows).
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(m_rows, m_rows);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_rows);
    for (int i = 0; i < n; ++i) {
      const auto& rows = sf.var_rows[i];
      for (int a : rows) {
        rhs[a] += d2[i] * sf.cost[i];
        for (int b : rows) normal(a, b) += d2[i];
      }
    }
    double ridge = 1e-14 * normal.diagonal().maxCoeff();
    normal.diagonal().array() += ridge;

    Eigen::VectorXd w = Eigen::LDLT<Eigen::MatrixXd>(normal).solve(rhs);

    // Reduced costs and dual bound.
    Eigen::VectorXd reduced = sf.cost;
    for (int i = 0; i < n; ++i) {
      for (int a : sf.var_rows[i]) reduced[i] -= w[a];
    }
    if (reduced.minCoeff() >= -dual_feas_tol) {
      best_bound = std::max(best_bound, sf.rhs.dot(w));
    }
    objective = sf.cost.dot(x);
    if (std::isfinite(best_bound) &&
        objective - best_bound <= opts.tol * (1.0 + std::abs(objective))) {
      break;
    }

    Eigen::VectorXd dx = -d2.cwiseProduct(reduced);
    double step_to_boundary = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (dx[i] < 0.0) step_to_boundary = std::min(step_to_boundary, -x[i] / dx[i]);
    }
    double descent = sf.cost.dot(dx);
    if (!std::isfinite(step_to_boundary) || descent >= -1e-16 * cost_scale) {
      // No descent direction left: x already sits on the optimal face.
      best_bound = std::max(best_bound, objective);
      break;
    }
    x += opts.step_fraction * step_to_boundary * dx;
  }

  objective = sf.cost.dot(x);
  bool converged = std::isfinite(best_bound) &&
                   objective - best_bound <= opts.tol * (1.0 + std::abs(objective));
  result.status = converged ? LpStatus::kOptimal : LpStatus::kNotConverged;
  result.objective = objective;
  result.dual_bound = best_bound;
  for (int i = 0; i < c.rows * c.cols; ++i) result.alpha[i] = x[i];
  return result;
}

RoundResult round_lp_solution(const CostMatrix& c, const std::vector<double>& alpha, int j_pairs,
                              double lp_objective, double tol) {
  c.validate();
  if (alpha.size() != static_cast<std::size_t>(c.rows) * c.cols) {
    throw std::invalid_argument("alpha shape mismatch");
  }
  RoundResult result;

  // Near-integral case: threshold at 1/2.
  Assignment thresholded;
  std::vector<char> row_used(c.rows, 0), col_used(c.cols, 0);
  bool injective = true;
  for (int k = 0; k < c.rows && injective; ++k) {
    for (int m = 0; m < c.cols; ++m) {
      if (alpha[static_cast<std::size_t>(k) * c.cols + m] <= 0.5) continue;
      if (row_used[k] || col_used[m] || c.forbidden(k, m)) {
        injective = false;
        break;
      }
      row_used[k] = col_used[m] = 1;
      thresholded.pairs.emplace_back(k, m);
    }
  }
  if (injective && thresholded.cardinality() == j_pairs) {
    double cost = assignment_cost(c, thresholded);
    if (cost <= lp_objective + tol) {
      result.ok = true;
      result.assignment = std::move(thresholded);
      result.total_cost = cost;
      return result;
    }
  }

  // Fractional (tied) case: exact solve restricted to the LP support.
  for (double support_eps : {1e-6, 1e-9}) {
    CostMatrix restricted(c.rows, c.cols);
    for (int k = 0; k < c.rows; ++k) {
      for (int m = 0; m < c.cols; ++m) {
        bool in_support = alpha[static_cast<std::size_t>(k) * c.cols + m] > support_eps;
        restricted.at(k, m) =
            (in_support && !c.forbidden(k, m)) ? c.at(k, m) : CostMatrix::kForbidden;
      }
    }
    FlowResult flow = solve_k_assignment_flow(restricted, j_pairs);
    if (flow.feasible && flow.total_cost <= lp_objective + tol) {
      result.ok = true;
      result.assignment = std::move(flow.assignment);
      result.total_cost = flow.total_cost;
      return result;
    }
  }
  return result;  // RoundingFailed
}

}  // namespace jscc
