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

#include "jsccalloc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "jsccalloc/errors.hpp"

namespace jscc {

namespace {

// Re-verification slack: allocations rebuilt from solver output may differ
// from the originals by a few ulps.
constexpr double kUtilityRelTol = 1e-9;

struct P4Solve {
  bool feasible = false;
  Assignment assignment;
  double total_cost = 0.0;
};

P4Solve solve_p4(const CostMatrix& costs, int j_pairs, Backend backend) {
  P4Solve out;
  if (backend == Backend::kFlow) {
    FlowResult flow = solve_k_assignment_flow(costs, j_pairs);
    out.feasible = flow.feasible;
    out.assignment = std::move(flow.assignment);
    out.total_cost = flow.total_cost;
    return out;
  }
  LpResult lp = solve_p5_interior_point(costs, j_pairs);
  if (lp.status == LpStatus::kInfeasible) return out;
  if (lp.status == LpStatus::kNotConverged) {
    throw SolverError("interior-point solve did not converge for J=" + std::to_string(j_pairs));
  }
  double tol = 1e-6 * (1.0 + std::abs(lp.objective));
  RoundResult rounded = round_lp_solution(costs, lp.alpha, j_pairs, lp.objective, tol);
  if (!rounded.ok) {
    throw SolverError("could not extract an integral assignment for J=" +
                      std::to_string(j_pairs));
  }
  out.feasible = true;
  out.assignment = std::move(rounded.assignment);
  out.total_cost = rounded.total_cost;
  return out;
}

}  // namespace

CostMatrix power_matrix_costs(const PowerMatrix& pm) {
  CostMatrix costs(pm.num_users, pm.num_rbs);
  for (int k = 0; k < pm.num_users; ++k) {
    for (int m = 0; m < pm.num_rbs; ++m) {
      const PairSolution& s = pm.at(k, m);
      costs.at(k, m) = s.feasible() ? s.power_w : CostMatrix::kForbidden;
    }
  }
  return costs;
}

double realized_snr_db(const User& user, int rb, double power_w, const SystemConfig& config) {
  double inv_gain_sum = 0.0;
  int first = rb * config.subchannels_per_rb;
  for (int i = 0; i < config.subchannels_per_rb; ++i) {
    double gain_sq = user.channel_gain_sq.at(first + i);
    if (gain_sq <= 0.0) return -std::numeric_limits<double>::infinity();
    inv_gain_sum += config.noise_power_w / gain_sq;
  }
  if (power_w <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(power_w / inv_gain_sum);
}

int evaluate_utility(const User& user, const std::optional<UserAllocation>& alloc,
                     const PsnrModel& model, const SystemConfig& config) {
  if (!alloc) return 0;
  double delay = transmission_delay(alloc->cr, config);
  if (delay > user.delay_bound_s * (1.0 + kUtilityRelTol)) return 0;
  double snr_db = realized_snr_db(user, alloc->rb, alloc->power_w, config);
  if (!std::isfinite(snr_db)) return 0;
  double psnr = model.evaluate(alloc->cr, snr_db);
  return psnr >= user.psnr_bound_db * (1.0 - kUtilityRelTol) ? 1 : 0;
}

AllocationResult solve_capacity(const Scenario& scenario, const PsnrModel& model,
                                Backend backend) {
  PowerMatrix pm = build_power_matrix(scenario, model);
  return solve_capacity_with_matrix(scenario, pm, model, backend);
}

AllocationResult solve_capacity_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                            const PsnrModel& model, Backend backend) {
  const SystemConfig& config = scenario.config;
  const double budget = config.bs_power_budget_w;
  CostMatrix costs = power_matrix_costs(pm);

  AllocationResult result;
  result.utilities.assign(config.num_users, 0);

  // Upper bound: no J beyond the largest simultaneously-feasible matching
  // can ever be served, whatever the budget.
  int j_upper = max_feasible_matching(costs);
  int j_lower = 0;
  if (j_upper == 0) return result;

  Assignment best;
  P4Solve top = solve_p4(costs, j_upper, backend);
  ++result.assignment_solves;
  if (top.feasible && top.total_cost <= budget) {
    j_lower = j_upper;
    best = std::move(top.assignment);
  } else {
    // Invariant: P*_{j_lower} <= budget < P*_{j_upper}.
    while (j_upper - j_lower > 1) {
      int j_mid = (j_lower + j_upper) / 2;
      P4Solve mid = solve_p4(costs, j_mid, backend);
      ++result.assignment_solves;
      if (!mid.feasible || mid.total_cost > budget) {
        j_upper = j_mid;
      } else {
        j_lower = j_mid;
        best = std::move(mid.assignment);
      }
    }
  }

  result.supported = j_lower;
  for (auto [k, m] : best.pairs) {
    const PairSolution& s = pm.at(k, m);
    UserAllocation alloc{k, m, s.cr, s.snr_db, s.power_w};
    result.total_power_w += s.power_w;
    result.utilities[k] =
        evaluate_utility(scenario.users[k], alloc, model, config);
    result.pairs.push_back(alloc);
  }
  return result;
}

int brute_force_p1(const Scenario& scenario, const PsnrModel& model,
                   const BruteForceOptions& opts) {
  const SystemConfig& config = scenario.config;
  int K = config.num_users, M = config.num_rbs;
  if (K > opts.max_users || M > opts.max_rbs) {
    throw std::invalid_argument("instance too large for exhaustive enumeration");
  }

  std::vector<double> snr_grid;
  for (double snr = model.snr_min_db(); snr <= model.snr_max_db() + 1e-12;
       snr += opts.snr_step_db) {
    snr_grid.push_back(snr);
  }

  // Cheapest constraint-satisfying power per pair, by full (cr, snr) scan.
  std::vector<std::vector<double>> pair_power(K, std::vector<double>(M, CostMatrix::kForbidden));
  for (int k = 0; k < K; ++k) {
    const User& user = scenario.users[k];
    for (int m = 0; m < M; ++m) {
      double best = CostMatrix::kForbidden;
      for (double cr : config.cr_set) {
        if (transmission_delay(cr, config) > user.delay_bound_s) continue;
        for (double snr : snr_grid) {
          if (model.evaluate(cr, snr) < user.psnr_bound_db) continue;
          RbPower p = rb_power_for_snr(user, m, snr, config);
          if (p.feasible) best = std::min(best, p.total_w);
          break;  // higher snr on this cr only costs more
        }
      }
      pair_power[k][m] = best;
    }
  }

  // Depth-first over partial injective maps; users in index order.
  int best_count = 0;
  std::vector<char> rb_used(M, 0);
  auto recurse = [&](auto&& self, int user, int count, double power_used) -> void {
    if (count + (K - user) <= best_count) return;  // cannot beat the incumbent
    if (user == K) {
      best_count = std::max(best_count, count);
      return;
    }
    for (int m = 0; m < M; ++m) {
      if (rb_used[m]) continue;
      double p = pair_power[user][m];
      if (!(p < CostMatrix::kForbidden)) continue;
      if (power_used + p > config.bs_power_budget_w) continue;
      rb_used[m] = 1;
      self(self, user + 1, count + 1, power_used + p);
      rb_used[m] = 0;
    }
    self(self, user + 1, count, power_used);  // leave this user unserved
  };
  recurse(recurse, 0, 0, 0.0);
  return best_count;
}

void save_allocation(const AllocationResult& result, std::ostream& out) {
  nlohmann::json j;
  j["J_star"] = result.supported;
  j["total_power_w"] = result.total_power_w;
  j["pairs"] = nlohmann::json::array();
  for (const UserAllocation& a : result.pairs) {
    j["pairs"].push_back(nlohmann::json{{"user", a.user},
                                        {"rb", a.rb},
                                        {"cr", a.cr},
                                        {"snr_db", a.snr_db},
                                        {"power_w", a.power_w}});
  }
  out << j.dump(1) << "\n";
}

void save_allocation_file(const AllocationResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  save_allocation(result, out);
}

AllocationResult load_allocation(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  AllocationResult result;
  result.supported = j.at("J_star").get<int>();
  result.total_power_w = j.at("total_power_w").get<double>();
  for (const auto& ja : j.at("pairs")) {
    result.pairs.push_back(UserAllocation{ja.at("user").get<int>(), ja.at("rb").get<int>(),
                                          ja.at("cr").get<double>(), ja.at("snr_db").get<double>(),
                                          ja.at("power_w").get<double>()});
  }
  return result;
}

}  // namespace jscc
