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

#include "jsccalloc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jsccalloc/rng.hpp"

namespace jscc {

namespace {

// Greedy admission: serve candidates cheapest-first while the budget lasts.
// Ties break on user index so results are deterministic.
AllocationResult admit_greedily(const Scenario& scenario, const PowerMatrix& pm,
                                const PsnrModel& model,
                                std::vector<std::pair<int, int>> candidates) {
  const SystemConfig& config = scenario.config;
  AllocationResult result;
  result.utilities.assign(config.num_users, 0);

  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    double pa = pm.at(a.first, a.second).power_w;
    double pb = pm.at(b.first, b.second).power_w;
    return pa != pb ? pa < pb : a < b;
  });
  for (auto [k, m] : candidates) {
    const PairSolution& s = pm.at(k, m);
    if (result.total_power_w + s.power_w > config.bs_power_budget_w) break;
    UserAllocation alloc{k, m, s.cr, s.snr_db, s.power_w};
    result.total_power_w += s.power_w;
    result.utilities[k] = evaluate_utility(scenario.users[k], alloc, model, config);
    result.pairs.push_back(alloc);
    ++result.supported;
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const UserAllocation& a, const UserAllocation& b) { return a.user < b.user; });
  return result;
}

// Uniform random injective pairing. With K > M every RB is used and the
// drawn users are a uniform subset; with K <= M every user gets an RB.
std::vector<std::pair<int, int>> draw_pairing(int num_users, int num_rbs, std::uint64_t seed) {
  rng::Stream stream(rng::substream_seed(seed, 0x70616972ULL));  // "pair"
  std::vector<int> users(num_users);
  std::iota(users.begin(), users.end(), 0);
  std::vector<int> rbs(num_rbs);
  std::iota(rbs.begin(), rbs.end(), 0);
  stream.shuffle(users);
  stream.shuffle(rbs);
  int n = std::min(num_users, num_rbs);
  std::vector<std::pair<int, int>> pairing;
  pairing.reserve(n);
  for (int i = 0; i < n; ++i) pairing.emplace_back(users[i], rbs[i]);
  return pairing;
}

}  // namespace

AllocationResult hungarian_greedy(const Scenario& scenario, const PsnrModel& model) {
  PowerMatrix pm = build_power_matrix(scenario, model);
  return hungarian_greedy_with_matrix(scenario, pm, model);
}

AllocationResult hungarian_greedy_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                              const PsnrModel& model) {
  HungarianResult matching = solve_hungarian(power_matrix_costs(pm));
  return admit_greedily(scenario, pm, model, std::move(matching.assignment.pairs));
}

AllocationResult random_pairing(const Scenario& scenario, const PsnrModel& model,
                                std::uint64_t seed) {
  PowerMatrix pm = build_power_matrix(scenario, model);
  return random_pairing_with_matrix(scenario, pm, model, seed);
}

AllocationResult random_pairing_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                            const PsnrModel& model, std::uint64_t seed) {
  std::vector<std::pair<int, int>> candidates;
  for (auto [k, m] : draw_pairing(pm.num_users, pm.num_rbs, seed)) {
    if (pm.at(k, m).feasible()) candidates.emplace_back(k, m);
  }
  return admit_greedily(scenario, pm, model, std::move(candidates));
}

AllocationResult uniform_power(const Scenario& scenario, const PsnrModel& model,
                               std::uint64_t seed, UniformShare share) {
  PowerMatrix pm = build_power_matrix(scenario, model);
  return uniform_power_with_matrix(scenario, pm, model, seed, share);
}

AllocationResult uniform_power_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                           const PsnrModel& model, std::uint64_t seed,
                                           UniformShare share) {
  const SystemConfig& config = scenario.config;
  AllocationResult result;
  result.utilities.assign(config.num_users, 0);
  double divisor = share == UniformShare::kPerUser ? config.num_users : config.num_rbs;
  if (divisor <= 0.0) return result;
  double budget_share = config.bs_power_budget_w / divisor;

  for (auto [k, m] : draw_pairing(pm.num_users, pm.num_rbs, seed)) {
    const PairSolution& s = pm.at(k, m);
    if (!s.feasible() || s.power_w > budget_share) continue;
    // The user gets the whole share; the realized snr is at least the
    // required one.
    double snr = realized_snr_db(scenario.users[k], m, budget_share, scenario.config);
    UserAllocation alloc{k, m, s.cr, snr, budget_share};
    result.total_power_w += budget_share;
    result.utilities[k] = evaluate_utility(scenario.users[k], alloc, model, config);
    result.pairs.push_back(alloc);
    ++result.supported;
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const UserAllocation& a, const UserAllocation& b) { return a.user < b.user; });
  return result;
}

AllocationResult fixed_cr(const Scenario& scenario, const PsnrModel& model, double cr,
                          Backend backend) {
  const auto& set = scenario.config.cr_set;
  auto close = [cr](double v) { return std::abs(v - cr) <= 1e-12 * std::max(1.0, std::abs(v)); };
  if (std::none_of(set.begin(), set.end(), close)) {
    throw std::invalid_argument("fixed cr must be one of config.cr_set");
  }
  PowerMatrix pm = build_power_matrix(scenario, model, cr);
  return solve_capacity_with_matrix(scenario, pm, model, backend);
}

}  // namespace jscc
