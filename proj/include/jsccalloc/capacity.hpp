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

#ifndef JSCCALLOC_CAPACITY_HPP_
#define JSCCALLOC_CAPACITY_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jsccalloc/assign.hpp"
#include "jsccalloc/power_min.hpp"
#include "jsccalloc/psnr_model.hpp"
#include "jsccalloc/scenario.hpp"

namespace jscc {

enum class Backend { kFlow, kLp };

// One served user: the RB it holds and the transmission parameters.
struct UserAllocation {
  int user = -1;
  int rb = -1;
  double cr = 0.0;
  double snr_db = 0.0;
  double power_w = 0.0;
};

struct AllocationResult {
  int supported = 0;  // J*
  std::vector<UserAllocation> pairs;  // exactly the supported users
  double total_power_w = 0.0;
  std::vector<int> utilities;  // per-user 0/1, size K
  int assignment_solves = 0;   // exact-matching subproblems solved
};

// Equalized snr obtained when `power_w` is spread over RB `rb`:
// 10*log10(power / sum_s N0/|h_s|^2). -inf when the power or a gain is zero.
double realized_snr_db(const User& user, int rb, double power_w, const SystemConfig& config);

// Recomputes the delay and realized quality for one allocation and returns
// the binary utility.
int evaluate_utility(const User& user, const std::optional<UserAllocation>& alloc,
                     const PsnrModel& model, const SystemConfig& config);

// Maximum number of users servable within the power budget: bisection on J
// over exact minimum-power J-assignments of the pair power matrix. The
// search space is capped at the largest feasible matching size.
AllocationResult solve_capacity(const Scenario& scenario, const PsnrModel& model,
                                Backend backend = Backend::kFlow);

// Same, reusing a prebuilt power matrix (the matrix does not depend on the
// power budget, so sweeps share it across budget points).
AllocationResult solve_capacity_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                            const PsnrModel& model,
                                            Backend backend = Backend::kFlow);

// Cost view of a power matrix: feasible pairs cost their power, the rest
// are forbidden.
CostMatrix power_matrix_costs(const PowerMatrix& pm);

struct BruteForceOptions {
  double snr_step_db = 0.25;
  int max_users = 5;
  int max_rbs = 5;
};

// Joint exhaustive optimum for tiny instances: enumerates every partial
// injective user->RB map against per-pair minima found by scanning the full
// (cr x snr-grid) rectangle. Only the cheapest constraint-satisfying
// (cr, snr) per pair can matter (binary utilities, one shared budget), so
// the per-pair scan is exhaustive, not greedy. No matching solver, no
// bisection, no cr shortcut. Throws std::invalid_argument beyond the size
// guards.
int brute_force_p1(const Scenario& scenario, const PsnrModel& model,
                   const BruteForceOptions& opts = {});

// JSON export: {"J_star", "total_power_w", "pairs": [...]}.
void save_allocation(const AllocationResult& result, std::ostream& out);
void save_allocation_file(const AllocationResult& result, const std::string& path);
AllocationResult load_allocation(std::istream& in);

}  // namespace jscc

#endif  // JSCCALLOC_CAPACITY_HPP_
