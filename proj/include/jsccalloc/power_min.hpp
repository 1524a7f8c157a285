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

#ifndef JSCCALLOC_POWER_MIN_HPP_
#define JSCCALLOC_POWER_MIN_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jsccalloc/psnr_model.hpp"
#include "jsccalloc/scenario.hpp"

namespace jscc {

enum class PairStatus {
  kFeasible,
  kLatencyInfeasible,  // no compression ratio meets the delay bound
  kPsnrInfeasible,     // quality target unreachable at any grid snr / finite power
};

const char* to_string(PairStatus status);

// Minimum-power serving plan for one (user, RB) pair.
struct PairSolution {
  int user = -1;
  int rb = -1;
  PairStatus status = PairStatus::kLatencyInfeasible;
  double cr = 0.0;       // chosen compression ratio (valid unless latency-infeasible)
  double snr_db = 0.0;   // required equalized snr (valid when feasible)
  double power_w = 0.0;  // total RB power (valid when feasible)
  std::vector<double> per_subchannel_w;

  bool feasible() const { return status == PairStatus::kFeasible; }
};

struct PowerMatrix {
  int num_users = 0;
  int num_rbs = 0;
  std::vector<PairSolution> entries;  // row-major [user][rb]

  const PairSolution& at(int user, int rb) const { return entries[user * num_rbs + rb]; }
  PairSolution& at(int user, int rb) { return entries[user * num_rbs + rb]; }
};

struct MaxCr {
  bool feasible = false;
  double cr = 0.0;     // largest cr_set element <= o_max
  double o_max = 0.0;  // delay-bound ceiling T_k * S0 / (T0 * D_i)
};

// Largest configured compression ratio whose transmission delay fits T_k.
MaxCr max_feasible_cr(const User& user, const SystemConfig& config);

// One-item transmission delay D_i * o / S0 * T0.
double transmission_delay(double cr, const SystemConfig& config);

struct RbPower {
  bool feasible = false;  // false iff some sub-channel gain is zero
  double total_w = 0.0;
  std::vector<double> per_subchannel_w;
};

// Per-sub-channel powers that equalize the received snr on every sub-channel
// of RB `rb`: p_s = N0 / |h_s|^2 * 10^(snr/10).
RbPower rb_power_for_snr(const User& user, int rb, double snr_db, const SystemConfig& config);

// Minimum RB power serving `user` on `rb` under both the delay and quality
// bounds: pick the largest delay-feasible cr (or `pinned_cr` when given),
// bisect the model for the minimum snr, then equalize powers.
PairSolution solve_p2(const User& user, int rb, const PsnrModel& model,
                      const SystemConfig& config, std::optional<double> pinned_cr = {},
                      double snr_tol_db = 0.01);

// solve_p2 over all K x M pairs.
PowerMatrix build_power_matrix(const Scenario& scenario, const PsnrModel& model,
                               std::optional<double> pinned_cr = {},
                               double snr_tol_db = 0.01);

// Debug/golden export: `user,rb,cr,snr_db,power_w,status` rows.
void write_power_matrix_csv(const PowerMatrix& pm, std::ostream& out);

}  // namespace jscc

#endif  // JSCCALLOC_POWER_MIN_HPP_
