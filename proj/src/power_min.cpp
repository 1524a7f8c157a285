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

#include "jsccalloc/power_min.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "jsccalloc/errors.hpp"

namespace jscc {

const char* to_string(PairStatus status) {
  switch (status) {
    case PairStatus::kFeasible:
      return "feasible";
    case PairStatus::kLatencyInfeasible:
      return "latency-infeasible";
    case PairStatus::kPsnrInfeasible:
      return "psnr-infeasible";
  }
  return "unknown";
}

double transmission_delay(double cr, const SystemConfig& config) {
  if (cr <= 0.0) throw std::invalid_argument("compression ratio must be > 0");
  return static_cast<double>(config.source_symbols) * cr /
         static_cast<double>(config.subchannels_per_rb) * config.symbol_duration_s;
}

MaxCr max_feasible_cr(const User& user, const SystemConfig& config) {
  MaxCr result;
  result.o_max = user.delay_bound_s * static_cast<double>(config.subchannels_per_rb) /
                 (config.symbol_duration_s * static_cast<double>(config.source_symbols));
  // cr_set is ascending; take the last element under the ceiling.
  for (auto it = config.cr_set.rbegin(); it != config.cr_set.rend(); ++it) {
    if (*it <= result.o_max) {
      result.feasible = true;
      result.cr = *it;
      break;
    }
  }
  return result;
}

RbPower rb_power_for_snr(const User& user, int rb, double snr_db, const SystemConfig& config) {
  if (rb < 0 || rb >= config.num_rbs) throw std::invalid_argument("rb index out of range");
  RbPower result;
  result.feasible = true;
  result.per_subchannel_w.reserve(config.subchannels_per_rb);
  double snr_linear = std::pow(10.0, snr_db / 10.0);
  int first = rb * config.subchannels_per_rb;
  for (int i = 0; i < config.subchannels_per_rb; ++i) {
    double gain_sq = user.channel_gain_sq.at(first + i);
    if (gain_sq <= 0.0) {
      result.feasible = false;
      result.total_w = 0.0;
      result.per_subchannel_w.clear();
      return result;
    }
    double p = config.noise_power_w / gain_sq * snr_linear;
    result.per_subchannel_w.push_back(p);
    result.total_w += p;
  }
  return result;
}

PairSolution solve_p2(const User& user, int rb, const PsnrModel& model,
                      const SystemConfig& config, std::optional<double> pinned_cr,
                      double snr_tol_db) {
  PairSolution sol;
  sol.user = user.id;
  sol.rb = rb;

  MaxCr max_cr = max_feasible_cr(user, config);
  if (pinned_cr) {
    // Pinned ratio still has to respect the delay bound.
    if (*pinned_cr > max_cr.o_max) {
      sol.status = PairStatus::kLatencyInfeasible;
      return sol;
    }
    sol.cr = *pinned_cr;
  } else {
    if (!max_cr.feasible) {
      sol.status = PairStatus::kLatencyInfeasible;
      return sol;
    }
    sol.cr = max_cr.cr;
  }

  PsnrModel::MinSnr snr = model.min_snr_for_psnr(sol.cr, user.psnr_bound_db, snr_tol_db);
  if (!snr.feasible) {
    sol.status = PairStatus::kPsnrInfeasible;
    return sol;
  }
  sol.snr_db = snr.snr_db;

  RbPower power = rb_power_for_snr(user, rb, sol.snr_db, config);
  if (!power.feasible) {
    // Zero gain: the target snr needs unbounded power.
    sol.status = PairStatus::kPsnrInfeasible;
    return sol;
  }
  sol.status = PairStatus::kFeasible;
  sol.power_w = power.total_w;
  sol.per_subchannel_w = std::move(power.per_subchannel_w);
  return sol;
}

PowerMatrix build_power_matrix(const Scenario& scenario, const PsnrModel& model,
                               std::optional<double> pinned_cr, double snr_tol_db) {
  const SystemConfig& config = scenario.config;
  PowerMatrix pm;
  pm.num_users = config.num_users;
  pm.num_rbs = config.num_rbs;
  pm.entries.resize(static_cast<std::size_t>(pm.num_users) * pm.num_rbs);
  for (int k = 0; k < pm.num_users; ++k) {
    for (int m = 0; m < pm.num_rbs; ++m) {
      pm.at(k, m) = solve_p2(scenario.users[k], m, model, config, pinned_cr, snr_tol_db);
    }
  }
  return pm;
}

void write_power_matrix_csv(const PowerMatrix& pm, std::ostream& out) {
  out << "user,rb,cr,snr_db,power_w,status\n";
  char buf[160];
  for (int k = 0; k < pm.num_users; ++k) {
    for (int m = 0; m < pm.num_rbs; ++m) {
      const PairSolution& s = pm.at(k, m);
      if (s.feasible()) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.15g,%.15g,%.15g,%s\n", k, m, s.cr, s.snr_db,
                      s.power_w, to_string(s.status));
      } else if (s.status == PairStatus::kPsnrInfeasible) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.15g,,,%s\n", k, m, s.cr, to_string(s.status));
      } else {
        std::snprintf(buf, sizeof(buf), "%d,%d,,,,%s\n", k, m, to_string(s.status));
      }
      out << buf;
    }
  }
}

}  // namespace jscc
