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

#ifndef JSCCALLOC_SCENARIO_HPP_
#define JSCCALLOC_SCENARIO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jscc {

// Immutable description of one downlink OFDMA system instance. All
// quantities are linear-scale SI unless a suffix says otherwise.
struct SystemConfig {
  int num_users = 0;           // K
  int num_rbs = 0;             // M
  int num_subchannels = 0;     // S
  int subchannels_per_rb = 0;  // S0 = floor(S / M)
  double bandwidth_hz = 0.0;
  double symbol_duration_s = 0.0;  // T0, one OFDM symbol
  double noise_power_w = 0.0;      // N0 per sub-channel
  double bs_power_budget_w = 0.0;  // P
  double cell_radius_m = 0.0;
  std::int64_t source_symbols = 0;  // D_i, symbols in one source item
  std::vector<double> cr_set;       // strictly increasing, each in (0, 1]
  std::uint64_t rng_seed = 0;

  // Throws ConfigError naming the first violated invariant.
  void validate() const;

  // Default 30-user / 30-RB urban macro cell instance.
  static SystemConfig defaults();
};

struct User {
  int id = 0;
  double distance_m = 0.0;
  double delay_bound_s = 0.0;   // T_k
  double psnr_bound_db = 0.0;   // eta_k
  std::vector<double> channel_gain_sq;  // |h_{k,s}|^2, one entry per sub-channel
};

struct Scenario {
  SystemConfig config;
  std::vector<User> users;

  // Throws ConfigError on any violated invariant (counts, ids, ranges).
  void validate() const;
};

// 128.1 + 37.6 log10(d_km), the urban macro pathloss law. Distances are
// clamped to >= 1 m.
double pathloss_db(double distance_m);

// Linear |h|^2 for one sub-channel given the dB losses and the small-scale
// fading power |g|^2.
double channel_gain_sq(double pathloss_db, double shadowing_db, double fading_gain_sq);

// Draws user placement, constraints and per-sub-channel gains. Deterministic
// in (config, config.rng_seed); user k's draws depend only on (seed, k).
Scenario generate_scenario(const SystemConfig& config);

// Reads a bare SystemConfig document (or the "config" object of a scenario
// document). cr_set entries may be numbers or "p/q" strings.
SystemConfig load_system_config(std::istream& in);
SystemConfig load_system_config_file(const std::string& path);

// JSON document round trip. Layout: {"config": {...}, "users": [...]} with
// field names matching the structs above (users carry distance_m,
// delay_bound_s, psnr_bound_db, channel_gain_sq).
Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);
void save_scenario(const Scenario& s, std::ostream& out);
void save_scenario_file(const Scenario& s, const std::string& path);

}  // namespace jscc

#endif  // JSCCALLOC_SCENARIO_HPP_
