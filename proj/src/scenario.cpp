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

#include "jsccalloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "jsccalloc/errors.hpp"
#include "jsccalloc/rng.hpp"

namespace jscc {

namespace {

using nlohmann::json;

constexpr double kMinDistanceM = 1.0;  // keeps log10(d) finite

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void SystemConfig::validate() const {
  require(num_users >= 0, "num_users must be >= 0");
  require(num_rbs > 0, "num_rbs must be > 0");
  require(num_subchannels > 0, "num_subchannels must be > 0");
  require(subchannels_per_rb == num_subchannels / num_rbs,
          "subchannels_per_rb must equal floor(num_subchannels / num_rbs)");
  require(subchannels_per_rb >= 1, "subchannels_per_rb must be >= 1");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(symbol_duration_s > 0.0, "symbol_duration_s must be > 0");
  require(noise_power_w > 0.0, "noise_power_w must be > 0");
  require(bs_power_budget_w >= 0.0, "bs_power_budget_w must be >= 0");
  require(cell_radius_m > 0.0, "cell_radius_m must be > 0");
  require(source_symbols > 0, "source_symbols must be > 0");
  require(!cr_set.empty(), "cr_set must be nonempty");
  for (std::size_t i = 0; i < cr_set.size(); ++i) {
    require(cr_set[i] > 0.0 && cr_set[i] <= 1.0, "cr_set entries must lie in (0, 1]");
    if (i > 0) require(cr_set[i] > cr_set[i - 1], "cr_set must be strictly increasing");
  }
}

SystemConfig SystemConfig::defaults() {
  SystemConfig c;
  c.num_users = 30;
  c.num_rbs = 30;
  c.num_subchannels = 100;
  c.subchannels_per_rb = 3;
  c.bandwidth_hz = 3.0e6;
  c.symbol_duration_s = 33.3e-6;
  c.noise_power_w = std::pow(10.0, (-114.0 - 30.0) / 10.0);  // -114 dBm per sub-channel
  c.bs_power_budget_w = 1.0;
  c.cell_radius_m = 500.0;
  c.source_symbols = 3072;  // 32x32 RGB source
  c.cr_set = {1.0 / 48.0, 1.0 / 24.0, 1.0 / 16.0, 1.0 / 12.0,
              5.0 / 48.0, 1.0 / 8.0,  7.0 / 48.0, 1.0 / 6.0};
  c.rng_seed = 1;
  return c;
}

void Scenario::validate() const {
  config.validate();
  require(static_cast<int>(users.size()) == config.num_users,
          "users.size() must equal num_users");
  for (int k = 0; k < static_cast<int>(users.size()); ++k) {
    const User& u = users[k];
    std::string who = "users[" + std::to_string(k) + "]";
    require(u.id == k, who + ".id must be dense 0..K-1");
    require(u.distance_m > 0.0, who + ".distance_m must be > 0");
    require(u.delay_bound_s > 0.0, who + ".delay_bound_s must be > 0");
    require(std::isfinite(u.psnr_bound_db), who + ".psnr_bound_db must be finite");
    require(static_cast<int>(u.channel_gain_sq.size()) == config.num_subchannels,
            who + ".channel_gain_sq must have num_subchannels entries");
    for (double g : u.channel_gain_sq) {
      require(std::isfinite(g) && g >= 0.0, who + ".channel_gain_sq entries must be >= 0");
    }
  }
}

double pathloss_db(double distance_m) {
  double d_km = std::max(distance_m, kMinDistanceM) / 1000.0;
  return 128.1 + 37.6 * std::log10(d_km);
}

double channel_gain_sq(double pathloss_db, double shadowing_db, double fading_gain_sq) {
  return std::pow(10.0, -(pathloss_db + shadowing_db) / 10.0) * fading_gain_sq;
}

Scenario generate_scenario(const SystemConfig& config) {
  config.validate();
  Scenario s;
  s.config = config;
  s.users.reserve(config.num_users);
  for (int k = 0; k < config.num_users; ++k) {
    rng::Stream stream(rng::substream_seed(config.rng_seed, static_cast<std::uint64_t>(k)));
    User u;
    u.id = k;
    // Disk-uniform placement: radial CDF is (r/R)^2.
    u.distance_m = std::max(kMinDistanceM, config.cell_radius_m * std::sqrt(stream.uniform()));
    double shadow_db = stream.uniform(0.0, 10.0);  // extra loss
    u.delay_bound_s = stream.uniform(4.0e-3, 6.0e-3);
    u.psnr_bound_db = stream.uniform(20.0, 25.0);
    double pl_db = pathloss_db(u.distance_m);
    u.channel_gain_sq.resize(config.num_subchannels);
    for (int sub = 0; sub < config.num_subchannels; ++sub) {
      // Unit-variance circularly-symmetric Gaussian: re/im ~ N(0, 1/2).
      double z0 = 0.0, z1 = 0.0;
      stream.normal_pair(z0, z1);
      double fading_sq = 0.5 * (z0 * z0 + z1 * z1);
      u.channel_gain_sq[sub] = channel_gain_sq(pl_db, shadow_db, fading_sq);
    }
    s.users.push_back(std::move(u));
  }
  return s;
}

namespace {

double get_number(const json& j, const std::string& path) {
  const json* node = &j;
  std::istringstream keys(path);
  std::string key;
  while (std::getline(keys, key, '.')) {
    if (!node->contains(key)) throw ParseError("missing field: " + path);
    node = &(*node)[key];
  }
  if (!node->is_number()) throw ParseError("field is not a number: " + path);
  return node->get<double>();
}

json config_to_json(const SystemConfig& c) {
  return json{{"num_users", c.num_users},
              {"num_rbs", c.num_rbs},
              {"num_subchannels", c.num_subchannels},
              {"subchannels_per_rb", c.subchannels_per_rb},
              {"bandwidth_hz", c.bandwidth_hz},
              {"symbol_duration_s", c.symbol_duration_s},
              {"noise_power_w", c.noise_power_w},
              {"bs_power_budget_w", c.bs_power_budget_w},
              {"cell_radius_m", c.cell_radius_m},
              {"source_symbols", c.source_symbols},
              {"cr_set", c.cr_set},
              {"rng_seed", c.rng_seed}};
}

SystemConfig config_from_json(const json& j) {
  SystemConfig c;
  c.num_users = static_cast<int>(get_number(j, "num_users"));
  c.num_rbs = static_cast<int>(get_number(j, "num_rbs"));
  c.num_subchannels = static_cast<int>(get_number(j, "num_subchannels"));
  if (j.contains("subchannels_per_rb")) {
    c.subchannels_per_rb = static_cast<int>(get_number(j, "subchannels_per_rb"));
  } else if (c.num_rbs > 0) {
    c.subchannels_per_rb = c.num_subchannels / c.num_rbs;
  }
  c.bandwidth_hz = get_number(j, "bandwidth_hz");
  c.symbol_duration_s = get_number(j, "symbol_duration_s");
  c.noise_power_w = get_number(j, "noise_power_w");
  c.bs_power_budget_w = get_number(j, "bs_power_budget_w");
  c.cell_radius_m = get_number(j, "cell_radius_m");
  c.source_symbols = static_cast<std::int64_t>(get_number(j, "source_symbols"));
  if (!j.contains("cr_set") || !j["cr_set"].is_array()) {
    throw ParseError("missing field: cr_set");
  }
  for (const auto& v : j["cr_set"]) {
    if (v.is_string()) {
      // Accept "p/q" rationals alongside plain numbers.
      const std::string text = v.get<std::string>();
      auto slash = text.find('/');
      try {
        if (slash == std::string::npos) {
          c.cr_set.push_back(std::stod(text));
        } else {
          c.cr_set.push_back(std::stod(text.substr(0, slash)) /
                             std::stod(text.substr(slash + 1)));
        }
      } catch (const std::exception&) {
        throw ParseError("cr_set entry is not a number or p/q rational: " + text);
      }
    } else if (v.is_number()) {
      c.cr_set.push_back(v.get<double>());
    } else {
      throw ParseError("cr_set entries must be numbers or p/q strings");
    }
  }
  c.rng_seed = j.contains("rng_seed") ? j["rng_seed"].get<std::uint64_t>() : 0;
  return c;
}

}  // namespace

SystemConfig load_system_config(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j.contains("config") ? j["config"] : j);
}

SystemConfig load_system_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  return load_system_config(in);
}

Scenario load_scenario(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("config")) throw ParseError("missing field: config");
  if (!j.contains("users") || !j["users"].is_array()) throw ParseError("missing field: users");

  Scenario s;
  s.config = config_from_json(j["config"]);
  for (std::size_t i = 0; i < j["users"].size(); ++i) {
    const json& ju = j["users"][i];
    User u;
    std::string who = "users[" + std::to_string(i) + "]";
    if (!ju.contains("id")) throw ParseError("missing field: " + who + ".id");
    u.id = ju["id"].get<int>();
    u.distance_m = get_number(ju, "distance_m");
    u.delay_bound_s = get_number(ju, "delay_bound_s");
    u.psnr_bound_db = get_number(ju, "psnr_bound_db");
    if (!ju.contains("channel_gain_sq") || !ju["channel_gain_sq"].is_array()) {
      throw ParseError("missing field: users[id=" + std::to_string(u.id) + "].channel_gain_sq");
    }
    u.channel_gain_sq = ju["channel_gain_sq"].get<std::vector<double>>();
    s.users.push_back(std::move(u));
  }
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  return load_scenario(in);
}

void save_scenario(const Scenario& s, std::ostream& out) {
  json j;
  j["config"] = config_to_json(s.config);
  j["users"] = json::array();
  for (const User& u : s.users) {
    j["users"].push_back(json{{"id", u.id},
                              {"distance_m", u.distance_m},
                              {"delay_bound_s", u.delay_bound_s},
                              {"psnr_bound_db", u.psnr_bound_db},
                              {"channel_gain_sq", u.channel_gain_sq}});
  }
  out << j.dump(1) << "\n";
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  save_scenario(s, out);
}

}  // namespace jscc
