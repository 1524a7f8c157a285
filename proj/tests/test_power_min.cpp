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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "jsccalloc/power_min.hpp"
#include "jsccalloc/rng.hpp"
#include "support/oracles.hpp"

using namespace jscc;

namespace {

SystemConfig reference_config() {
  SystemConfig c = SystemConfig::defaults();
  c.num_users = 1;
  c.num_rbs = 1;
  c.num_subchannels = 3;
  c.subchannels_per_rb = 3;
  return c;
}

User flat_user(const SystemConfig& c, double gain_sq, double delay_s = 5e-3,
               double eta_db = 22.0) {
  User u;
  u.id = 0;
  u.distance_m = 100.0;
  u.delay_bound_s = delay_s;
  u.psnr_bound_db = eta_db;
  u.channel_gain_sq.assign(c.num_subchannels, gain_sq);
  return u;
}

}  // namespace

TEST_CASE("o_max and the chosen ratio match the hand-evaluated point") {
  // T = 5 ms, S0 = 3, T0 = 33.3 us, D = 3072.
  SystemConfig c = reference_config();
  User u = flat_user(c, 1e-11);
  MaxCr r = max_feasible_cr(u, c);
  REQUIRE(r.feasible);
  CHECK(r.o_max == doctest::Approx(0.14663100600600598).epsilon(1e-12));
  CHECK(r.cr == doctest::Approx(7.0 / 48.0).epsilon(1e-12));
  CHECK(r.cr == c.cr_set[6]);
}

TEST_CASE("a delay bound below the smallest ratio is latency-infeasible") {
  SystemConfig c = reference_config();
  // 1/48 needs D*T0/(48*S0) = 0.71 ms; pick something tighter.
  User u = flat_user(c, 1e-11, /*delay_s=*/0.5e-3);
  CHECK_FALSE(max_feasible_cr(u, c).feasible);
}

TEST_CASE("a loose delay bound saturates at the largest ratio") {
  SystemConfig c = reference_config();
  User u = flat_user(c, 1e-11, /*delay_s=*/50e-3);
  MaxCr r = max_feasible_cr(u, c);
  REQUIRE(r.feasible);
  CHECK(r.cr == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("transmission delay matches the hand-evaluated point and is linear") {
  SystemConfig c = reference_config();
  CHECK(transmission_delay(1.0 / 6.0, c) == doctest::Approx(5.6832e-3).epsilon(1e-12));
  double base = transmission_delay(1.0 / 24.0, c);
  CHECK(transmission_delay(2.0 / 24.0, c) == doctest::Approx(2.0 * base).epsilon(1e-14));
}

TEST_CASE("the chosen ratio always respects the delay bound") {
  SystemConfig c = reference_config();
  rng::Stream stream(5);
  for (int trial = 0; trial < 200; ++trial) {
    User u = flat_user(c, 1e-11, stream.uniform(0.8e-3, 7e-3));
    MaxCr r = max_feasible_cr(u, c);
    if (r.feasible) CHECK(transmission_delay(r.cr, c) <= u.delay_bound_s * (1 + 1e-12));
  }
}

TEST_CASE("per-sub-channel powers match the hand-evaluated point") {
  // |h|^2 = 1e-10 on 3 sub-channels, N0 = 3.981e-15 W, snr = 10 dB.
  SystemConfig c = reference_config();
  c.noise_power_w = 3.981e-15;
  User u = flat_user(c, 1e-10);
  RbPower p = rb_power_for_snr(u, 0, 10.0, c);
  REQUIRE(p.feasible);
  REQUIRE(p.per_subchannel_w.size() == 3);
  for (double v : p.per_subchannel_w) {
    CHECK(v == doctest::Approx(3.981e-4).epsilon(1e-12));
  }
  CHECK(p.total_w == doctest::Approx(1.1943e-3).epsilon(1e-12));
}

TEST_CASE("power vanishes as snr goes very low and scales inversely with gain") {
  SystemConfig c = reference_config();
  User u = flat_user(c, 1e-10);
  CHECK(rb_power_for_snr(u, 0, -300.0, c).total_w < 1e-40);

  User v = u;
  v.channel_gain_sq[1] *= 2.0;
  RbPower pu = rb_power_for_snr(u, 0, 10.0, c);
  RbPower pv = rb_power_for_snr(v, 0, 10.0, c);
  CHECK(pv.per_subchannel_w[1] == doctest::Approx(0.5 * pu.per_subchannel_w[1]).epsilon(1e-14));
  CHECK(pv.per_subchannel_w[0] == pu.per_subchannel_w[0]);
  CHECK(pv.per_subchannel_w[2] == pu.per_subchannel_w[2]);
}

TEST_CASE("zero gain on a sub-channel is infeasible") {
  SystemConfig c = reference_config();
  User u = flat_user(c, 1e-10);
  u.channel_gain_sq[2] = 0.0;
  CHECK_FALSE(rb_power_for_snr(u, 0, 10.0, c).feasible);
}

TEST_CASE("solve_p2 propagates infeasibility with its reason") {
  PsnrModel model = PsnrModel::synthetic_default();
  SystemConfig c = reference_config();

  User latency = flat_user(c, 1e-11, /*delay_s=*/0.5e-3);
  CHECK(solve_p2(latency, 0, model, c).status == PairStatus::kLatencyInfeasible);

  User quality = flat_user(c, 1e-11, /*delay_s=*/5e-3, /*eta_db=*/35.0);
  CHECK(solve_p2(quality, 0, model, c).status == PairStatus::kPsnrInfeasible);

  User zero_gain = flat_user(c, 0.0);
  CHECK(solve_p2(zero_gain, 0, model, c).status == PairStatus::kPsnrInfeasible);
}

TEST_CASE("feasible pair solutions satisfy both constraints and sum their parts") {
  PsnrModel model = PsnrModel::synthetic_default();
  SystemConfig c = reference_config();
  rng::Stream stream(11);
  for (int trial = 0; trial < 200; ++trial) {
    User u = flat_user(c, std::pow(10.0, stream.uniform(-13.0, -10.0)),
                       stream.uniform(4e-3, 6e-3), stream.uniform(20.0, 25.0));
    PairSolution s = solve_p2(u, 0, model, c);
    if (!s.feasible()) continue;
    CHECK(transmission_delay(s.cr, c) <= u.delay_bound_s * (1 + 1e-12));
    CHECK(model.evaluate(s.cr, s.snr_db) >= u.psnr_bound_db);
    double sum = 0.0;
    for (double v : s.per_subchannel_w) {
      CHECK(v > 0.0);
      sum += v;
    }
    CHECK(s.power_w == doctest::Approx(sum).epsilon(1e-14));
  }
}

TEST_CASE("solve_p2 is within 1% of the exhaustive (cr x snr grid) minimum") {
  PsnrModel model = PsnrModel::synthetic_default();
  SystemConfig c = reference_config();
  rng::Stream stream(13);
  int feasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    User u = flat_user(c, std::pow(10.0, stream.uniform(-13.0, -10.0)),
                       stream.uniform(4e-3, 6e-3), stream.uniform(20.0, 25.0));
    PairSolution s = solve_p2(u, 0, model, c);
    auto scanned = testing::scan_min_pair_power(u, 0, model, c);
    if (!s.feasible()) {
      CHECK_FALSE(scanned.has_value());
      continue;
    }
    ++feasible_seen;
    REQUIRE(scanned.has_value());
    CHECK(s.power_w <= *scanned * 1.01);
  }
  CHECK(feasible_seen > 100);
}

TEST_CASE("restricting the cr set never lowers the required power") {
  PsnrModel model = PsnrModel::synthetic_default();
  SystemConfig base = reference_config();
  rng::Stream stream(17);
  for (int trial = 0; trial < 100; ++trial) {
    User u = flat_user(base, std::pow(10.0, stream.uniform(-12.0, -10.0)),
                       stream.uniform(4e-3, 6e-3), stream.uniform(20.0, 24.0));
    PairSolution full = solve_p2(u, 0, model, base);
    if (!full.feasible()) continue;
    SystemConfig restricted = base;
    restricted.cr_set.pop_back();
    restricted.cr_set.pop_back();  // drop the two largest ratios
    PairSolution r = solve_p2(u, 0, model, restricted);
    if (r.feasible()) CHECK(r.power_w >= full.power_w * (1 - 1e-9));
  }
}

TEST_CASE("the power matrix is the elementwise solve and exports cleanly") {
  PsnrModel model = PsnrModel::synthetic_default();
  rng::Stream stream(19);
  Scenario s = testing::tiny_scenario(stream, 3, 4);
  PowerMatrix pm = build_power_matrix(s, model);
  REQUIRE(pm.num_users == 3);
  REQUIRE(pm.num_rbs == 4);
  for (int k = 0; k < 3; ++k) {
    for (int m = 0; m < 4; ++m) {
      PairSolution direct = solve_p2(s.users[k], m, model, s.config);
      CHECK(pm.at(k, m).status == direct.status);
      if (direct.feasible()) CHECK(pm.at(k, m).power_w == direct.power_w);
    }
  }
  std::stringstream csv;
  write_power_matrix_csv(pm, csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "user,rb,cr,snr_db,power_w,status");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 12);
}

TEST_CASE("an empty scenario yields an empty matrix") {
  PsnrModel model = PsnrModel::synthetic_default();
  rng::Stream stream(23);
  Scenario s = testing::tiny_scenario(stream, 0, 3);
  PowerMatrix pm = build_power_matrix(s, model);
  CHECK(pm.entries.empty());
}
