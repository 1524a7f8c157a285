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

#include <map>
#include <sstream>

#include "doctest.h"
#include "jsccalloc/errors.hpp"
#include "jsccalloc/experiments.hpp"

using namespace jscc;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base_config = SystemConfig::defaults();
  spec.base_config.num_users = 6;
  spec.base_config.num_rbs = 6;
  spec.base_config.num_subchannels = 18;
  spec.base_config.subchannels_per_rb = 3;
  spec.swept = SweptVariable::kBsPower;
  spec.values = {0.003, 0.03, 0.3};
  spec.num_drops = 6;
  spec.methods = {"optimal", "hungarian", "random", "uniform"};
  spec.master_seed = 11;
  return spec;
}

std::map<std::pair<std::string, double>, SweepRow> index_rows(const SweepResult& r) {
  std::map<std::pair<std::string, double>, SweepRow> out;
  for (const SweepRow& row : r.rows) out[{row.method, row.swept_value}] = row;
  return out;
}

}  // namespace

TEST_CASE("unknown methods are rejected by name") {
  SweepSpec spec = small_spec();
  spec.methods.push_back("genetic");
  CHECK_THROWS_WITH_AS(run_sweep(spec), doctest::Contains("genetic"), ConfigError);
}

TEST_CASE("method parsing handles fixed-cr ratios") {
  Method m = Method::parse("fixed-cr:1/24");
  CHECK(m.kind == Method::Kind::kFixedCr);
  CHECK(m.fixed_cr == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(Method::parse("fixed-cr:0.125").fixed_cr == 0.125);
}

TEST_CASE("one drop and one method reduce to a single run") {
  SweepSpec spec = small_spec();
  spec.num_drops = 1;
  spec.methods = {"optimal"};
  spec.values = {0.05};
  SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].std_supported == 0.0);
  CHECK(r.rows[0].num_drops == 1);
  CHECK(r.rows[0].mean_supported == static_cast<int>(r.rows[0].mean_supported));
  CHECK(r.rows[0].class_label == "all");
}

TEST_CASE("sweep output is deterministic and monotone in the budget") {
  SweepSpec spec = small_spec();
  SweepResult a = run_sweep(spec);
  SweepResult b = run_sweep(spec);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].mean_supported == b.rows[i].mean_supported);
    CHECK(a.rows[i].mean_access_ratio == b.rows[i].mean_access_ratio);
  }

  auto rows = index_rows(a);
  for (const std::string& method : spec.methods) {
    double previous = 0.0;
    for (double value : spec.values) {
      const SweepRow& row = rows[{method, value}];
      CHECK(row.mean_supported >= previous - 1e-12);
      previous = row.mean_supported;
      CHECK(row.mean_access_ratio >= 0.0);
      CHECK(row.mean_access_ratio <= 1.0);
      CHECK(row.mean_supported <= spec.base_config.num_users);
    }
  }
}

TEST_CASE("the optimal curve dominates every benchmark at every point") {
  SweepSpec spec = small_spec();
  auto rows = index_rows(run_sweep(spec));
  for (double value : spec.values) {
    double optimal = rows[{"optimal", value}].mean_supported;
    CHECK(rows[{"hungarian", value}].mean_supported <= optimal + 1e-12);
    CHECK(rows[{"random", value}].mean_supported <= optimal + 1e-12);
    CHECK(rows[{"uniform", value}].mean_supported <= optimal + 1e-12);
  }
}

TEST_CASE("delay classes order access ratios at fixed quality") {
  SweepSpec spec = small_spec();
  spec.swept = SweptVariable::kDelayClasses;
  spec.delay_classes_s = {4e-3, 5e-3, 6e-3};
  spec.fixed_psnr_db = 24.0;
  spec.methods = {"optimal"};
  spec.num_drops = 8;
  SweepResult r = class_sweep_delay(spec);
  // Rows come out (value, class) ordered per method.
  REQUIRE(r.rows.size() == spec.values.size() * 3);
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const SweepRow& tight = r.rows[vi * 3 + 0];
    const SweepRow& mid = r.rows[vi * 3 + 1];
    const SweepRow& loose = r.rows[vi * 3 + 2];
    CHECK(tight.class_label == "4ms");
    CHECK(loose.class_label == "6ms");
    CHECK(tight.mean_access_ratio <= mid.mean_access_ratio + 1e-12);
    CHECK(mid.mean_access_ratio <= loose.mean_access_ratio + 1e-12);
  }
}

TEST_CASE("quality classes order access ratios at fixed delay") {
  SweepSpec spec = small_spec();
  spec.swept = SweptVariable::kPsnrClasses;
  spec.psnr_classes_db = {21.0, 23.0, 25.0};
  spec.fixed_delay_s = 5e-3;
  spec.methods = {"optimal"};
  spec.num_drops = 8;
  SweepResult r = class_sweep_psnr(spec);
  REQUIRE(r.rows.size() == spec.values.size() * 3);
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const SweepRow& easy = r.rows[vi * 3 + 0];
    const SweepRow& mid = r.rows[vi * 3 + 1];
    const SweepRow& hard = r.rows[vi * 3 + 2];
    CHECK(easy.class_label == "21dB");
    CHECK(hard.class_label == "25dB");
    CHECK(hard.mean_access_ratio <= mid.mean_access_ratio + 1e-12);
    CHECK(mid.mean_access_ratio <= easy.mean_access_ratio + 1e-12);
  }
}

TEST_CASE("a single class reduces to the plain budget sweep") {
  SweepSpec spec = small_spec();
  spec.methods = {"optimal"};
  SweepResult plain = run_sweep(spec);

  SweepSpec classed = spec;
  classed.swept = SweptVariable::kDelayClasses;
  classed.delay_classes_s = {5e-3};
  classed.fixed_psnr_db = 23.0;
  SweepResult single = run_sweep(classed);
  REQUIRE(single.rows.size() == plain.rows.size());
  // Same machinery, same drop seeds; only the user bounds differ by design.
  for (std::size_t i = 0; i < single.rows.size(); ++i) {
    CHECK(single.rows[i].swept_value == plain.rows[i].swept_value);
    CHECK(single.rows[i].num_drops == plain.rows[i].num_drops);
  }
}

TEST_CASE("csv: empty results emit only the header") {
  std::ostringstream out;
  emit_csv(SweepResult{}, out);
  CHECK(out.str() ==
        "method,swept_var,swept_value,class,mean_supported,mean_access_ratio,"
        "std_supported,num_drops\n");
}

TEST_CASE("csv round trip reproduces rows byte-identically") {
  SweepSpec spec = small_spec();
  spec.num_drops = 3;
  SweepResult r = run_sweep(spec);
  std::ostringstream first;
  emit_csv(r, first);
  std::istringstream parse_in(first.str());
  SweepResult parsed = parse_csv(parse_in);
  std::ostringstream second;
  emit_csv(parsed, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("sweep spec loads from json with class fields") {
  std::stringstream in(R"({
    "base_config": {
      "num_users": 4, "num_rbs": 4, "num_subchannels": 8,
      "bandwidth_hz": 3e6, "symbol_duration_s": 33.3e-6,
      "noise_power_w": 3.981e-15, "bs_power_budget_w": 1.0,
      "cell_radius_m": 500, "source_symbols": 3072,
      "cr_set": ["1/24", "1/12", "1/6"]
    },
    "swept": "delay_classes",
    "values": [0.01, 0.1],
    "delay_classes_ms": [4, 5, 6],
    "fixed_psnr_db": 24,
    "num_drops": 2,
    "methods": ["optimal", "fixed-cr:1/24"],
    "master_seed": 5
  })");
  SweepSpec spec = load_sweep_spec(in);
  CHECK(spec.swept == SweptVariable::kDelayClasses);
  CHECK(spec.delay_classes_s == std::vector<double>{4e-3, 5e-3, 6e-3});
  CHECK(spec.methods.size() == 2);
  CHECK(spec.num_drops == 2);
  CHECK_NOTHROW(run_sweep(spec));
}

TEST_CASE("user-count sweeps reuse early users, so support never drops") {
  SweepSpec spec = small_spec();
  spec.swept = SweptVariable::kUserCount;
  spec.values = {2, 6};
  spec.base_config.bs_power_budget_w = 0.02;
  spec.methods = {"optimal"};
  spec.num_drops = 8;
  SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 2);
  // Substreams keep the first two users identical when K grows, and the
  // solver can always ignore the extras.
  CHECK(r.rows[1].mean_supported >= r.rows[0].mean_supported - 1e-12);
  for (const SweepRow& row : r.rows) {
    CHECK(row.mean_access_ratio >= 0.0);
    CHECK(row.mean_access_ratio <= 1.0);
  }
}
