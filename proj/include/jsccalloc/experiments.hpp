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

#ifndef JSCCALLOC_EXPERIMENTS_HPP_
#define JSCCALLOC_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jsccalloc/baselines.hpp"
#include "jsccalloc/capacity.hpp"
#include "jsccalloc/scenario.hpp"

namespace jscc {

// Allocator selector parsed from its CLI/spec name: "optimal", "hungarian",
// "random", "uniform", or "fixed-cr:<ratio>" (ratio as a decimal or p/q).
struct Method {
  enum class Kind { kOptimal, kHungarian, kRandom, kUniform, kFixedCr };
  Kind kind = Kind::kOptimal;
  double fixed_cr = 0.0;
  std::string name;  // canonical spelling

  static Method parse(const std::string& name);  // throws ConfigError on unknown names
};

enum class SweptVariable { kBsPower, kDelayClasses, kPsnrClasses, kUserCount };

const char* to_string(SweptVariable v);

struct SweepSpec {
  SystemConfig base_config;
  SweptVariable swept = SweptVariable::kBsPower;
  std::vector<double> values;  // budget points in W, or user counts
  std::vector<double> delay_classes_s;  // used when swept == kDelayClasses
  std::vector<double> psnr_classes_db;  // used when swept == kPsnrClasses
  double fixed_psnr_db = 24.0;   // common quality bound for the delay-class sweep
  double fixed_delay_s = 5e-3;   // common delay bound for the quality-class sweep
  int num_drops = 100;
  std::vector<std::string> methods;
  std::uint64_t master_seed = 1;
  UniformShare uniform_share = UniformShare::kPerUser;
  Backend backend = Backend::kFlow;

  void validate() const;  // throws ConfigError
};

struct SweepRow {
  std::string method;
  std::string swept_var;
  double swept_value = 0.0;
  std::string class_label;  // "all" when the sweep has no classes
  double mean_supported = 0.0;
  double mean_access_ratio = 0.0;
  double std_supported = 0.0;
  int num_drops = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Monte Carlo sweep: one scenario per drop (seeded from master_seed and the
// drop index), every method applied to the identical scenario, means and
// stds aggregated per (method, swept value, class). Deterministic.
SweepResult run_sweep(const SweepSpec& spec);
SweepResult run_sweep_with_model(const SweepSpec& spec, const PsnrModel& model);

// Per-class access-ratio sweeps over the budget axis; the spec's class list
// assigns each user a delay (resp. quality) bound uniformly at random while
// the other bound is fixed.
SweepResult class_sweep_delay(SweepSpec spec);
SweepResult class_sweep_psnr(SweepSpec spec);

// CSV with header
// method,swept_var,swept_value,class,mean_supported,mean_access_ratio,std_supported,num_drops
// and 15-significant-digit numbers. Overwrites, never appends.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv_file(const SweepResult& result, const std::string& path);
SweepResult parse_csv(std::istream& in);

SweepSpec load_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec_file(const std::string& path);

}  // namespace jscc

#endif  // JSCCALLOC_EXPERIMENTS_HPP_
