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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "jsccalloc/baselines.hpp"
#include "jsccalloc/capacity.hpp"
#include "jsccalloc/experiments.hpp"
#include "jsccalloc/psnr_model.hpp"
#include "jsccalloc/scenario.hpp"

namespace {

int run_generate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
  jscc::SystemConfig config = jscc::load_system_config_file(config_path);
  if (seed) config.rng_seed = *seed;
  jscc::Scenario scenario = jscc::generate_scenario(config);
  jscc::save_scenario_file(scenario, out_path);
  std::cerr << "wrote " << out_path << " (" << config.num_users << " users, " << config.num_rbs
            << " RBs, seed " << config.rng_seed << ")\n";
  return 0;
}

int run_solve(const std::string& scenario_path, const std::string& model_path,
              const std::string& method_name, const std::string& backend_name,
              std::uint64_t pairing_seed, const std::string& out_path) {
  jscc::Scenario scenario = jscc::load_scenario_file(scenario_path);
  jscc::PsnrModel model = jscc::load_model_file(model_path);
  jscc::Backend backend = backend_name == "lp" ? jscc::Backend::kLp : jscc::Backend::kFlow;
  jscc::Method method = jscc::Method::parse(method_name);

  jscc::AllocationResult result;
  switch (method.kind) {
    case jscc::Method::Kind::kOptimal:
      result = jscc::solve_capacity(scenario, model, backend);
      break;
    case jscc::Method::Kind::kHungarian:
      result = jscc::hungarian_greedy(scenario, model);
      break;
    case jscc::Method::Kind::kRandom:
      result = jscc::random_pairing(scenario, model, pairing_seed);
      break;
    case jscc::Method::Kind::kUniform:
      result = jscc::uniform_power(scenario, model, pairing_seed);
      break;
    case jscc::Method::Kind::kFixedCr:
      result = jscc::fixed_cr(scenario, model, method.fixed_cr, backend);
      break;
  }

  if (!out_path.empty()) jscc::save_allocation_file(result, out_path);
  std::printf("J*=%d power=%.15g\n", result.supported, result.total_power_w);
  return 0;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& model_path,
                  const std::string& out_path) {
  jscc::SweepSpec spec = jscc::load_sweep_spec_file(spec_path);
  jscc::SweepResult result;
  if (model_path.empty()) {
    result = jscc::run_sweep(spec);
  } else {
    jscc::PsnrModel model = jscc::load_model_file(model_path);
    result = jscc::run_sweep_with_model(spec, model);
  }
  jscc::emit_csv_file(result, out_path);
  std::cerr << "wrote " << out_path << " (" << result.rows.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Downlink JSCC resource allocation: scenario generation, solving, sweeps"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  CLI::App* generate = app.add_subcommand("generate", "Generate a scenario file");
  generate->add_option("--config", config_path, "System config JSON")->required();
  generate->add_option("--seed", seed, "Override config rng_seed");
  generate->add_option("--out", out_path, "Output scenario path")->required();

  std::string scenario_path, model_path, method_name = "optimal", backend_name = "flow";
  std::string alloc_out;
  std::uint64_t pairing_seed = 0;
  CLI::App* solve = app.add_subcommand("solve", "Solve one scenario");
  solve->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  solve->add_option("--model", model_path, "Quality table CSV")->required();
  solve->add_option("--method", method_name,
                    "optimal|hungarian|random|uniform|fixed-cr:<ratio>");
  solve->add_option("--backend", backend_name, "flow|lp")
      ->check(CLI::IsMember({"flow", "lp"}));
  solve->add_option("--seed", pairing_seed, "Pairing seed for random/uniform");
  solve->add_option("--out", alloc_out, "Write the allocation JSON here");

  std::string spec_path, sweep_out, sweep_model;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep");
  sweep->add_option("--spec", spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--model", sweep_model, "Quality table CSV (default: built-in)");
  sweep->add_option("--out", sweep_out, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(config_path, seed, out_path);
    if (solve->parsed()) {
      return run_solve(scenario_path, model_path, method_name, backend_name, pairing_seed,
                       alloc_out);
    }
    if (sweep->parsed()) return run_sweep_cmd(spec_path, sweep_model, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
