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

#include "jsccalloc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "jsccalloc/errors.hpp"
#include "jsccalloc/rng.hpp"

namespace jscc {

namespace {

using nlohmann::json;

// Seed-space tags so scenario, pairing and class draws never collide.
constexpr std::uint64_t kDropTag = 0x64726f70ULL;
constexpr std::uint64_t kPairTag = 0x70616972ULL;
constexpr std::uint64_t kClassTag = 0x636c7373ULL;

double parse_ratio(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw ConfigError("not a ratio: '" + text + "'");
  }
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  double ratio_sum = 0.0;
  int count = 0;       // drops aggregated
  int ratio_count = 0; // drops with a nonempty class population

  void add(int supported, int population) {
    sum += supported;
    sum_sq += static_cast<double>(supported) * supported;
    ++count;
    if (population > 0) {
      ratio_sum += static_cast<double>(supported) / population;
      ++ratio_count;
    }
  }
};

}  // namespace

Method Method::parse(const std::string& name) {
  Method m;
  m.name = name;
  if (name == "optimal") {
    m.kind = Kind::kOptimal;
  } else if (name == "hungarian") {
    m.kind = Kind::kHungarian;
  } else if (name == "random") {
    m.kind = Kind::kRandom;
  } else if (name == "uniform") {
    m.kind = Kind::kUniform;
  } else if (name.rfind("fixed-cr:", 0) == 0) {
    m.kind = Kind::kFixedCr;
    m.fixed_cr = parse_ratio(name.substr(9));
  } else {
    throw ConfigError("unknown method: '" + name + "'");
  }
  return m;
}

const char* to_string(SweptVariable v) {
  switch (v) {
    case SweptVariable::kBsPower:
      return "bs_power";
    case SweptVariable::kDelayClasses:
      return "delay_classes";
    case SweptVariable::kPsnrClasses:
      return "psnr_classes";
    case SweptVariable::kUserCount:
      return "user_count";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  base_config.validate();
  if (values.empty()) throw ConfigError("sweep values must be nonempty");
  if (num_drops < 1) throw ConfigError("num_drops must be >= 1");
  if (methods.empty()) throw ConfigError("sweep needs at least one method");
  for (const std::string& name : methods) Method::parse(name);
  if (swept == SweptVariable::kDelayClasses && delay_classes_s.empty()) {
    throw ConfigError("delay_classes sweep needs delay_classes_s");
  }
  if (swept == SweptVariable::kPsnrClasses && psnr_classes_db.empty()) {
    throw ConfigError("psnr_classes sweep needs psnr_classes_db");
  }
  if (swept == SweptVariable::kUserCount) {
    for (double v : values) {
      if (v < 0.0 || v != std::floor(v)) throw ConfigError("user_count values must be integers");
    }
  }
}

namespace {

struct ClassSetup {
  std::vector<double> class_values;  // empty -> single "all" class
  std::vector<std::string> labels;
  std::vector<int> user_class;  // per user, index into class_values (or 0)
};

ClassSetup assign_classes(const SweepSpec& spec, Scenario& scenario, std::uint64_t drop) {
  ClassSetup setup;
  if (spec.swept == SweptVariable::kDelayClasses) {
    setup.class_values = spec.delay_classes_s;
    for (double v : setup.class_values) setup.labels.push_back(format_g(v * 1e3) + "ms");
  } else if (spec.swept == SweptVariable::kPsnrClasses) {
    setup.class_values = spec.psnr_classes_db;
    for (double v : setup.class_values) setup.labels.push_back(format_g(v) + "dB");
  } else {
    setup.labels = {"all"};
    setup.user_class.assign(scenario.users.size(), 0);
    return setup;
  }

  rng::Stream stream(rng::substream_seed(spec.master_seed ^ kClassTag, drop));
  setup.user_class.resize(scenario.users.size());
  for (std::size_t k = 0; k < scenario.users.size(); ++k) {
    int cls = static_cast<int>(stream.uniform_index(setup.class_values.size()));
    setup.user_class[k] = cls;
    if (spec.swept == SweptVariable::kDelayClasses) {
      scenario.users[k].delay_bound_s = setup.class_values[cls];
      scenario.users[k].psnr_bound_db = spec.fixed_psnr_db;
    } else {
      scenario.users[k].delay_bound_s = spec.fixed_delay_s;
      scenario.users[k].psnr_bound_db = setup.class_values[cls];
    }
  }
  return setup;
}

AllocationResult run_method(const Method& method, const Scenario& scenario,
                            const PowerMatrix& pm,
                            const std::map<std::int64_t, PowerMatrix>& fixed_matrices,
                            const PsnrModel& model, const SweepSpec& spec,
                            std::uint64_t pairing_seed) {
  switch (method.kind) {
    case Method::Kind::kOptimal:
      return solve_capacity_with_matrix(scenario, pm, model, spec.backend);
    case Method::Kind::kHungarian:
      return hungarian_greedy_with_matrix(scenario, pm, model);
    case Method::Kind::kRandom:
      return random_pairing_with_matrix(scenario, pm, model, pairing_seed);
    case Method::Kind::kUniform:
      return uniform_power_with_matrix(scenario, pm, model, pairing_seed, spec.uniform_share);
    case Method::Kind::kFixedCr: {
      auto it = fixed_matrices.find(std::llround(method.fixed_cr * 1e12));
      return solve_capacity_with_matrix(scenario, it->second, model, spec.backend);
    }
  }
  throw ConfigError("unhandled method kind");
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  PsnrModel model = PsnrModel::synthetic_default();
  return run_sweep_with_model(spec, model);
}

SweepResult run_sweep_with_model(const SweepSpec& spec, const PsnrModel& model) {
  spec.validate();
  std::vector<Method> methods;
  for (const std::string& name : spec.methods) methods.push_back(Method::parse(name));
  bool budget_axis = spec.swept != SweptVariable::kUserCount;

  // accumulators[method][value][class]
  std::vector<std::vector<std::vector<Accumulator>>> acc(methods.size());

  std::vector<std::string> class_labels;
  for (int drop = 0; drop < spec.num_drops; ++drop) {
    std::uint64_t drop_seed =
        rng::substream_seed(spec.master_seed ^ kDropTag, static_cast<std::uint64_t>(drop));
    std::uint64_t pairing_seed =
        rng::substream_seed(spec.master_seed ^ kPairTag, static_cast<std::uint64_t>(drop));

    // On the budget axis the channel realization is shared by all points.
    Scenario scenario;
    ClassSetup classes;
    PowerMatrix pm;
    std::map<std::int64_t, PowerMatrix> fixed_matrices;
    auto prepare = [&](const SystemConfig& config) {
      scenario = generate_scenario(config);
      classes = assign_classes(spec, scenario, static_cast<std::uint64_t>(drop));
      pm = build_power_matrix(scenario, model);
      fixed_matrices.clear();
      for (const Method& method : methods) {
        if (method.kind == Method::Kind::kFixedCr) {
          std::int64_t key = std::llround(method.fixed_cr * 1e12);
          if (!fixed_matrices.count(key)) {
            fixed_matrices.emplace(key,
                                   build_power_matrix(scenario, model, method.fixed_cr));
          }
        }
      }
    };
    if (budget_axis) {
      SystemConfig config = spec.base_config;
      config.rng_seed = drop_seed;
      prepare(config);
    }

    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
      Scenario run_scenario;
      const PowerMatrix* run_pm = &pm;
      if (budget_axis) {
        run_scenario = scenario;
        run_scenario.config.bs_power_budget_w = spec.values[vi];
      } else {
        SystemConfig config = spec.base_config;
        config.num_users = static_cast<int>(spec.values[vi]);
        config.rng_seed = drop_seed;
        prepare(config);
        run_scenario = scenario;
      }

      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        AllocationResult result = run_method(methods[mi], run_scenario, *run_pm, fixed_matrices,
                                             model, spec, pairing_seed);
        // Tally per class.
        std::size_t n_classes = classes.labels.size();
        if (acc[mi].size() < spec.values.size()) acc[mi].resize(spec.values.size());
        if (acc[mi][vi].size() < n_classes) acc[mi][vi].resize(n_classes);
        for (std::size_t ci = 0; ci < n_classes; ++ci) {
          int population = 0;
          int supported = 0;
          for (std::size_t k = 0; k < run_scenario.users.size(); ++k) {
            if (classes.user_class[k] != static_cast<int>(ci)) continue;
            ++population;
            supported += result.utilities[k];
          }
          acc[mi][vi][ci].add(supported, population);
        }
      }
    }
    class_labels = classes.labels;
  }

  SweepResult out;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
      for (std::size_t ci = 0; ci < class_labels.size(); ++ci) {
        const Accumulator& a = acc[mi][vi][ci];
        SweepRow row;
        row.method = methods[mi].name;
        row.swept_var = to_string(spec.swept);
        row.swept_value = spec.values[vi];
        row.class_label = class_labels[ci];
        row.num_drops = a.count;
        if (a.count > 0) {
          row.mean_supported = a.sum / a.count;
          double variance = std::max(0.0, a.sum_sq / a.count - row.mean_supported * row.mean_supported);
          row.std_supported = std::sqrt(variance);
        }
        if (a.ratio_count > 0) row.mean_access_ratio = a.ratio_sum / a.ratio_count;
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

SweepResult class_sweep_delay(SweepSpec spec) {
  spec.swept = SweptVariable::kDelayClasses;
  return run_sweep(spec);
}

SweepResult class_sweep_psnr(SweepSpec spec) {
  spec.swept = SweptVariable::kPsnrClasses;
  return run_sweep(spec);
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << "method,swept_var,swept_value,class,mean_supported,mean_access_ratio,"
         "std_supported,num_drops\n";
  char buf[256];
  for (const SweepRow& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.15g,%s,%.15g,%.15g,%.15g,%d\n", row.method.c_str(),
                  row.swept_var.c_str(), row.swept_value, row.class_label.c_str(),
                  row.mean_supported, row.mean_access_ratio, row.std_supported, row.num_drops);
    out << buf;
  }
}

void emit_csv_file(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot open output file: " + path);
  emit_csv(result, out);
}

SweepResult parse_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    SweepRow row;
    std::string value, mean_s, ratio, std_s, drops;
    if (!std::getline(fields, row.method, ',') || !std::getline(fields, row.swept_var, ',') ||
        !std::getline(fields, value, ',') || !std::getline(fields, row.class_label, ',') ||
        !std::getline(fields, mean_s, ',') || !std::getline(fields, ratio, ',') ||
        !std::getline(fields, std_s, ',') || !std::getline(fields, drops)) {
      throw ParseError("CSV row with missing fields: " + line);
    }
    row.swept_value = std::stod(value);
    row.mean_supported = std::stod(mean_s);
    row.mean_access_ratio = std::stod(ratio);
    row.std_supported = std::stod(std_s);
    row.num_drops = std::stoi(drops);
    result.rows.push_back(std::move(row));
  }
  return result;
}

SweepSpec load_sweep_spec(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  SweepSpec spec;
  {
    std::stringstream config_text;
    if (!j.contains("base_config")) throw ParseError("missing field: base_config");
    config_text << j["base_config"].dump();
    spec.base_config = load_system_config(config_text);
  }
  std::string swept = j.value("swept", "bs_power");
  if (swept == "bs_power") {
    spec.swept = SweptVariable::kBsPower;
  } else if (swept == "delay_classes") {
    spec.swept = SweptVariable::kDelayClasses;
  } else if (swept == "psnr_classes") {
    spec.swept = SweptVariable::kPsnrClasses;
  } else if (swept == "user_count") {
    spec.swept = SweptVariable::kUserCount;
  } else {
    throw ConfigError("unknown swept variable: '" + swept + "'");
  }
  if (!j.contains("values") || !j["values"].is_array()) throw ParseError("missing field: values");
  spec.values = j["values"].get<std::vector<double>>();
  if (j.contains("delay_classes_ms")) {
    for (double v : j["delay_classes_ms"].get<std::vector<double>>()) {
      spec.delay_classes_s.push_back(v * 1e-3);
    }
  }
  if (j.contains("psnr_classes_db")) {
    spec.psnr_classes_db = j["psnr_classes_db"].get<std::vector<double>>();
  }
  if (j.contains("fixed_psnr_db")) spec.fixed_psnr_db = j["fixed_psnr_db"].get<double>();
  if (j.contains("fixed_delay_ms")) spec.fixed_delay_s = j["fixed_delay_ms"].get<double>() * 1e-3;
  spec.num_drops = j.value("num_drops", 100);
  if (!j.contains("methods") || !j["methods"].is_array()) throw ParseError("missing field: methods");
  spec.methods = j["methods"].get<std::vector<std::string>>();
  spec.master_seed = j.value("master_seed", 1ULL);
  if (j.contains("uniform_share")) {
    std::string share = j["uniform_share"].get<std::string>();
    if (share == "per_user") {
      spec.uniform_share = UniformShare::kPerUser;
    } else if (share == "per_rb") {
      spec.uniform_share = UniformShare::kPerRb;
    } else {
      throw ConfigError("unknown uniform_share: '" + share + "'");
    }
  }
  if (j.contains("backend")) {
    std::string backend = j["backend"].get<std::string>();
    if (backend == "flow") {
      spec.backend = Backend::kFlow;
    } else if (backend == "lp") {
      spec.backend = Backend::kLp;
    } else {
      throw ConfigError("unknown backend: '" + backend + "'");
    }
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sweep spec: " + path);
  return load_sweep_spec(in);
}

}  // namespace jscc
