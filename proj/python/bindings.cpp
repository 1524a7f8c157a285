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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jsccalloc/baselines.hpp"
#include "jsccalloc/capacity.hpp"
#include "jsccalloc/experiments.hpp"
#include "jsccalloc/psnr_model.hpp"
#include "jsccalloc/scenario.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Downlink JSCC resource allocation: optimal and baseline allocators.";

  py::class_<jscc::SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("num_users", &jscc::SystemConfig::num_users)
      .def_readwrite("num_rbs", &jscc::SystemConfig::num_rbs)
      .def_readwrite("num_subchannels", &jscc::SystemConfig::num_subchannels)
      .def_readwrite("subchannels_per_rb", &jscc::SystemConfig::subchannels_per_rb)
      .def_readwrite("bandwidth_hz", &jscc::SystemConfig::bandwidth_hz)
      .def_readwrite("symbol_duration_s", &jscc::SystemConfig::symbol_duration_s)
      .def_readwrite("noise_power_w", &jscc::SystemConfig::noise_power_w)
      .def_readwrite("bs_power_budget_w", &jscc::SystemConfig::bs_power_budget_w)
      .def_readwrite("cell_radius_m", &jscc::SystemConfig::cell_radius_m)
      .def_readwrite("source_symbols", &jscc::SystemConfig::source_symbols)
      .def_readwrite("cr_set", &jscc::SystemConfig::cr_set)
      .def_readwrite("rng_seed", &jscc::SystemConfig::rng_seed)
      .def("validate", &jscc::SystemConfig::validate);

  py::class_<jscc::User>(m, "User")
      .def_readonly("id", &jscc::User::id)
      .def_readonly("distance_m", &jscc::User::distance_m)
      .def_readwrite("delay_bound_s", &jscc::User::delay_bound_s)
      .def_readwrite("psnr_bound_db", &jscc::User::psnr_bound_db)
      .def_readonly("channel_gain_sq", &jscc::User::channel_gain_sq);

  py::class_<jscc::Scenario>(m, "Scenario")
      .def_readwrite("config", &jscc::Scenario::config)
      .def_readonly("users", &jscc::Scenario::users)
      .def("validate", &jscc::Scenario::validate);

  py::class_<jscc::PsnrModel>(m, "PsnrModel")
      .def("evaluate", &jscc::PsnrModel::evaluate, py::arg("cr"), py::arg("snr_db"))
      .def(
          "min_snr_for_psnr",
          [](const jscc::PsnrModel& model, double cr, double eta_db, double tol_db) {
            auto r = model.min_snr_for_psnr(cr, eta_db, tol_db);
            return r.feasible ? py::object(py::float_(r.snr_db)) : py::object(py::none());
          },
          py::arg("cr"), py::arg("eta_db"), py::arg("tol_db") = 0.01)
      .def_property_readonly("cr_grid", &jscc::PsnrModel::cr_grid)
      .def_property_readonly("snr_grid_db", &jscc::PsnrModel::snr_grid_db);

  py::enum_<jscc::Backend>(m, "Backend")
      .value("FLOW", jscc::Backend::kFlow)
      .value("LP", jscc::Backend::kLp);

  py::enum_<jscc::UniformShare>(m, "UniformShare")
      .value("PER_USER", jscc::UniformShare::kPerUser)
      .value("PER_RB", jscc::UniformShare::kPerRb);

  py::class_<jscc::UserAllocation>(m, "UserAllocation")
      .def_readonly("user", &jscc::UserAllocation::user)
      .def_readonly("rb", &jscc::UserAllocation::rb)
      .def_readonly("cr", &jscc::UserAllocation::cr)
      .def_readonly("snr_db", &jscc::UserAllocation::snr_db)
      .def_readonly("power_w", &jscc::UserAllocation::power_w);

  py::class_<jscc::AllocationResult>(m, "AllocationResult")
      .def_readonly("supported", &jscc::AllocationResult::supported)
      .def_readonly("pairs", &jscc::AllocationResult::pairs)
      .def_readonly("total_power_w", &jscc::AllocationResult::total_power_w)
      .def_readonly("utilities", &jscc::AllocationResult::utilities);

  py::class_<jscc::SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("base_config", &jscc::SweepSpec::base_config)
      .def_readwrite("values", &jscc::SweepSpec::values)
      .def_readwrite("num_drops", &jscc::SweepSpec::num_drops)
      .def_readwrite("methods", &jscc::SweepSpec::methods)
      .def_readwrite("master_seed", &jscc::SweepSpec::master_seed);

  m.def("default_config", &jscc::SystemConfig::defaults);
  m.def("generate_scenario", &jscc::generate_scenario, py::arg("config"));
  m.def("load_scenario_file", &jscc::load_scenario_file, py::arg("path"));
  m.def("save_scenario_file", &jscc::save_scenario_file, py::arg("scenario"), py::arg("path"));
  m.def("synthetic_default_model", &jscc::PsnrModel::synthetic_default);
  m.def("load_model_file", &jscc::load_model_file, py::arg("path"));
  m.def("solve_capacity", &jscc::solve_capacity, py::arg("scenario"), py::arg("model"),
        py::arg("backend") = jscc::Backend::kFlow);
  m.def("hungarian_greedy", &jscc::hungarian_greedy, py::arg("scenario"), py::arg("model"));
  m.def("random_pairing", &jscc::random_pairing, py::arg("scenario"), py::arg("model"),
        py::arg("seed"));
  m.def("uniform_power", &jscc::uniform_power, py::arg("scenario"), py::arg("model"),
        py::arg("seed"), py::arg("share") = jscc::UniformShare::kPerUser);
  m.def("fixed_cr", &jscc::fixed_cr, py::arg("scenario"), py::arg("model"), py::arg("cr"),
        py::arg("backend") = jscc::Backend::kFlow);
  m.def(
      "brute_force_p1",
      [](const jscc::Scenario& s, const jscc::PsnrModel& model, double snr_step_db) {
        jscc::BruteForceOptions opts;
        opts.snr_step_db = snr_step_db;
        return jscc::brute_force_p1(s, model, opts);
      },
      py::arg("scenario"), py::arg("model"), py::arg("snr_step_db") = 0.25);
  m.def("run_sweep", &jscc::run_sweep, py::arg("spec"));
  m.def("sweep_to_csv", [](const jscc::SweepSpec& spec) {
    jscc::SweepResult result = jscc::run_sweep(spec);
    std::ostringstream out;
    jscc::emit_csv(result, out);
    return out.str();
  });
}
