// Copyright 2026 The fairsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairsched/entropy.hpp"
#include "fairsched/experiment.hpp"
#include "fairsched/io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

std::string run_cell(const std::string& config_json, const std::string& policy,
                     std::uint64_t seed, std::uint64_t run_index, bool audit) {
  const fairsched::ExperimentConfig config = fairsched::config_from_json(json::parse(config_json));
  config.validate();
  const fairsched::RunCell cell{"", fairsched::parse_policy(policy), seed, run_index};
  const fairsched::Scenario s =
      fairsched::cell_scenario(config, fairsched::saf_settings(config), cell);
  fairsched::RunResult result;
  {
    py::gil_scoped_release release;
    fairsched::EngineOptions options;
    options.detailed_audit = audit;
    result = fairsched::run(s, options);
  }
  json out;
  out["summary"] = fairsched::summary_json(fairsched::summarize(result, seed));
  json usage = json::array();
  for (const auto& sample : result.usage_series) {
    json row = json::array({sample.time});
    for (double v : sample.allocated.values()) row.push_back(v);
    usage.push_back(std::move(row));
  }
  out["usage"] = std::move(usage);
  json decisions = json::array();
  for (const auto& d : result.decisions) decisions.push_back(fairsched::decision_json(d));
  out["decisions"] = std::move(decisions);
  return out.dump();
}

double entropy_of(const std::vector<double>& fitness, const std::string& estimator) {
  return fairsched::temperature(fitness, fairsched::parse_estimator(estimator));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the fairsched simulator.";
  py::register_exception<fairsched::ConfigError>(m, "ConfigError", PyExc_ValueError);
  m.def("run_cell", &run_cell, py::arg("config_json"), py::arg("policy"), py::arg("seed"),
        py::arg("run_index") = 0, py::arg("audit") = false,
        "Runs one (policy, seed) cell of a JSON experiment config; returns JSON text.");
  m.def("temperature", &entropy_of, py::arg("fitness"), py::arg("estimator") = "shannon",
        "Annealing temperature of a fitness population.");
  m.def("derive_seed", &fairsched::derive_seed, py::arg("base"), py::arg("label"),
        py::arg("index"));
}
