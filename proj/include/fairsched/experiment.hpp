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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fairsched/engine.hpp"
#include "fairsched/metrics.hpp"
#include "fairsched/workload.hpp"

namespace fairsched {

// Bad or missing experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SourceKind { Preset, Trace, Generator };

struct ExperimentConfig {
  SourceKind source = SourceKind::Generator;
  std::string preset = "wordcount";
  std::filesystem::path trace;
  std::string generator = "uniform";  // uniform | gaussian
  std::size_t tasks = 250;
  double cpu_mean = 4.5;
  double ram_mean = 1050.0;
  std::size_t nodes = 16;
  // Overrides the default node shape for traces.
  std::optional<std::vector<double>> node_capacity;
  std::optional<std::vector<std::string>> resource_names;

  std::vector<PolicyKind> policies{PolicyKind::Drf, PolicyKind::Saf};
  std::string baseline = "drf";
  std::vector<std::uint64_t> seeds{1};

  std::optional<std::string> estimator;
  std::optional<std::string> cooling;
  std::optional<double> alpha;
  std::optional<double> k_const;
  std::optional<double> cold_fraction;

  UsageBasis usage_basis = UsageBasis::Live;
  double heartbeat = 1.0;
  bool audit = false;
  std::filesystem::path out = "out";
  std::size_t jobs = 1;

  // sweep only: estimator | cooling | node_count | task_count
  std::string sweep_dimension;
  std::vector<std::string> sweep_values;

  void validate() const;
};

/// "1..20", "3", or "1,4,9" (ranges allowed inside lists).
std::vector<std::uint64_t> parse_seeds(std::string_view spec);
std::vector<PolicyKind> parse_policy_list(std::string_view list);

/// Reads a JSON experiment document. Throws ConfigError naming the path or
/// the offending key.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Settings of one sweep cell applied on top of the base config.
ExperimentConfig apply_sweep_value(const ExperimentConfig& base, const std::string& value);

SafConfig saf_settings(const ExperimentConfig& config);

/// Workload for one seed, without policy. Trace sources are re-read per call.
Scenario build_scenario(const ExperimentConfig& config, std::uint64_t seed);

struct RunCell {
  std::string label;  // sweep value, empty for plain runs
  PolicyKind policy = PolicyKind::Drf;
  std::uint64_t seed = 0;
  std::uint64_t run_index = 0;
};

/// Complete scenario for one cell: workload, policy and decision seed.
Scenario cell_scenario(const ExperimentConfig& config, const SafConfig& saf, const RunCell& cell);

struct CellOutcome {
  RunCell cell;
  RunSummary summary;
};

/// Runs every (policy, seed) pair, writing per-run outputs under dir, using
/// up to config.jobs threads. Outcomes come back in grid order.
std::vector<CellOutcome> run_grid(const ExperimentConfig& config, const std::vector<RunCell>& cells,
                                  const std::filesystem::path& dir);

/// Writes report.json, report.txt and per-metric CSVs to dir; returns the
/// report. Requires at least two policies.
ComparisonReport write_report(const ExperimentConfig& config,
                              const std::vector<CellOutcome>& outcomes,
                              const std::filesystem::path& dir);

}  // namespace fairsched
