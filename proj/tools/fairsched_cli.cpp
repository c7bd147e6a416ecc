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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fairsched/experiment.hpp"
#include "fairsched/io.hpp"
#include "fairsched/workload.hpp"

namespace fs = std::filesystem;
using namespace fairsched;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsageFailure = 2;

struct Flags {
  std::string config;
  std::string preset;
  std::string trace;
  std::string generator;
  std::size_t tasks = 0;
  double cpu_mean = 0.0;
  double ram_mean = 0.0;
  std::size_t nodes = 0;
  std::string policy;
  std::string baseline;
  std::string seeds;
  std::string estimator;
  std::string cooling;
  double alpha = 0.0;
  double k_const = 0.0;
  double cold_fraction = 0.0;
  bool audit = false;
  bool cumulative = false;
  std::string out;
  std::size_t jobs = 0;
  std::string dimension;
  std::string values;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment config (JSON)");
  cmd->add_option("--preset", f.preset, "Workload preset (wordcount)");
  cmd->add_option("--trace", f.trace, "Line-delimited JSON job trace");
  cmd->add_option("--generator", f.generator, "Synthetic generator")
      ->check(CLI::IsMember({"uniform", "gaussian"}));
  cmd->add_option("--tasks", f.tasks, "Synthetic task count");
  cmd->add_option("--cpu-mean", f.cpu_mean, "Gaussian CPU mean (cores)");
  cmd->add_option("--ram-mean", f.ram_mean, "Gaussian RAM mean (MB)");
  cmd->add_option("--nodes", f.nodes, "Node count");
  cmd->add_option("--policy", f.policy, "Comma-separated policies: fifo,fair,drf,saf");
  cmd->add_option("--baseline", f.baseline, "Baseline policy for comparisons");
  cmd->add_option("--seeds", f.seeds, "Seeds: 1..20 or 1,2,3");
  cmd->add_option("--estimator", f.estimator,
                  "shannon | renyi:A | hartley | collision | min | tsallis:Q");
  cmd->add_option("--cooling", f.cooling, "exponential | linear | logarithmic | quadratic");
  cmd->add_option("--alpha", f.alpha, "Cooling alpha");
  cmd->add_option("--k-const", f.k_const, "Entropy constant K");
  cmd->add_option("--cold-fraction", f.cold_fraction, "Reheat threshold as a fraction of T0");
  cmd->add_flag("--audit", f.audit, "Write per-decision audit logs");
  cmd->add_flag("--cumulative-usage", f.cumulative, "Never release usage on completion");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--jobs", f.jobs, "Parallel runs");
}

ExperimentConfig resolve(CLI::App* cmd, const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) {
    if (!fs::exists(f.config)) throw ConfigError("config file not found: " + f.config);
    c = load_config(f.config);
  }
  auto given = [cmd](const char* name) {
    const auto* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  int sources = given("--preset") + given("--trace") + given("--generator");
  if (sources > 1) throw ConfigError("--preset, --trace and --generator are mutually exclusive");
  if (given("--preset")) {
    c.source = SourceKind::Preset;
    c.preset = f.preset;
  }
  if (given("--trace")) {
    c.source = SourceKind::Trace;
    c.trace = f.trace;
  }
  if (given("--generator")) {
    c.source = SourceKind::Generator;
    c.generator = f.generator;
  }
  if (given("--tasks")) c.tasks = f.tasks;
  if (given("--cpu-mean")) c.cpu_mean = f.cpu_mean;
  if (given("--ram-mean")) c.ram_mean = f.ram_mean;
  if (given("--nodes")) c.nodes = f.nodes;
  if (given("--policy")) c.policies = parse_policy_list(f.policy);
  if (given("--baseline")) c.baseline = f.baseline;
  if (given("--seeds")) c.seeds = parse_seeds(f.seeds);
  if (given("--estimator")) c.estimator = f.estimator;
  if (given("--cooling")) c.cooling = f.cooling;
  if (given("--alpha")) c.alpha = f.alpha;
  if (given("--k-const")) c.k_const = f.k_const;
  if (given("--cold-fraction")) c.cold_fraction = f.cold_fraction;
  if (f.audit) c.audit = true;
  if (f.cumulative) c.usage_basis = UsageBasis::Cumulative;
  if (given("--out")) c.out = f.out;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--dimension")) c.sweep_dimension = f.dimension;
  if (given("--values")) {
    c.sweep_values.clear();
    std::string item;
    for (char ch : f.values + ",") {
      if (ch == ',') {
        if (!item.empty()) c.sweep_values.push_back(item);
        item.clear();
      } else if (ch != ' ') {
        item += ch;
      }
    }
  }
  // Prefer DRF as the baseline whenever it takes part.
  bool has_baseline = false;
  for (auto p : c.policies) has_baseline = has_baseline || policy_name(p) == c.baseline;
  if (!has_baseline && !given("--baseline")) c.baseline = policy_name(c.policies.front());
  c.validate();
  return c;
}

std::vector<RunCell> grid(const ExperimentConfig& c, const std::string& label,
                          std::uint64_t run_index) {
  std::vector<RunCell> cells;
  for (auto p : c.policies) {
    for (auto s : c.seeds) cells.push_back({label, p, s, run_index});
  }
  return cells;
}

int cmd_run(const ExperimentConfig& c) {
  const auto outcomes = run_grid(c, grid(c, "", 0), c.out);
  std::cout << outcomes.size() << " runs written to " << c.out.string() << '\n';
  if (c.policies.size() >= 2) {
    const auto report = write_report(c, outcomes, c.out / "report");
    std::cout << render_table(report);
  } else {
    for (const auto& o : outcomes) {
      std::cout << o.summary.policy << " seed " << o.summary.seed << ": makespan "
                << format_double(o.summary.makespan) << " s\n";
    }
  }
  return kOk;
}

std::vector<std::string> default_sweep_values(const std::string& dim) {
  if (dim == "estimator") {
    return {"shannon", "hartley", "collision", "min", "tsallis:0.8", "tsallis:1.2"};
  }
  if (dim == "cooling") return {"exponential", "linear", "logarithmic", "quadratic"};
  if (dim == "task_count") return {"50", "150", "250", "350", "450", "650", "850", "1050"};
  if (dim == "node_count") return {"4", "8", "16"};
  throw ConfigError("unknown sweep dimension '" + dim +
                    "' (expected estimator, cooling, node_count or task_count)");
}

std::string cell_dir_name(const std::string& dim, const std::string& value) {
  std::string name = dim + "-" + value;
  for (char& ch : name) {
    if (ch == ':' || ch == '/' || ch == '\\') ch = '_';
  }
  return name;
}

int cmd_sweep(ExperimentConfig c) {
  if (c.sweep_dimension.empty()) throw ConfigError("sweep needs --dimension");
  if (c.sweep_values.empty()) c.sweep_values = default_sweep_values(c.sweep_dimension);

  nlohmann::json summary;
  summary["dimension"] = c.sweep_dimension;
  summary["baseline_cell"] = c.sweep_values.front();
  summary["cells"] = nlohmann::json::array();
  std::map<std::string, std::map<std::string, double>> first_means;  // policy -> metric -> mean

  for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
    const std::string& value = c.sweep_values[i];
    const ExperimentConfig cell = apply_sweep_value(c, value);
    cell.validate();
    const fs::path dir = c.out / cell_dir_name(c.sweep_dimension, value);
    const auto outcomes = run_grid(cell, grid(cell, value, i), dir);

    std::map<std::string, std::vector<RunSummary>> by_policy;
    for (const auto& o : outcomes) by_policy[o.summary.policy].push_back(o.summary);
    nlohmann::json cj;
    cj["value"] = value;
    for (const auto& [policy, runs] : by_policy) {
      for (const auto& metric : metric_names(runs.front().resource_names)) {
        std::vector<double> xs;
        for (const auto& r : runs) xs.push_back(metric_value(r, metric));
        const double m = mean(xs);
        nlohmann::json mj{{"mean", m}, {"std", sample_stddev(xs)}};
        if (i == 0) {
          first_means[policy][metric] = m;
        } else if (first_means[policy].count(metric) && first_means[policy][metric] != 0.0) {
          mj["percent_vs_baseline_cell"] = percent_change(first_means[policy][metric], m);
        }
        cj["policies"][policy][metric] = mj;
      }
    }
    if (cell.policies.size() >= 2) {
      const auto report = write_report(cell, outcomes, dir / "report");
      std::cout << "== " << c.sweep_dimension << " = " << value << '\n' << render_table(report);
    }
    summary["cells"].push_back(cj);
  }

  fs::create_directories(c.out / "report");
  std::ofstream(c.out / "report" / "sweep.json") << summary.dump(2) << '\n';
  std::cout << c.sweep_values.size() << " sweep cells written to " << c.out.string() << '\n';
  return kOk;
}

bool looks_like_config(const fs::path& path) {
  std::ifstream in(path);
  try {
    const auto doc = nlohmann::json::parse(in);
    return doc.is_object() && !doc.contains("job_id");
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

int cmd_validate(const std::string& path, std::size_t nodes, bool strict) {
  if (!fs::exists(path)) throw ConfigError("file not found: " + path);
  if (looks_like_config(path)) {
    ExperimentConfig c = load_config(path);
    c.validate();
    std::size_t jobs = 0;
    for (auto seed : c.seeds) {
      Scenario s = build_scenario(c, seed);
      s.validate();
      jobs = s.jobs.size();
    }
    std::cout << "OK, config with " << c.seeds.size() << " seed(s), " << jobs << " jobs\n";
    return kOk;
  }
  TraceOptions opts;
  opts.strict = strict;
  opts.resource_count = 2;
  std::vector<std::string> warnings;
  Scenario s;
  s.cluster = synthetic_cluster(nodes);
  s.weights = ResourceWeights::uniform(2);
  s.jobs = load_trace(path, opts, &warnings);
  for (const auto& w : warnings) std::cout << "warning: " << w << '\n';
  s.validate();
  std::cout << "OK, " << s.jobs.size() << " jobs\n";
  return kOk;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("fairsched");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("FAIRSCHED_LOG")) {
    const auto level = spdlog::level::from_str(env);
    spdlog::set_level(level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Multi-resource cluster scheduling simulator"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run a policy x seed grid");
  add_common(run_cmd, run_flags);

  Flags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one dimension across a grid");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--dimension", sweep_flags.dimension,
                        "estimator | cooling | node_count | task_count");
  sweep_cmd->add_option("--values", sweep_flags.values, "Comma-separated sweep values");

  std::string validate_path;
  std::size_t validate_nodes = 16;
  bool validate_strict = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config or trace file");
  validate_cmd->add_option("path", validate_path, "Config or trace file")->required();
  validate_cmd->add_option("--nodes", validate_nodes, "Node count for trace checks");
  validate_cmd->add_flag("--strict", validate_strict, "Reject unknown trace fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageFailure;
  }

  try {
    if (*run_cmd) return cmd_run(resolve(run_cmd, run_flags));
    if (*sweep_cmd) return cmd_sweep(resolve(sweep_cmd, sweep_flags));
    if (*validate_cmd) return cmd_validate(validate_path, validate_nodes, validate_strict);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const TraceParseError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
  return kOk;
}
