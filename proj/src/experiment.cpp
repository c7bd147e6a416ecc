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

#include "fairsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "fairsched/io.hpp"

namespace fairsched {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (policies.empty()) throw ConfigError("at least one policy is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (nodes < 1) throw ConfigError("nodes must be >= 1");
  if (source == SourceKind::Generator) {
    if (generator != "uniform" && generator != "gaussian") {
      throw ConfigError("unknown generator '" + generator + "'");
    }
    if (tasks < 1) throw ConfigError("tasks must be >= 1");
  }
  if (source == SourceKind::Preset && preset != "wordcount") {
    throw ConfigError("unknown preset '" + preset + "'");
  }
  if (source == SourceKind::Trace && trace.empty()) throw ConfigError("trace path is empty");
  if (policies.size() > 1) {
    bool found = false;
    for (auto p : policies) found = found || policy_name(p) == baseline;
    if (!found) throw ConfigError("baseline policy '" + baseline + "' is not in the policy list");
  }
  try {
    saf_settings(*this).cooling.validate();
    saf_settings(*this).estimator.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::uint64_t> parse_seeds(std::string_view spec) {
  std::vector<std::uint64_t> seeds;
  if (trim(spec).empty()) throw ConfigError("empty seed list");
  for (auto part : split(spec, ',')) {
    if (auto dots = part.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_u64(part.substr(0, dots), "seed");
      const auto hi = parse_u64(part.substr(dots + 2), "seed");
      if (hi < lo) throw ConfigError("seed range '" + std::string(part) + "' is descending");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(part, "seed"));
    }
  }
  std::set<std::uint64_t> seen;
  for (auto s : seeds) {
    if (!seen.insert(s).second) throw ConfigError("seed " + std::to_string(s) + " repeats");
  }
  return seeds;
}

std::vector<PolicyKind> parse_policy_list(std::string_view list) {
  std::vector<PolicyKind> out;
  for (auto part : split(list, ',')) {
    try {
      out.push_back(parse_policy(part));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "preset", "trace",     "generator", "tasks",        "cpu_mean", "ram_mean",
      "nodes",  "node_capacity", "resource_names", "policies", "baseline", "seeds",
      "estimator", "cooling", "alpha",    "k_const",      "cold_fraction", "usage_basis",
      "heartbeat", "audit",  "out",       "jobs",         "sweep"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig c;
  int sources = 0;
  if (doc.contains("preset")) {
    c.source = SourceKind::Preset;
    c.preset = get_as<std::string>(doc, "preset");
    ++sources;
  }
  if (doc.contains("trace")) {
    c.source = SourceKind::Trace;
    c.trace = get_as<std::string>(doc, "trace");
    ++sources;
  }
  if (doc.contains("generator")) {
    c.source = SourceKind::Generator;
    c.generator = get_as<std::string>(doc, "generator");
    ++sources;
  }
  if (sources > 1) throw ConfigError("preset, trace and generator are mutually exclusive");
  if (doc.contains("tasks")) c.tasks = get_as<std::size_t>(doc, "tasks");
  if (doc.contains("cpu_mean")) c.cpu_mean = get_as<double>(doc, "cpu_mean");
  if (doc.contains("ram_mean")) c.ram_mean = get_as<double>(doc, "ram_mean");
  if (doc.contains("nodes")) c.nodes = get_as<std::size_t>(doc, "nodes");
  if (doc.contains("node_capacity")) {
    c.node_capacity = get_as<std::vector<double>>(doc, "node_capacity");
  }
  if (doc.contains("resource_names")) {
    c.resource_names = get_as<std::vector<std::string>>(doc, "resource_names");
  }
  if (doc.contains("policies")) {
    const auto& p = doc.at("policies");
    if (p.is_string()) {
      c.policies = parse_policy_list(p.get<std::string>());
    } else {
      c.policies.clear();
      for (const auto& name : get_as<std::vector<std::string>>(doc, "policies")) {
        c.policies.push_back(parse_policy_list(name).front());
      }
    }
  }
  if (doc.contains("baseline")) c.baseline = get_as<std::string>(doc, "baseline");
  if (doc.contains("seeds")) {
    const auto& s = doc.at("seeds");
    if (s.is_string()) {
      c.seeds = parse_seeds(s.get<std::string>());
    } else {
      c.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds");
    }
  }
  if (doc.contains("estimator")) c.estimator = get_as<std::string>(doc, "estimator");
  if (doc.contains("cooling")) c.cooling = get_as<std::string>(doc, "cooling");
  if (doc.contains("alpha")) c.alpha = get_as<double>(doc, "alpha");
  if (doc.contains("k_const")) c.k_const = get_as<double>(doc, "k_const");
  if (doc.contains("cold_fraction")) c.cold_fraction = get_as<double>(doc, "cold_fraction");
  if (doc.contains("usage_basis")) {
    const auto basis = get_as<std::string>(doc, "usage_basis");
    if (basis == "live") {
      c.usage_basis = UsageBasis::Live;
    } else if (basis == "cumulative") {
      c.usage_basis = UsageBasis::Cumulative;
    } else {
      throw ConfigError("usage_basis must be 'live' or 'cumulative'");
    }
  }
  if (doc.contains("heartbeat")) c.heartbeat = get_as<double>(doc, "heartbeat");
  if (doc.contains("audit")) c.audit = get_as<bool>(doc, "audit");
  if (doc.contains("out")) c.out = get_as<std::string>(doc, "out");
  if (doc.contains("jobs")) c.jobs = get_as<std::size_t>(doc, "jobs");
  if (doc.contains("sweep")) {
    const auto& sw = doc.at("sweep");
    if (!sw.is_object()) throw ConfigError("config key 'sweep' must be an object");
    if (sw.contains("dimension")) c.sweep_dimension = get_as<std::string>(sw, "dimension");
    if (sw.contains("values")) {
      for (const auto& v : sw.at("values")) {
        c.sweep_values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  ExperimentConfig c = config_from_json(doc);
  if (c.source == SourceKind::Trace && c.trace.is_relative()) {
    c.trace = path.parent_path() / c.trace;
  }
  return c;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& base, const std::string& value) {
  ExperimentConfig c = base;
  const auto& dim = base.sweep_dimension;
  if (dim == "estimator") {
    c.estimator = value;
  } else if (dim == "cooling") {
    c.cooling = value;
  } else if (dim == "node_count") {
    c.nodes = parse_u64(value, "node count");
  } else if (dim == "task_count") {
    c.tasks = parse_u64(value, "task count");
  } else {
    throw ConfigError("unknown sweep dimension '" + dim +
                      "' (expected estimator, cooling, node_count or task_count)");
  }
  return c;
}

SafConfig saf_settings(const ExperimentConfig& config) {
  SafConfig saf;
  try {
    if (config.estimator) saf.estimator = parse_estimator(*config.estimator);
    if (config.cooling) saf.cooling = parse_cooling(*config.cooling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.alpha) saf.cooling.alpha = *config.alpha;
  if (config.k_const) saf.estimator.k_const = *config.k_const;
  if (config.cold_fraction) saf.cooling.cold_fraction = *config.cold_fraction;
  return saf;
}

Scenario build_scenario(const ExperimentConfig& config, std::uint64_t seed) {
  Scenario s;
  switch (config.source) {
    case SourceKind::Preset:
      if (config.preset != "wordcount") throw ConfigError("unknown preset '" + config.preset + "'");
      s = wordcount_preset(config.nodes);
      break;
    case SourceKind::Generator: {
      const ClusterSpec cluster = synthetic_cluster(config.nodes);
      if (config.generator == "uniform") {
        s = generate_uniform(config.tasks, seed, cluster);
      } else if (config.generator == "gaussian") {
        s = generate_gaussian(config.tasks, seed, config.cpu_mean, config.ram_mean, cluster);
      } else {
        throw ConfigError("unknown generator '" + config.generator + "'");
      }
      break;
    }
    case SourceKind::Trace: {
      ClusterSpec cluster = synthetic_cluster(config.nodes);
      if (config.node_capacity) cluster.node_capacity = ResourceVector(*config.node_capacity);
      if (config.resource_names) cluster.resource_names = *config.resource_names;
      TraceOptions opts;
      opts.resource_count = cluster.node_capacity.size();
      std::vector<std::string> warnings;
      s.cluster = cluster;
      s.weights = ResourceWeights::uniform(cluster.node_capacity.size());
      s.jobs = load_trace(config.trace, opts, &warnings);
      for (const auto& w : warnings) spdlog::warn("{}: {}", config.trace.string(), w);
      s.seed = seed;
      break;
    }
  }
  s.seed = seed;
  s.heartbeat_interval = config.heartbeat;
  s.usage_basis = config.usage_basis;
  return s;
}

Scenario cell_scenario(const ExperimentConfig& config, const SafConfig& saf, const RunCell& cell) {
  Scenario s = build_scenario(config, cell.seed);
  s.policy = cell.policy == PolicyKind::Saf ? PolicyConfig::saf_with(saf)
                                            : PolicyConfig{cell.policy, std::nullopt};
  s.decision_seed = derive_seed(cell.seed, policy_name(cell.policy), cell.run_index);
  return s;
}

std::vector<CellOutcome> run_grid(const ExperimentConfig& config, const std::vector<RunCell>& cells,
                                  const std::filesystem::path& dir) {
  const SafConfig saf = saf_settings(config);
  std::vector<CellOutcome> outcomes(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const RunCell& cell = cells[i];
      try {
        const Scenario s = cell_scenario(config, saf, cell);
        const std::string pname = policy_name(cell.policy);
        EngineOptions eo;
        eo.detailed_audit = config.audit;
        const RunResult result = run(s, eo);

        const auto run_dir = dir / pname / std::to_string(cell.seed);
        std::filesystem::create_directories(run_dir);
        outcomes[i].cell = cell;
        outcomes[i].summary = summarize(result, cell.seed);
        write_file(run_dir / "summary.json", summary_json(outcomes[i].summary).dump(2) + "\n");
        std::ofstream usage(run_dir / "usage.csv", std::ios::binary);
        write_usage_csv(result, usage);
        if (config.audit) {
          std::ofstream audit(run_dir / "decisions.ndl", std::ios::binary);
          write_decisions(result, audit);
        }
        spdlog::info("{} seed {}: makespan {} s", pname, cell.seed, result.makespan);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.jobs, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

ComparisonReport write_report(const ExperimentConfig& config,
                              const std::vector<CellOutcome>& outcomes,
                              const std::filesystem::path& dir) {
  std::map<std::string, std::vector<RunSummary>> by_policy;
  for (const auto& o : outcomes) by_policy[o.summary.policy].push_back(o.summary);
  ComparisonReport report = compare(by_policy, config.baseline);
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report_json(report).dump(2) + "\n");
  write_file(dir / "report.txt", render_table(report));
  write_metric_csvs(report, dir);
  return report;
}

}  // namespace fairsched
