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

#include "fairsched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fairsched {
namespace {

using nlohmann::json;

std::string job_label(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "job-%05zu", index);
  return buf;
}

void require_positive_vector(const ResourceVector& v, const std::string& job,
                             const char* what) {
  for (std::size_t q = 0; q < v.size(); ++q) {
    if (!(v[q] > 0.0)) {
      throw ValidationError("job " + job + ": " + what + " component " +
                            std::to_string(q) + " must be > 0");
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

JobSpec single_task_job(std::size_t index, double cpu, double ram,
                        const SyntheticOptions& options) {
  JobSpec job;
  job.job_id = job_label(index);
  job.user_id = "user-" + job.job_id.substr(4);
  job.submit_time = 0.0;
  job.map_count = 1;
  job.reduce_count = 0;
  job.map_request = ResourceVector{cpu, ram};
  job.reduce_request = ResourceVector{cpu, ram};
  job.map_duration = options.map_duration;
  job.reduce_duration = options.reduce_duration;
  job.minshare = scale(job.map_request, options.minshare_fraction);
  return job;
}

Scenario synthetic_scenario(const ClusterSpec& cluster, std::uint64_t seed) {
  Scenario s;
  s.cluster = cluster;
  s.weights = ResourceWeights::uniform(cluster.node_capacity.size());
  s.policy = PolicyConfig::drf();
  s.seed = seed;
  return s;
}

// Field accessors that report the offending field and line.
const json& require_field(const json& rec, const char* field, std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end()) {
    throw TraceParseError(line, field, std::string("missing field '") + field + "'");
  }
  return *it;
}

double number_field(const json& rec, const char* field, std::size_t line) {
  const json& v = require_field(rec, field, line);
  if (!v.is_number()) {
    throw TraceParseError(line, field, std::string("field '") + field + "' must be a number");
  }
  return v.get<double>();
}

std::int64_t integer_field(const json& rec, const char* field, std::size_t line) {
  const json& v = require_field(rec, field, line);
  if (!v.is_number_integer()) {
    throw TraceParseError(line, field, std::string("field '") + field + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string string_field(const json& rec, const char* field, std::size_t line) {
  const json& v = require_field(rec, field, line);
  if (!v.is_string()) {
    throw TraceParseError(line, field, std::string("field '") + field + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> vector_field(const json& rec, const char* field, std::size_t line) {
  const json& v = require_field(rec, field, line);
  if (!v.is_array() || v.empty()) {
    throw TraceParseError(line, field,
                          std::string("field '") + field + "' must be a non-empty array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw TraceParseError(line, field,
                            std::string("field '") + field + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

const std::set<std::string>& known_trace_fields() {
  static const std::set<std::string> fields{"job_id", "user",    "submit",  "maps",
                                            "reduces", "map_req", "red_req", "map_dur",
                                            "red_dur", "minshare"};
  return fields;
}

}  // namespace

TraceParseError::TraceParseError(std::size_t line, std::string field,
                                 const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line),
      field_(std::move(field)) {}

void JobSpec::validate(std::size_t k) const {
  if (job_id.empty()) throw ValidationError("job with empty job_id");
  if (!std::isfinite(submit_time) || submit_time < 0.0) {
    throw ValidationError("job " + job_id + ": submit time must be >= 0");
  }
  const auto check_len = [&](const ResourceVector& v, const char* what) {
    if (v.size() != k) {
      throw ValidationError("job " + job_id + ": " + what + " has " +
                            std::to_string(v.size()) + " components, expected " +
                            std::to_string(k));
    }
  };
  check_len(minshare, "minshare");
  if (map_count > 0) {
    check_len(map_request, "map request");
    require_positive_vector(map_request, job_id, "map request");
    if (!(map_duration > 0.0)) {
      throw ValidationError("job " + job_id + ": map duration must be > 0");
    }
  }
  if (reduce_count > 0) {
    check_len(reduce_request, "reduce request");
    require_positive_vector(reduce_request, job_id, "reduce request");
    if (!(reduce_duration > 0.0)) {
      throw ValidationError("job " + job_id + ": reduce duration must be > 0");
    }
  }
}

ResourceVector ClusterSpec::total() const {
  return scale(node_capacity, static_cast<double>(node_count));
}

void Scenario::validate() const {
  if (cluster.node_count < 1) throw ValidationError("cluster needs at least one node");
  const std::size_t k = cluster.node_capacity.size();
  if (k < 1) throw ValidationError("node capacity must have at least one resource type");
  for (std::size_t q = 0; q < k; ++q) {
    if (!(cluster.node_capacity[q] > 0.0)) {
      throw ValidationError("node capacity component " + std::to_string(q) + " must be > 0");
    }
  }
  if (weights.size() != k) {
    throw ValidationError("weights have " + std::to_string(weights.size()) +
                          " components, expected " + std::to_string(k));
  }
  if (!cluster.resource_names.empty() && cluster.resource_names.size() != k) {
    throw ValidationError("resource name count does not match resource count");
  }
  if (!(heartbeat_interval > 0.0)) throw ValidationError("heartbeat interval must be > 0");
  try {
    policy.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("policy: ") + e.what());
  }
  std::set<std::string> ids;
  for (const auto& job : jobs) {
    job.validate(k);
    if (!ids.insert(job.job_id).second) {
      throw ValidationError("duplicate job id " + job.job_id);
    }
    if (job.map_count > 0 && !fits_within(job.map_request, cluster.node_capacity)) {
      throw ValidationError("job " + job.job_id + ": map request " +
                            job.map_request.to_string() + " exceeds node capacity " +
                            cluster.node_capacity.to_string());
    }
    if (job.reduce_count > 0 && !fits_within(job.reduce_request, cluster.node_capacity)) {
      throw ValidationError("job " + job.job_id + ": reduce request " +
                            job.reduce_request.to_string() + " exceeds node capacity " +
                            cluster.node_capacity.to_string());
    }
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                          std::uint64_t run_index) {
  // FNV-1a over the label.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(splitmix64(base) ^ h) ^ run_index);
}

std::uint64_t Scenario::effective_decision_seed() const {
  return decision_seed.value_or(derive_seed(seed, policy_name(policy.kind), 0));
}

ClusterSpec synthetic_cluster(std::size_t node_count) {
  ClusterSpec c;
  c.node_count = node_count;
  c.node_capacity = ResourceVector{8.0, 8192.0};
  c.resource_names = {"cpu", "mem"};
  return c;
}

Scenario wordcount_preset(std::size_t node_count, const SyntheticOptions& options) {
  if (node_count < 1) throw ValidationError("wordcount preset needs at least one node");
  ClusterSpec cluster;
  cluster.node_count = node_count;
  cluster.node_capacity = ResourceVector{8.0, 8.0};
  cluster.resource_names = {"vcores", "mem_gb"};

  Scenario s = synthetic_scenario(cluster, 0);
  const double map_cores[] = {2.0, 3.0, 4.0, 5.0};
  const double reduce_cores[] = {2.0, 2.0, 3.0, 3.0};
  for (std::size_t i = 0; i < 4; ++i) {
    JobSpec job;
    job.job_id = "wordcount-" + std::to_string(i + 1);
    job.user_id = "user-" + std::to_string(i + 1);
    job.map_count = 31;
    job.reduce_count = 5;
    job.map_request = ResourceVector{map_cores[i], 1.0};
    job.reduce_request = ResourceVector{reduce_cores[i], 1.0};
    job.map_duration = options.map_duration;
    job.reduce_duration = options.reduce_duration;
    job.minshare = scale(job.map_request, options.minshare_fraction);
    s.jobs.push_back(std::move(job));
  }
  s.validate();
  return s;
}

Scenario generate_uniform(std::size_t n_tasks, std::uint64_t seed,
                          const ClusterSpec& cluster, const SyntheticOptions& options) {
  if (n_tasks < 1) throw ValidationError("uniform generator needs n >= 1");
  Scenario s = synthetic_scenario(cluster, seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cpu(static_cast<int>(options.cpu_min),
                                         static_cast<int>(options.cpu_max));
  std::uniform_int_distribution<int> ram(static_cast<int>(options.ram_min),
                                         static_cast<int>(options.ram_max));
  s.jobs.reserve(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const double c = cpu(rng);
    const double r = ram(rng);
    s.jobs.push_back(single_task_job(i, c, r, options));
  }
  return s;
}

std::vector<GaussianDraw> gaussian_raw_draws(std::size_t n, std::uint64_t seed,
                                             double cpu_mean, double ram_mean,
                                             const SyntheticOptions& options) {
  if (!(cpu_mean > 0.0) || !(ram_mean > 0.0)) {
    throw ValidationError("gaussian means must be > 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> cpu(cpu_mean, options.cpu_sd);
  std::normal_distribution<double> ram(ram_mean, options.ram_sd);
  std::vector<GaussianDraw> out(n);
  for (auto& d : out) {
    d.cpu = cpu(rng);
    d.ram = ram(rng);
  }
  return out;
}

Scenario generate_gaussian(std::size_t n_tasks, std::uint64_t seed, double cpu_mean,
                           double ram_mean, const ClusterSpec& cluster,
                           const SyntheticOptions& options) {
  if (n_tasks < 1) throw ValidationError("gaussian generator needs n >= 1");
  Scenario s = synthetic_scenario(cluster, seed);
  const auto draws = gaussian_raw_draws(n_tasks, seed, cpu_mean, ram_mean, options);
  s.jobs.reserve(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const double c = std::round(std::clamp(draws[i].cpu, options.cpu_min, options.cpu_max));
    const double r = std::round(std::clamp(draws[i].ram, options.ram_min, options.ram_max));
    s.jobs.push_back(single_task_job(i, c, r, options));
  }
  return s;
}

std::vector<JobSpec> parse_trace(std::istream& in, const TraceOptions& options,
                                 std::vector<std::string>* warnings) {
  std::vector<JobSpec> jobs;
  std::size_t k = options.resource_count;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw TraceParseError(line, "", std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) throw TraceParseError(line, "", "record must be an object");

    for (const auto& [key, value] : rec.items()) {
      if (known_trace_fields().count(key)) continue;
      if (options.strict) throw TraceParseError(line, key, "unknown field '" + key + "'");
      if (warnings) {
        warnings->push_back("line " + std::to_string(line) + ": ignoring unknown field '" +
                            key + "'");
      }
    }

    JobSpec job;
    job.job_id = string_field(rec, "job_id", line);
    job.user_id = string_field(rec, "user", line);
    job.submit_time = number_field(rec, "submit", line);
    const auto maps = integer_field(rec, "maps", line);
    const auto reduces = integer_field(rec, "reduces", line);
    const auto map_req = vector_field(rec, "map_req", line);
    const auto red_req = vector_field(rec, "red_req", line);
    job.map_duration = number_field(rec, "map_dur", line);
    job.reduce_duration = number_field(rec, "red_dur", line);
    const auto minshare = vector_field(rec, "minshare", line);

    if (maps < 0) throw ValidationError("job " + job.job_id + ": maps must be >= 0");
    if (reduces < 0) throw ValidationError("job " + job.job_id + ": reduces must be >= 0");
    job.map_count = static_cast<std::uint32_t>(maps);
    job.reduce_count = static_cast<std::uint32_t>(reduces);
    try {
      job.map_request = ResourceVector(map_req);
      job.reduce_request = ResourceVector(red_req);
      job.minshare = ResourceVector(minshare);
    } catch (const std::invalid_argument& e) {
      throw ValidationError("job " + job.job_id + ": " + e.what());
    }
    if (k == 0) k = job.map_request.size();
    if (job.map_request.size() != k || job.reduce_request.size() != k ||
        job.minshare.size() != k) {
      throw ValidationError("job " + job.job_id + ": resource vectors must all have " +
                            std::to_string(k) + " components");
    }
    job.validate(k);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<JobSpec> load_trace(const std::filesystem::path& path,
                                const TraceOptions& options,
                                std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return parse_trace(in, options, warnings);
}

std::string to_trace_line(const JobSpec& job) {
  const auto vec = [](const ResourceVector& v) {
    return json(std::vector<double>(v.values().begin(), v.values().end()));
  };
  json rec = {{"job_id", job.job_id},      {"user", job.user_id},
              {"submit", job.submit_time}, {"maps", job.map_count},
              {"reduces", job.reduce_count}, {"map_req", vec(job.map_request)},
              {"red_req", vec(job.reduce_request)}, {"map_dur", job.map_duration},
              {"red_dur", job.reduce_duration}, {"minshare", vec(job.minshare)}};
  return rec.dump();
}

}  // namespace fairsched
