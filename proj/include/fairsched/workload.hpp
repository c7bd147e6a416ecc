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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairsched/policy.hpp"
#include "fairsched/resource.hpp"

namespace fairsched {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct JobSpec {
  std::string job_id;
  std::string user_id;
  double submit_time = 0.0;
  std::uint32_t map_count = 0;
  std::uint32_t reduce_count = 0;
  ResourceVector map_request;
  ResourceVector reduce_request;
  double map_duration = 0.0;
  double reduce_duration = 0.0;
  ResourceVector minshare;

  // Throws ValidationError naming the job.
  void validate(std::size_t k) const;
  std::size_t task_count() const noexcept { return map_count + reduce_count; }
};

struct ClusterSpec {
  std::size_t node_count = 1;
  ResourceVector node_capacity;
  std::vector<std::string> resource_names{"cpu", "mem"};

  ResourceVector total() const;
};

// Live: usage is what running tasks hold. Cumulative: completions never
// release usage (sensitivity runs only).
enum class UsageBasis { Live, Cumulative };

struct Scenario {
  ClusterSpec cluster;
  ResourceWeights weights;
  PolicyConfig policy;
  std::vector<JobSpec> jobs;
  std::uint64_t seed = 0;
  // Seed of the acceptance-draw generator; derived from (seed, policy) when
  // absent.
  std::optional<std::uint64_t> decision_seed;
  double heartbeat_interval = 1.0;
  UsageBasis usage_basis = UsageBasis::Live;

  void validate() const;
  std::uint64_t effective_decision_seed() const;
};

/// Mixes a base seed, a label and a run index into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                          std::uint64_t run_index);

struct SyntheticOptions {
  double minshare_fraction = 0.5;
  double map_duration = 10.0;
  double reduce_duration = 15.0;
  double cpu_min = 1.0;
  double cpu_max = 8.0;
  double ram_min = 100.0;
  double ram_max = 2000.0;
  double cpu_sd = 1.16;
  double ram_sd = 316.6;
};

/// 16 nodes of <8 cores, 8192 MB> unless told otherwise.
ClusterSpec synthetic_cluster(std::size_t node_count = 16);

/// Four Wordcount jobs of 31 maps and 5 reduces on <8 vcores, 8 GB> nodes.
Scenario wordcount_preset(std::size_t node_count,
                          const SyntheticOptions& options = {});

/// n single-task jobs with CPU ~ U{1..8} cores and RAM ~ U{100..2000} MB.
Scenario generate_uniform(std::size_t n_tasks, std::uint64_t seed,
                          const ClusterSpec& cluster,
                          const SyntheticOptions& options = {});

struct GaussianDraw {
  double cpu = 0.0;
  double ram = 0.0;
};

/// Pre-clamp normal draws, in the exact sequence generate_gaussian consumes.
std::vector<GaussianDraw> gaussian_raw_draws(std::size_t n, std::uint64_t seed,
                                             double cpu_mean, double ram_mean,
                                             const SyntheticOptions& options = {});

/// CPU ~ N(cpu_mean, 1.16) clamped to [1, 8] then rounded; RAM ~
/// N(ram_mean, 316.6) clamped to [100, 2000] and rounded to whole MB.
Scenario generate_gaussian(std::size_t n_tasks, std::uint64_t seed, double cpu_mean,
                           double ram_mean, const ClusterSpec& cluster,
                           const SyntheticOptions& options = {});

struct TraceOptions {
  bool strict = false;
  // Expected vector length; 0 accepts whatever the first record uses.
  std::size_t resource_count = 0;
};

std::vector<JobSpec> parse_trace(std::istream& in, const TraceOptions& options = {},
                                 std::vector<std::string>* warnings = nullptr);
std::vector<JobSpec> load_trace(const std::filesystem::path& path,
                                const TraceOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);
std::string to_trace_line(const JobSpec& job);

}  // namespace fairsched
