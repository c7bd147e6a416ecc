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
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsched/engine.hpp"

namespace fairsched {

class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time-averaged allocation per resource over [start, start + makespan].
/// The series is a step function; each sample holds until the next one.
std::vector<double> usage_over_time(std::span<const UsageSample> series, double start_time,
                                    double makespan, std::size_t resource_count);
std::vector<double> usage_over_time(const RunResult& result);

/// (treatment - baseline) / baseline * 100. Throws std::domain_error on a
/// zero baseline.
double percent_change(double baseline, double treatment);

struct RunSummary {
  std::string policy;
  std::uint64_t seed = 0;
  double makespan = 0.0;
  std::vector<std::string> resource_names;
  std::vector<double> usage_over_time;
  std::vector<double> cluster_capacity;
  double allocation_time_cost_ms = 0.0;
  std::size_t tasks_scheduled = 0;
  std::size_t decisions = 0;
  std::uint64_t draws_consumed = 0;
  std::vector<JobCompletion> jobs;
};

RunSummary summarize(const RunResult& result, std::uint64_t seed);

struct PairedDelta {
  std::uint64_t seed = 0;
  double baseline = 0.0;
  double treatment = 0.0;
  double difference = 0.0;              // treatment - baseline
  std::optional<double> percent;        // absent when the baseline is zero
};

struct MetricStats {
  std::map<std::uint64_t, double> values;  // per seed
  double mean = 0.0;
  double stddev = 0.0;  // sample std; 0 for a single run
  std::optional<double> percent_vs_baseline;  // of the means
  std::vector<PairedDelta> paired;            // empty for the baseline itself
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t ties = 0;
};

struct PolicyReport {
  std::string policy;
  std::map<std::string, MetricStats> metrics;
};

struct ComparisonReport {
  std::string baseline;
  std::vector<std::string> metric_names;
  std::vector<PolicyReport> policies;  // baseline first, then by name

  const PolicyReport& at(const std::string& policy) const;
};

/// Metric names are "makespan", "usage_<resource>" per resource and
/// "allocation_time_cost_ms" (wall clock, not reproducible).
std::vector<std::string> metric_names(const std::vector<std::string>& resource_names);
double metric_value(const RunSummary& summary, const std::string& metric);

/// Pairs runs by seed against the baseline policy. Throws PairingError when
/// seed sets differ, a seed repeats, or a policy has no runs.
ComparisonReport compare(const std::map<std::string, std::vector<RunSummary>>& results,
                         const std::string& baseline);

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

}  // namespace fairsched
