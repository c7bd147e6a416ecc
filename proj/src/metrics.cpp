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

#include "fairsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fairsched {

std::vector<double> usage_over_time(std::span<const UsageSample> series, double start_time,
                                    double makespan, std::size_t resource_count) {
  std::vector<double> out(resource_count, 0.0);
  if (!(makespan > 0.0) || series.empty()) return out;
  const double end = start_time + makespan;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double from = std::max(series[i].time, start_time);
    const double to = std::min(i + 1 < series.size() ? series[i + 1].time : end, end);
    if (!(to > from)) continue;
    const auto& held = series[i].allocated;
    for (std::size_t q = 0; q < resource_count && q < held.size(); ++q) {
      out[q] += held[q] * (to - from);
    }
  }
  for (double& v : out) v /= makespan;
  return out;
}

std::vector<double> usage_over_time(const RunResult& result) {
  return usage_over_time(result.usage_series, result.start_time, result.makespan,
                         result.cluster_capacity.size());
}

double percent_change(double baseline, double treatment) {
  if (baseline == 0.0) throw std::domain_error("percent_change: zero baseline");
  return (treatment - baseline) / baseline * 100.0;
}

RunSummary summarize(const RunResult& result, std::uint64_t seed) {
  RunSummary s;
  s.policy = result.policy;
  s.seed = seed;
  s.makespan = result.makespan;
  s.resource_names = result.resource_names;
  s.usage_over_time = usage_over_time(result);
  s.cluster_capacity.assign(result.cluster_capacity.values().begin(),
                            result.cluster_capacity.values().end());
  s.allocation_time_cost_ms = result.allocation_time_cost_ms;
  s.tasks_scheduled = result.tasks_scheduled;
  s.decisions = result.decisions.size();
  s.draws_consumed = result.draws_consumed;
  s.jobs = result.jobs;
  return s;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<std::string> metric_names(const std::vector<std::string>& resource_names) {
  std::vector<std::string> names{"makespan"};
  for (const auto& r : resource_names) names.push_back("usage_" + r);
  names.push_back("allocation_time_cost_ms");
  return names;
}

double metric_value(const RunSummary& summary, const std::string& metric) {
  if (metric == "makespan") return summary.makespan;
  if (metric == "allocation_time_cost_ms") return summary.allocation_time_cost_ms;
  for (std::size_t q = 0; q < summary.resource_names.size(); ++q) {
    if (metric == "usage_" + summary.resource_names[q]) return summary.usage_over_time.at(q);
  }
  throw std::invalid_argument("unknown metric '" + metric + "'");
}

const PolicyReport& ComparisonReport::at(const std::string& policy) const {
  for (const auto& p : policies) {
    if (p.policy == policy) return p;
  }
  throw std::out_of_range("no report for policy '" + policy + "'");
}

namespace {

std::set<std::uint64_t> seed_set(const std::string& policy, const std::vector<RunSummary>& runs) {
  if (runs.empty()) throw PairingError("policy '" + policy + "' has no runs");
  std::set<std::uint64_t> seeds;
  for (const auto& r : runs) {
    if (!seeds.insert(r.seed).second) {
      throw PairingError("policy '" + policy + "' repeats seed " + std::to_string(r.seed));
    }
  }
  return seeds;
}

}  // namespace

ComparisonReport compare(const std::map<std::string, std::vector<RunSummary>>& results,
                         const std::string& baseline) {
  auto base_it = results.find(baseline);
  if (base_it == results.end()) {
    throw PairingError("baseline policy '" + baseline + "' has no results");
  }
  const auto base_seeds = seed_set(baseline, base_it->second);
  for (const auto& [policy, runs] : results) {
    const auto seeds = seed_set(policy, runs);
    for (auto s : base_seeds) {
      if (!seeds.count(s)) {
        throw PairingError("policy '" + policy + "' is missing seed " + std::to_string(s) +
                           " present in '" + baseline + "'");
      }
    }
    for (auto s : seeds) {
      if (!base_seeds.count(s)) {
        throw PairingError("policy '" + policy + "' has seed " + std::to_string(s) +
                           " absent from '" + baseline + "'");
      }
    }
  }

  ComparisonReport report;
  report.baseline = baseline;
  report.metric_names = metric_names(base_it->second.front().resource_names);

  std::vector<std::string> order{baseline};
  for (const auto& [policy, runs] : results) {
    if (policy != baseline) order.push_back(policy);
  }

  for (const auto& policy : order) {
    PolicyReport pr;
    pr.policy = policy;
    for (const auto& metric : report.metric_names) {
      MetricStats stats;
      for (const auto& r : results.at(policy)) stats.values[r.seed] = metric_value(r, metric);
      std::vector<double> xs;
      for (const auto& [seed, v] : stats.values) xs.push_back(v);
      stats.mean = mean(xs);
      stats.stddev = sample_stddev(xs);
      pr.metrics.emplace(metric, std::move(stats));
    }
    report.policies.push_back(std::move(pr));
  }

  const PolicyReport& base = report.policies.front();
  for (auto& pr : report.policies) {
    if (pr.policy == baseline) continue;
    for (auto& [metric, stats] : pr.metrics) {
      const MetricStats& bstats = base.metrics.at(metric);
      if (bstats.mean != 0.0) stats.percent_vs_baseline = percent_change(bstats.mean, stats.mean);
      for (const auto& [seed, v] : stats.values) {
        PairedDelta d;
        d.seed = seed;
        d.baseline = bstats.values.at(seed);
        d.treatment = v;
        d.difference = v - d.baseline;
        if (d.baseline != 0.0) d.percent = percent_change(d.baseline, v);
        if (d.difference > 0.0) {
          ++stats.positive;
        } else if (d.difference < 0.0) {
          ++stats.negative;
        } else {
          ++stats.ties;
        }
        stats.paired.push_back(d);
      }
    }
  }
  return report;
}

}  // namespace fairsched
