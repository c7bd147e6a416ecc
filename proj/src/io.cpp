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

#include "fairsched/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fairsched {
namespace {

using nlohmann::json;

json number_or_label(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json optional_number(const std::optional<double>& v) {
  return v ? number_or_label(*v) : json(nullptr);
}

json outcome_json(const PairOutcome& o) {
  json j;
  j["challenger_wins"] = o.challenger_wins;
  j["branch"] = branch_label(o.branch);
  if (o.delta) j["delta"] = number_or_label(*o.delta);
  if (o.temperature) j["temperature"] = number_or_label(*o.temperature);
  if (o.probability) j["probability"] = number_or_label(*o.probability);
  if (o.draw) j["draw"] = number_or_label(*o.draw);
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_usage_csv(const RunResult& result, std::ostream& out) {
  out << "time_s";
  for (const auto& name : result.resource_names) out << ',' << name;
  out << '\n';
  for (const auto& sample : result.usage_series) {
    out << format_double(sample.time);
    for (double v : sample.allocated.values()) out << ',' << format_double(v);
    out << '\n';
  }
}

json decision_json(const DecisionRecord& record) {
  json j;
  j["time"] = record.time;
  j["node"] = record.node;
  j["branch"] = branch_label(record.branch);
  j["chosen"] = record.chosen;
  j["chosen_fairshare"] = number_or_label(record.chosen_fairshare);
  j["delta"] = optional_number(record.delta);
  j["temperature"] = optional_number(record.temperature);
  j["probability"] = optional_number(record.probability);
  j["draw"] = optional_number(record.draw);
  if (!record.candidates.empty()) {
    json cands = json::array();
    for (const auto& c : record.candidates) {
      cands.push_back({{"id", c.id},
                       {"needy", c.needy},
                       {"minshare_ratio", number_or_label(c.minshare_ratio)},
                       {"fairshare", number_or_label(c.dominant_fairshare_ratio)}});
    }
    j["candidates"] = std::move(cands);
  }
  if (!record.comparisons.empty()) {
    json comps = json::array();
    for (const auto& c : record.comparisons) {
      json cj = outcome_json(c.outcome);
      cj["incumbent"] = c.incumbent;
      cj["challenger"] = c.challenger;
      comps.push_back(std::move(cj));
    }
    j["comparisons"] = std::move(comps);
  }
  return j;
}

void write_decisions(const RunResult& result, std::ostream& out) {
  for (const auto& d : result.decisions) out << decision_json(d).dump() << '\n';
}

json summary_json(const RunSummary& s) {
  json j;
  j["policy"] = s.policy;
  j["seed"] = s.seed;
  j["makespan"] = s.makespan;
  j["resources"] = s.resource_names;
  j["cluster_capacity"] = s.cluster_capacity;
  j["usage_over_time"] = s.usage_over_time;
  j["tasks_scheduled"] = s.tasks_scheduled;
  j["decisions"] = s.decisions;
  j["draws_consumed"] = s.draws_consumed;
  json jobs = json::array();
  for (const auto& job : s.jobs) {
    jobs.push_back({{"job_id", job.job_id},
                    {"submit_time", job.submit_time},
                    {"completion_time", job.completion_time}});
  }
  j["jobs"] = std::move(jobs);
  j["wallclock"] = {{"allocation_time_cost_ms", s.allocation_time_cost_ms}};
  return j;
}

json report_json(const ComparisonReport& report) {
  json j;
  j["baseline"] = report.baseline;
  j["metrics"] = report.metric_names;
  j["wallclock_metrics"] = {"allocation_time_cost_ms"};
  json policies = json::object();
  for (const auto& pr : report.policies) {
    json pj = json::object();
    for (const auto& [metric, st] : pr.metrics) {
      json mj;
      mj["mean"] = st.mean;
      mj["std"] = st.stddev;
      mj["n"] = st.values.size();
      mj["percent_vs_baseline"] = optional_number(st.percent_vs_baseline);
      if (pr.policy != report.baseline) {
        json paired = json::array();
        for (const auto& d : st.paired) {
          paired.push_back({{"seed", d.seed},
                            {"baseline", d.baseline},
                            {"treatment", d.treatment},
                            {"difference", d.difference},
                            {"percent", optional_number(d.percent)}});
        }
        mj["paired"] = std::move(paired);
        mj["positive"] = st.positive;
        mj["negative"] = st.negative;
        mj["ties"] = st.ties;
      }
      pj[metric] = std::move(mj);
    }
    policies[pr.policy] = std::move(pj);
  }
  j["policies"] = std::move(policies);
  return j;
}

std::string render_table(const ComparisonReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(26) << "metric" << std::setw(10) << "policy" << std::right
      << std::setw(14) << "mean" << std::setw(12) << "std" << std::setw(11) << "vs base"
      << std::setw(10) << "+/-/=" << '\n';
  for (const auto& metric : report.metric_names) {
    for (const auto& pr : report.policies) {
      const MetricStats& st = pr.metrics.at(metric);
      out << std::left << std::setw(26) << metric << std::setw(10) << pr.policy << std::right
          << std::fixed << std::setprecision(3) << std::setw(14) << st.mean << std::setw(12)
          << st.stddev;
      if (st.percent_vs_baseline) {
        std::ostringstream pct;
        pct << std::showpos << std::fixed << std::setprecision(1) << *st.percent_vs_baseline
            << '%';
        out << std::setw(11) << pct.str();
        std::ostringstream signs;
        signs << st.positive << '/' << st.negative << '/' << st.ties;
        out << std::setw(10) << signs.str();
      } else {
        out << std::setw(11) << "-" << std::setw(10) << "-";
      }
      out << '\n';
    }
  }
  out << "allocation_time_cost_ms is wall clock and varies between runs\n";
  return out.str();
}

void write_metric_csvs(const ComparisonReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& metric : report.metric_names) {
    std::ofstream out(dir / (metric + ".csv"));
    out << "seed";
    for (const auto& pr : report.policies) out << ',' << pr.policy;
    out << '\n';
    const auto& seeds = report.policies.front().metrics.at(metric).values;
    for (const auto& [seed, unused] : seeds) {
      out << seed;
      for (const auto& pr : report.policies) {
        out << ',' << format_double(pr.metrics.at(metric).values.at(seed));
      }
      out << '\n';
    }
  }
}

}  // namespace fairsched
