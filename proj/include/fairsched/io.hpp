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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fairsched/engine.hpp"
#include "fairsched/metrics.hpp"

namespace fairsched {

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// Columns: time_s, then one allocated amount per resource.
void write_usage_csv(const RunResult& result, std::ostream& out);

/// One JSON object per decision, one per line.
void write_decisions(const RunResult& result, std::ostream& out);
nlohmann::json decision_json(const DecisionRecord& record);

/// Wall-clock fields are grouped under "wallclock" so they can be ignored
/// when diffing runs.
nlohmann::json summary_json(const RunSummary& summary);

nlohmann::json report_json(const ComparisonReport& report);
std::string render_table(const ComparisonReport& report);

/// One <metric>.csv per metric: seed, then one column per policy.
void write_metric_csvs(const ComparisonReport& report, const std::filesystem::path& dir);

}  // namespace fairsched
