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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fairsched/instance.hpp"
#include "fairsched/policy.hpp"
#include "fairsched/resource.hpp"
#include "fairsched/workload.hpp"

namespace fairsched {

// Kind order doubles as the tie-break at equal timestamps.
enum class EventKind { TaskComplete = 0, JobSubmit = 1, Heartbeat = 2 };

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Heartbeat;
  std::uint64_t seq = 0;
  std::size_t job = 0;   // JobSubmit
  std::size_t node = 0;  // TaskComplete
  std::uint64_t task = 0;

  // Strict weak order: (time, kind, seq).
  friend bool operator<(const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.seq < b.seq;
  }
};

struct RunningTask {
  std::uint64_t task_id = 0;
  std::size_t instance = 0;
  ResourceVector request;
  double completion = 0.0;
};

struct NodeState {
  std::size_t id = 0;
  ResourceVector capacity;
  ResourceVector residual;
  std::vector<RunningTask> running;
};

struct JobProgress {
  std::uint32_t maps_total = 0;
  std::uint32_t maps_started = 0;
  std::uint32_t maps_done = 0;
  std::uint32_t reduces_total = 0;
  std::uint32_t reduces_started = 0;
  std::uint32_t reduces_done = 0;
};

enum class Phase { Map, Reduce, Done };

struct RunnableSet {
  Phase phase = Phase::Done;
  std::uint32_t count = 0;
};

/// Maps are runnable at submit; reduces only once every map has completed.
RunnableSet phase_gate(const JobProgress& job);

struct RoundContext {
  double time = 0.0;
  const ResourceVector* cluster = nullptr;
  const ResourceWeights* weights = nullptr;
  std::function<std::vector<double>()> fitness_population;
  // Called after usage, residual and pending count are updated; must record
  // the running task and schedule its completion.
  std::function<void(NodeState& node, std::size_t instance, const ResourceVector& request)>
      on_allocate;
  bool detailed_audit = true;
  std::vector<DecisionRecord>* decisions = nullptr;
  double* select_ms = nullptr;
};

struct Allocation {
  std::size_t instance = 0;
  ResourceVector request;
};

/// Offers one node to the policy until no pending instance's next task fits
/// its residual capacity.
std::vector<Allocation> schedule_round(NodeState& node, std::span<InstanceState> instances,
                                       Policy& policy, RoundContext& ctx);

struct UsageSample {
  double time = 0.0;
  ResourceVector allocated;
};

struct JobCompletion {
  std::string job_id;
  double submit_time = 0.0;
  double completion_time = 0.0;
};

struct RunResult {
  double start_time = 0.0;
  double makespan = 0.0;
  // Piecewise-constant cluster allocation; each sample holds until the next.
  std::vector<UsageSample> usage_series;
  // Wall-clock time spent in Policy::select; host dependent.
  double allocation_time_cost_ms = 0.0;
  std::vector<DecisionRecord> decisions;
  std::vector<JobCompletion> jobs;
  std::size_t tasks_scheduled = 0;
  std::uint64_t draws_consumed = 0;
  std::string policy;
  ResourceVector cluster_capacity;
  std::vector<std::string> resource_names;
};

struct EngineOptions {
  // Keep per-candidate snapshots and every pairwise comparison.
  bool detailed_audit = true;
  // Verify conservation and residual bounds after every event.
  bool check_invariants = true;
};

/// Runs the scenario to quiescence. Same scenario and seed give the same
/// result apart from allocation_time_cost_ms.
RunResult run(const Scenario& scenario, const EngineOptions& options = {});

}  // namespace fairsched
