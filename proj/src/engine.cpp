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

#include "fairsched/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace fairsched {

RunnableSet phase_gate(const JobProgress& job) {
  if (job.maps_done < job.maps_total) {
    return {Phase::Map, job.maps_total - job.maps_started};
  }
  if (job.reduces_done < job.reduces_total) {
    return {Phase::Reduce, job.reduces_total - job.reduces_started};
  }
  return {Phase::Done, 0};
}

std::vector<Allocation> schedule_round(NodeState& node, std::span<InstanceState> instances,
                                       Policy& policy, RoundContext& ctx) {
  std::vector<Allocation> allocations;
  std::vector<const InstanceState*> candidates;
  std::vector<std::size_t> positions;
  candidates.reserve(instances.size());
  positions.reserve(instances.size());

  SelectContext sctx;
  sctx.time = ctx.time;
  sctx.node = node.id;
  sctx.cluster = ctx.cluster;
  sctx.weights = ctx.weights;
  sctx.fitness_population = ctx.fitness_population;
  sctx.detailed_audit = ctx.detailed_audit;

  while (true) {
    candidates.clear();
    positions.clear();
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const InstanceState& inst = instances[i];
      if (inst.pending_tasks > 0 && fits_within(inst.per_task_demand, node.residual)) {
        candidates.push_back(&inst);
        positions.push_back(i);
      }
    }
    if (candidates.empty()) break;

    const auto started = std::chrono::steady_clock::now();
    auto selection = policy.select(candidates, sctx);
    const auto elapsed = std::chrono::steady_clock::now() - started;
    if (ctx.select_ms) {
      *ctx.select_ms += std::chrono::duration<double, std::milli>(elapsed).count();
    }

    const std::size_t chosen = positions[selection->chosen];
    InstanceState& inst = instances[chosen];
    const ResourceVector request = inst.per_task_demand;
    node.residual = checked_sub(node.residual, request);
    inst.usage = add(inst.usage, request);
    --inst.pending_tasks;
    if (ctx.on_allocate) ctx.on_allocate(node, chosen, request);
    if (ctx.decisions) ctx.decisions->push_back(std::move(selection->record));
    allocations.push_back({chosen, request});
  }
  return allocations;
}

namespace {

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const { return b < a; }
};

bool close_enough(const ResourceVector& a, const ResourceVector& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    const double tol = 1e-9 * std::max({1.0, std::abs(a[q]), std::abs(b[q])});
    if (std::abs(a[q] - b[q]) > tol) return false;
  }
  return true;
}

class Simulation {
 public:
  Simulation(const Scenario& scenario, const EngineOptions& options)
      : scenario_(scenario),
        options_(options),
        cluster_(scenario.cluster.total()),
        policy_(scenario.policy, scenario.effective_decision_seed()) {
    const std::size_t k = scenario.cluster.node_capacity.size();
    allocated_ = ResourceVector::zeros(k);
    for (std::size_t n = 0; n < scenario.cluster.node_count; ++n) {
      nodes_.push_back({n, scenario.cluster.node_capacity, scenario.cluster.node_capacity, {}});
    }
    const std::size_t jobs = scenario.jobs.size();
    instances_.resize(jobs);
    progress_.resize(jobs);
    submitted_.assign(jobs, false);
    completion_.assign(jobs, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < jobs; ++j) {
      const JobSpec& spec = scenario.jobs[j];
      InstanceState& inst = instances_[j];
      inst.id = spec.job_id;
      inst.index = j;
      inst.per_task_demand = spec.map_count > 0 ? spec.map_request : spec.reduce_request;
      if (inst.per_task_demand.empty()) inst.per_task_demand = ResourceVector::zeros(k);
      inst.minshare = spec.minshare;
      inst.usage = ResourceVector::zeros(k);
      inst.submit_time = spec.submit_time;
      progress_[j].maps_total = spec.map_count;
      progress_[j].reduces_total = spec.reduce_count;
    }
    jobs_remaining_ = jobs;

    round_.cluster = &cluster_;
    round_.weights = &scenario.weights;
    round_.fitness_population = [this] { return fitness_population(); };
    round_.on_allocate = [this](NodeState& node, std::size_t inst, const ResourceVector& req) {
      on_allocate(node, inst, req);
    };
    round_.detailed_audit = options.detailed_audit;
    round_.decisions = &result_.decisions;
    round_.select_ms = &result_.allocation_time_cost_ms;
  }

  RunResult run() {
    result_.policy = policy_name(scenario_.policy.kind);
    result_.cluster_capacity = cluster_;
    result_.resource_names = scenario_.cluster.resource_names;
    if (scenario_.jobs.empty()) return std::move(result_);

    double start = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < scenario_.jobs.size(); ++j) {
      start = std::min(start, scenario_.jobs[j].submit_time);
      push({scenario_.jobs[j].submit_time, EventKind::JobSubmit, 0, j, 0, 0});
    }
    result_.start_time = start;
    result_.usage_series.push_back({start, allocated_});

    const double h = scenario_.heartbeat_interval;
    heartbeat_index_ = static_cast<std::uint64_t>(std::ceil(start / h));
    push({heartbeat_time(), EventKind::Heartbeat, 0, 0, 0, 0});

    while (!queue_.empty()) {
      const Event ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      round_.time = now_;
      switch (ev.kind) {
        case EventKind::TaskComplete:
          on_task_complete(ev);
          break;
        case EventKind::JobSubmit:
          on_job_submit(ev.job);
          break;
        case EventKind::Heartbeat:
          on_heartbeat();
          break;
      }
      sample_usage();
      if (options_.check_invariants) check_invariants();
    }

    double last = start;
    for (std::size_t j = 0; j < scenario_.jobs.size(); ++j) {
      last = std::max(last, completion_[j]);
      result_.jobs.push_back({scenario_.jobs[j].job_id, scenario_.jobs[j].submit_time,
                              completion_[j]});
    }
    result_.makespan = last - start;
    result_.draws_consumed = policy_.draws_consumed();
    spdlog::debug("run finished: policy={} makespan={} tasks={} decisions={}", result_.policy,
                  result_.makespan, result_.tasks_scheduled, result_.decisions.size());
    return std::move(result_);
  }

 private:
  void push(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(ev);
  }

  double heartbeat_time() const {
    return static_cast<double>(heartbeat_index_) * scenario_.heartbeat_interval;
  }

  std::vector<double> fitness_population() const {
    std::vector<double> out;
    for (const auto& node : nodes_) {
      for (const auto& task : node.running) {
        out.push_back(fitness(task.request, node.residual, scenario_.weights));
      }
    }
    return out;
  }

  void refresh_instance(std::size_t j) {
    InstanceState& inst = instances_[j];
    const RunnableSet runnable = phase_gate(progress_[j]);
    if (!submitted_[j] || runnable.phase == Phase::Done) {
      inst.pending_tasks = 0;
      return;
    }
    const JobSpec& spec = scenario_.jobs[j];
    inst.pending_tasks = runnable.count;
    inst.per_task_demand = runnable.phase == Phase::Map ? spec.map_request : spec.reduce_request;
  }

  void on_allocate(NodeState& node, std::size_t j, const ResourceVector& request) {
    const JobSpec& spec = scenario_.jobs[j];
    JobProgress& prog = progress_[j];
    double duration = 0.0;
    if (phase_gate(prog).phase == Phase::Map) {
      ++prog.maps_started;
      duration = spec.map_duration;
    } else {
      ++prog.reduces_started;
      duration = spec.reduce_duration;
    }
    const std::uint64_t task_id = next_task_++;
    node.running.push_back({task_id, j, request, now_ + duration});
    allocated_ = add(allocated_, request);
    ++result_.tasks_scheduled;
    push({now_ + duration, EventKind::TaskComplete, 0, 0, node.id, task_id});
  }

  void on_task_complete(const Event& ev) {
    NodeState& node = nodes_[ev.node];
    auto it = std::find_if(node.running.begin(), node.running.end(),
                           [&](const RunningTask& t) { return t.task_id == ev.task; });
    if (it == node.running.end()) throw std::logic_error("completion for unknown task");
    const RunningTask task = *it;
    node.running.erase(it);

    node.residual = add(node.residual, task.request);
    allocated_ = checked_sub(allocated_, task.request);
    InstanceState& inst = instances_[task.instance];
    if (scenario_.usage_basis == UsageBasis::Live) {
      inst.usage = checked_sub(inst.usage, task.request);
    }

    JobProgress& prog = progress_[task.instance];
    if (prog.maps_done < prog.maps_total) {
      ++prog.maps_done;
    } else {
      ++prog.reduces_done;
    }
    if (phase_gate(prog).phase == Phase::Done) {
      completion_[task.instance] = now_;
      --jobs_remaining_;
    }
    refresh_instance(task.instance);
    schedule_round(node, instances_, policy_, round_);
  }

  void on_job_submit(std::size_t j) {
    submitted_[j] = true;
    if (phase_gate(progress_[j]).phase == Phase::Done) {
      completion_[j] = now_;
      --jobs_remaining_;
    }
    refresh_instance(j);
  }

  void on_heartbeat() {
    for (auto& node : nodes_) schedule_round(node, instances_, policy_, round_);
    if (jobs_remaining_ > 0) {
      ++heartbeat_index_;
      push({heartbeat_time(), EventKind::Heartbeat, 0, 0, 0, 0});
    }
  }

  void sample_usage() {
    auto& series = result_.usage_series;
    if (series.back().time == now_) {
      series.back().allocated = allocated_;
      if (series.size() >= 2 && series[series.size() - 2].allocated == allocated_) {
        series.pop_back();
      }
    } else if (!(series.back().allocated == allocated_)) {
      series.push_back({now_, allocated_});
    }
  }

  void check_invariants() const {
    const std::size_t k = cluster_.size();
    ResourceVector held = ResourceVector::zeros(k);
    for (const auto& node : nodes_) {
      ResourceVector running = ResourceVector::zeros(k);
      for (const auto& t : node.running) running = add(running, t.request);
      if (!close_enough(add(node.residual, running), node.capacity)) {
        throw std::logic_error("node " + std::to_string(node.id) +
                               ": residual + running != capacity");
      }
      if (!fits_within(node.residual, node.capacity) &&
          !close_enough(node.residual, node.capacity)) {
        throw std::logic_error("node residual exceeds capacity");
      }
      held = add(held, running);
    }
    if (!close_enough(held, allocated_)) {
      throw std::logic_error("allocated total diverged from running tasks");
    }
    if (scenario_.usage_basis == UsageBasis::Live) {
      ResourceVector usage = ResourceVector::zeros(k);
      for (const auto& inst : instances_) usage = add(usage, inst.usage);
      if (!close_enough(usage, held)) {
        throw std::logic_error("conservation violated: instance usage != held resources");
      }
    }
  }

  const Scenario& scenario_;
  EngineOptions options_;
  ResourceVector cluster_;
  Policy policy_;
  std::vector<NodeState> nodes_;
  std::vector<InstanceState> instances_;
  std::vector<JobProgress> progress_;
  std::vector<bool> submitted_;
  std::vector<double> completion_;
  std::size_t jobs_remaining_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_task_ = 0;
  std::uint64_t heartbeat_index_ = 0;
  double now_ = 0.0;
  ResourceVector allocated_;
  RoundContext round_;
  RunResult result_;
};

}  // namespace

RunResult run(const Scenario& scenario, const EngineOptions& options) {
  scenario.validate();
  Simulation sim(scenario, options);
  return sim.run();
}

}  // namespace fairsched
