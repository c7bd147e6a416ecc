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

#include <string>

#include "fairsched/workload.hpp"

namespace fairsched::testing {

// One node of <100, 100>. User A asks <30, 10> per task with minshare
// <15, 2>; user B asks <20, 40> with minshare <10, 20>. Task durations
// outlast the first round, so nothing completes while it is replayed.
inline Scenario two_user_scenario(PolicyConfig policy, std::uint32_t tasks_each = 10) {
  Scenario s;
  s.cluster.node_count = 1;
  s.cluster.node_capacity = ResourceVector{100, 100};
  s.cluster.resource_names = {"cpu", "mem"};
  s.weights = ResourceWeights{1, 1};
  s.policy = std::move(policy);
  s.seed = 1;

  JobSpec a;
  a.job_id = "A";
  a.user_id = "A";
  a.map_count = tasks_each;
  a.map_request = ResourceVector{30, 10};
  a.reduce_request = ResourceVector{30, 10};
  a.map_duration = 1000;
  a.reduce_duration = 1000;
  a.minshare = ResourceVector{15, 2};

  JobSpec b = a;
  b.job_id = "B";
  b.user_id = "B";
  b.map_request = ResourceVector{20, 40};
  b.reduce_request = ResourceVector{20, 40};
  b.minshare = ResourceVector{10, 20};

  s.jobs = {a, b};
  return s;
}

inline JobSpec simple_job(std::string id, ResourceVector request, double duration,
                          std::uint32_t maps = 1, std::uint32_t reduces = 0,
                          double submit = 0.0) {
  JobSpec j;
  j.job_id = id;
  j.user_id = id;
  j.submit_time = submit;
  j.map_count = maps;
  j.reduce_count = reduces;
  j.map_request = request;
  j.reduce_request = request;
  j.map_duration = duration;
  j.reduce_duration = duration;
  j.minshare = scale(request, 0.5);
  return j;
}

}  // namespace fairsched::testing
