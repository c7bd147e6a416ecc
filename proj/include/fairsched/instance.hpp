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
#include <limits>
#include <string>

#include "fairsched/resource.hpp"

namespace fairsched {

/// A schedulable entity (one job) as seen by the policies.
struct InstanceState {
  std::string id;
  // Position in the engine's stable visiting order.
  std::size_t index = 0;
  ResourceVector per_task_demand;
  ResourceVector minshare;
  ResourceVector usage;
  std::size_t pending_tasks = 0;
  double submit_time = 0.0;
};

inline constexpr double kUnboundedMinshareRatio =
    std::numeric_limits<double>::infinity();

// Weighted-dominant resource of the current usage. Recomputed on every call.
DominantShare dominant_of(const InstanceState& inst,
                          const ResourceVector& cluster,
                          const ResourceWeights& weights);

/// U[DR] / M[DR]; +inf when the minshare on the dominant resource is zero.
double minshare_ratio(const InstanceState& inst, const ResourceVector& cluster,
                      const ResourceWeights& weights);

/// U[DR] / (C[DR] * W[DR]).
double dominant_fairshare_ratio(const InstanceState& inst,
                                const ResourceVector& cluster,
                                const ResourceWeights& weights);

/// Needy iff U[DR] < M[DR]. Equality is not needy.
bool is_needy(const InstanceState& inst, const ResourceVector& cluster,
              const ResourceWeights& weights);

}  // namespace fairsched
