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

#include "fairsched/instance.hpp"

namespace fairsched {

DominantShare dominant_of(const InstanceState& inst,
                          const ResourceVector& cluster,
                          const ResourceWeights& weights) {
  const auto s = shares(inst.usage, cluster);
  return dominant(s, weights);
}

double minshare_ratio(const InstanceState& inst, const ResourceVector& cluster,
                      const ResourceWeights& weights) {
  const std::size_t dr = dominant_of(inst, cluster, weights).index;
  if (inst.minshare[dr] == 0.0) return kUnboundedMinshareRatio;
  return inst.usage[dr] / inst.minshare[dr];
}

double dominant_fairshare_ratio(const InstanceState& inst,
                                const ResourceVector& cluster,
                                const ResourceWeights& weights) {
  return dominant_of(inst, cluster, weights).ratio;
}

bool is_needy(const InstanceState& inst, const ResourceVector& cluster,
              const ResourceWeights& weights) {
  const std::size_t dr = dominant_of(inst, cluster, weights).index;
  return inst.usage[dr] < inst.minshare[dr];
}

}  // namespace fairsched
