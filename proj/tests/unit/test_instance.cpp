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

#include <doctest.h>

#include <cmath>
#include <random>

#include "fairsched/instance.hpp"

using namespace fairsched;

namespace {

InstanceState make(ResourceVector usage, ResourceVector minshare) {
  InstanceState s;
  s.id = "x";
  s.usage = std::move(usage);
  s.minshare = std::move(minshare);
  s.per_task_demand = ResourceVector::zeros(s.usage.size());
  s.pending_tasks = 1;
  return s;
}

}  // namespace

TEST_CASE("minshare ratio on the dominant resource") {
  const ResourceVector cluster{100, 100};
  const ResourceWeights w{1, 1};
  CHECK(minshare_ratio(make({1, 10}, {0, 5}), cluster, w) == doctest::Approx(2.0));
  CHECK(minshare_ratio(make({0, 0}, {5, 5}), cluster, w) == 0.0);
  CHECK(std::isinf(minshare_ratio(make({3, 0}, {0, 5}), cluster, w)));
}

TEST_CASE("dominant fairshare ratio divides by capacity and weight") {
  const ResourceVector cluster{100, 100};
  CHECK(dominant_fairshare_ratio(make({1, 10}, {0, 0}), cluster, ResourceWeights{1, 2}) ==
        doctest::Approx(0.05));
  CHECK(dominant_fairshare_ratio(make({30, 10}, {0, 0}), cluster, ResourceWeights{1, 1}) ==
        doctest::Approx(0.3));
  CHECK(dominant_fairshare_ratio(make({0, 0}, {0, 0}), cluster, ResourceWeights{1, 1}) == 0.0);
}

TEST_CASE("needy is strictly below minshare") {
  const ResourceVector cluster{100, 100};
  const ResourceWeights w{1, 1};
  CHECK(is_needy(make({10, 0}, {15, 0}), cluster, w));
  CHECK_FALSE(is_needy(make({30, 10}, {15, 2}), cluster, w));
  CHECK_FALSE(is_needy(make({5, 0}, {5, 0}), cluster, w));
}

TEST_CASE("instance properties on random states") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> amount(0, 50);
  const ResourceVector cluster{64, 128, 32};
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = make({double(amount(rng)), double(amount(rng)), double(amount(rng))},
                     {double(amount(rng) + 1), double(amount(rng) + 1), double(amount(rng) + 1)});
    const ResourceWeights w{1.0 + trial % 3, 1.0, 0.5 + trial % 2};
    CHECK(is_needy(inst, cluster, w) == (minshare_ratio(inst, cluster, w) < 1.0));

    const double before = dominant_fairshare_ratio(inst, cluster, w);
    auto bumped = inst;
    std::vector<double> u(bumped.usage.values().begin(), bumped.usage.values().end());
    u[trial % 3] += 1.0;
    bumped.usage = ResourceVector(u);
    CHECK(dominant_fairshare_ratio(bumped, cluster, w) >= before);

    const ResourceWeights w3{3.0 * w[0], 3.0 * w[1], 3.0 * w[2]};
    CHECK(dominant_of(inst, cluster, w).index == dominant_of(inst, cluster, w3).index);
    CHECK(is_needy(inst, cluster, w) == is_needy(inst, cluster, w3));
    CHECK(dominant_fairshare_ratio(inst, cluster, w3) == doctest::Approx(before / 3.0));
  }
}
