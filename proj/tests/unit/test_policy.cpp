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

#include <algorithm>
#include <cmath>
#include <random>

#include "fairsched/policy.hpp"

using namespace fairsched;

namespace {

const ResourceVector kCluster{100};
const ResourceWeights kWeights{1};

InstanceState inst(std::string id, double usage, double minshare = 0.0, double submit = 0.0) {
  InstanceState s;
  s.id = std::move(id);
  s.usage = ResourceVector{usage};
  s.minshare = ResourceVector{minshare};
  s.per_task_demand = ResourceVector{1};
  s.pending_tasks = 1;
  s.submit_time = submit;
  return s;
}

struct DrawCounter {
  double value;
  int calls = 0;
  double operator()() {
    ++calls;
    return value;
  }
};

SelectContext select_ctx() {
  SelectContext ctx;
  ctx.cluster = &kCluster;
  ctx.weights = &kWeights;
  ctx.fitness_population = [] { return std::vector<double>{2000, 3000}; };
  return ctx;
}

}  // namespace

TEST_CASE("fitness multiplies demand, residual and weight") {
  const ResourceWeights w{1, 1};
  CHECK(fitness({20, 40}, {50, 50}, w) == 3000.0);
  CHECK(fitness({30, 10}, {50, 50}, w) == 2000.0);
  CHECK(fitness({0, 0}, {50, 50}, w) == 0.0);
  CHECK(fitness({1, 1}, {0, 0}, w) == 0.0);
  CHECK(fitness({2, 3}, {10, 10}, ResourceWeights{2, 1}) == 70.0);
  CHECK_THROWS_AS(fitness(ResourceVector{1}, ResourceVector{1, 1}, w), DimensionError);
}

TEST_CASE("drf pairwise rows") {
  auto r = drf_compare(inst("A", 20), inst("B", 40), kCluster, kWeights);
  CHECK_FALSE(r.challenger_wins);
  CHECK(r.branch == Branch::BothNotNeedy);

  r = drf_compare(inst("A", 10, 20), inst("B", 40), kCluster, kWeights);
  CHECK_FALSE(r.challenger_wins);
  CHECK(r.branch == Branch::FirstNeedy);

  r = drf_compare(inst("A", 40), inst("B", 10, 20), kCluster, kWeights);
  CHECK(r.challenger_wins);
  CHECK(r.branch == Branch::SecondNeedy);

  r = drf_compare(inst("A", 3, 10), inst("B", 7, 10), kCluster, kWeights);
  CHECK_FALSE(r.challenger_wins);
  CHECK(r.branch == Branch::BothNeedy);
  r = drf_compare(inst("A", 7, 10), inst("B", 3, 10), kCluster, kWeights);
  CHECK(r.challenger_wins);

  // Exact ties go to the challenger.
  CHECK(drf_compare(inst("A", 0, 5), inst("B", 0, 5), kCluster, kWeights).challenger_wins);
  CHECK(drf_compare(inst("A", 30), inst("B", 30), kCluster, kWeights).challenger_wins);
}

TEST_CASE("saf improving challenger wins without a draw") {
  SafConfig cfg;
  cfg.pinned_temperature = 301.0;
  AnnealingState state;
  DrawCounter draw{0.99};
  SafContext ctx{state, cfg, std::ref(draw), [] { return std::vector<double>{}; }};
  auto r = saf_compare(inst("A", 40), inst("B", 30), kCluster, kWeights, ctx);
  CHECK(r.challenger_wins);
  CHECK(r.branch == Branch::BothNotNeedySafImproving);
  CHECK(*r.delta == doctest::Approx(-0.1));
  CHECK(draw.calls == 0);
  CHECK_FALSE(r.probability.has_value());
}

TEST_CASE("saf accepts a worse challenger with probability exp(-delta/T)") {
  SafConfig cfg;
  cfg.pinned_temperature = 301.0;
  AnnealingState state;
  DrawCounter draw{0.5};
  SafContext ctx{state, cfg, std::ref(draw), [] { return std::vector<double>{}; }};
  auto r = saf_compare(inst("A", 30), inst("B", 40), kCluster, kWeights, ctx);
  CHECK(r.branch == Branch::BothNotNeedySaf);
  CHECK(draw.calls == 1);
  CHECK(*r.probability == doctest::Approx(std::exp(-0.1 / 301.0)).epsilon(1e-15));
  CHECK(*r.probability == doctest::Approx(0.999668).epsilon(1e-6));
  CHECK(r.challenger_wins);
}

TEST_CASE("saf at the temperature floor behaves like drf") {
  SafConfig cfg;
  cfg.pinned_temperature = 1e-6;
  AnnealingState state;
  DrawCounter draw{1e-300};
  SafContext ctx{state, cfg, std::ref(draw), [] { return std::vector<double>{}; }};
  auto r = saf_compare(inst("A", 0), inst("B", 10), kCluster, kWeights, ctx);
  CHECK(*r.delta == doctest::Approx(0.1));
  CHECK(*r.probability == 0.0);
  CHECK_FALSE(r.challenger_wins);
}

TEST_CASE("saf needy rows match drf") {
  SafConfig cfg;
  AnnealingState state;
  DrawCounter draw{0.5};
  SafContext ctx{state, cfg, std::ref(draw), [] { return std::vector<double>{1, 2}; }};
  auto r = saf_compare(inst("A", 10, 20), inst("B", 40), kCluster, kWeights, ctx);
  CHECK(r.branch == Branch::FirstNeedy);
  CHECK_FALSE(r.challenger_wins);
  CHECK(draw.calls == 0);
  CHECK_FALSE(state.initialized);
}

TEST_CASE("saf initializes, cools and reheats its temperature") {
  SafConfig cfg;
  AnnealingState state;
  DrawCounter draw{0.5};
  SafContext ctx{state, cfg, std::ref(draw), [] { return std::vector<double>{2000, 3000}; }};
  auto r = saf_compare(inst("A", 30), inst("B", 40), kCluster, kWeights, ctx);
  CHECK(*r.temperature == doctest::Approx(301.029995663981195).epsilon(1e-14));
  CHECK(state.initialized);
  CHECK(state.k == 1);
  CHECK(state.t == doctest::Approx(301.029995663981195 * 0.85));

  // Improving comparisons do not cool.
  saf_compare(inst("A", 40), inst("B", 30), kCluster, kWeights, ctx);
  CHECK(state.k == 1);

  int steps = 0;
  while (state.reheats < 2 && steps < 1000) {
    saf_compare(inst("A", 30), inst("B", 40), kCluster, kWeights, ctx);
    ++steps;
  }
  CHECK(state.reheats == 2);
  CHECK(state.k == 0);
  // 0.85^k <= 0.01 first holds at k = 29; the 30th cooling attempt reheats.
  CHECK(steps == 29);
}

TEST_CASE("recorded probabilities stay in (0, 1]") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> u(0, 100);
  SafConfig cfg;
  AnnealingState state;
  std::uniform_real_distribution<double> unit(0, 1);
  SafContext ctx{state, cfg, [&] { return unit(rng); },
                 [] { return std::vector<double>{1, 2, 3, 3}; }};
  for (int i = 0; i < 2000; ++i) {
    auto r = saf_compare(inst("A", u(rng)), inst("B", u(rng)), kCluster, kWeights, ctx);
    if (r.probability) {
      CHECK(*r.probability > 0.0);
      CHECK(*r.probability <= 1.0);
      CHECK((*r.probability == 1.0) == (*r.delta == 0.0));
      CHECK(*r.probability == std::exp(-*r.delta / *r.temperature));
    }
  }
}

TEST_CASE("select: drf, fifo, fair and singletons") {
  Policy drf(PolicyConfig::drf(), 1);
  auto a = inst("A", 20), b = inst("B", 40), c = inst("C", 60);
  std::vector<const InstanceState*> cands{&b, &a, &c};
  auto ctx = select_ctx();
  auto sel = drf.select(cands, ctx);
  REQUIRE(sel);
  CHECK(sel->record.chosen == "A");
  CHECK(cands[sel->chosen]->id == "A");
  CHECK(sel->record.comparisons.size() == 2);
  CHECK(sel->record.candidates.size() == 3);

  Policy fifo(PolicyConfig::fifo(), 1);
  auto x = inst("x", 0, 0, 5), y = inst("y", 0, 0, 3), z = inst("z", 0, 0, 9);
  std::vector<const InstanceState*> fc{&x, &y, &z};
  CHECK(fifo.select(fc, ctx)->record.chosen == "y");

  Policy fair(PolicyConfig::fair(), 1);
  CHECK(fair.select(cands, ctx)->record.chosen == "A");

  std::vector<const InstanceState*> one{&c};
  auto single = drf.select(one, ctx);
  CHECK(single->record.branch == Branch::OnlyCandidate);
  CHECK(single->record.chosen == "C");

  CHECK_FALSE(drf.select(std::vector<const InstanceState*>{}, ctx).has_value());
}

TEST_CASE("drf selection ignores candidate order when ratios are distinct") {
  std::mt19937_64 rng(8);
  Policy drf(PolicyConfig::drf(), 1);
  auto ctx = select_ctx();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> usage(100);
    for (int i = 0; i < 100; ++i) usage[i] = i;
    std::shuffle(usage.begin(), usage.end(), rng);
    const std::size_t n = 2 + trial % 10;
    std::vector<InstanceState> pool;
    for (std::size_t i = 0; i < n; ++i) {
      const bool needy = (trial + i) % 3 == 0;
      pool.push_back(inst("i" + std::to_string(i), usage[i], needy ? usage[i] + 50 : 0));
    }
    std::vector<const InstanceState*> cands;
    for (auto& p : pool) cands.push_back(&p);
    const std::string first = drf.select(cands, ctx)->record.chosen;
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(cands.begin(), cands.end(), rng);
      CHECK(drf.select(cands, ctx)->record.chosen == first);
    }
  }
}

TEST_CASE("policy config validation and names") {
  PolicyConfig bad{PolicyKind::Saf, std::nullopt};
  CHECK_THROWS(bad.validate());
  PolicyConfig bad2{PolicyKind::Drf, SafConfig{}};
  CHECK_THROWS(bad2.validate());
  CHECK_NOTHROW(PolicyConfig::saf_with().validate());
  CHECK(parse_policy("SAF") == PolicyKind::Saf);
  CHECK(policy_name(PolicyKind::Fair) == "fair");
  CHECK_THROWS(parse_policy("lottery"));
  CHECK(branch_label(Branch::BothNotNeedySaf) == "both-not-needy-saf");
}
