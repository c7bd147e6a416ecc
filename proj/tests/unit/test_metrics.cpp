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

#include <random>

#include "fairsched/metrics.hpp"

using namespace fairsched;

namespace {

RunSummary summary(std::string policy, std::uint64_t seed, double makespan, double cpu) {
  RunSummary s;
  s.policy = std::move(policy);
  s.seed = seed;
  s.makespan = makespan;
  s.resource_names = {"cpu", "mem"};
  s.usage_over_time = {cpu, 2 * cpu};
  return s;
}

}  // namespace

TEST_CASE("usage over time is a step average") {
  std::vector<UsageSample> constant{{0, {4}}, {10, {0}}};
  CHECK(usage_over_time(constant, 0, 10, 1)[0] == doctest::Approx(4.0));
  std::vector<UsageSample> half{{0, {8}}, {5, {0}}};
  CHECK(usage_over_time(half, 0, 10, 1)[0] == doctest::Approx(4.0));
  CHECK(usage_over_time(std::vector<UsageSample>{}, 0, 0, 2) == std::vector<double>{0, 0});
  CHECK(usage_over_time(half, 0, 0, 1)[0] == 0.0);
  std::vector<UsageSample> offset{{100, {2, 6}}, {110, {0, 0}}};
  const auto u = usage_over_time(offset, 100, 20, 2);
  CHECK(u[0] == doctest::Approx(1.0));
  CHECK(u[1] == doctest::Approx(3.0));
}

TEST_CASE("usage over time ignores how a constant stretch is sampled") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> level(0, 64);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<UsageSample> coarse;
    double t = 0;
    for (int i = 0; i < 10; ++i) {
      coarse.push_back({t, {double(level(rng))}});
      t += 1 + i % 3;
    }
    coarse.push_back({t, {0}});
    std::vector<UsageSample> fine;
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
      fine.push_back(coarse[i]);
      fine.push_back({(coarse[i].time + coarse[i + 1].time) / 2, coarse[i].allocated});
    }
    fine.push_back(coarse.back());
    CHECK(usage_over_time(coarse, 0, t, 1)[0] == doctest::Approx(usage_over_time(fine, 0, t, 1)[0]));
  }
}

TEST_CASE("percent change") {
  CHECK(percent_change(20.92, 57.25) == doctest::Approx(173.6615678776).epsilon(1e-10));
  CHECK(percent_change(350, 79) == doctest::Approx(-77.4285714286).epsilon(1e-10));
  CHECK(percent_change(5, 5) == 0.0);
  CHECK_THROWS_AS(percent_change(0, 1), std::domain_error);
  for (double a : {0.5, 3.0, 1e4}) {
    for (double x : {-0.5, 0.25, 2.0}) CHECK(percent_change(a, a * (1 + x)) == doctest::Approx(100 * x));
  }
}

TEST_CASE("compare pairs by seed") {
  std::map<std::string, std::vector<RunSummary>> results;
  results["drf"] = {summary("drf", 1, 422, 10)};
  results["saf"] = {summary("saf", 1, 280, 12)};
  auto report = compare(results, "drf");
  const auto& saf = report.at("saf").metrics.at("makespan");
  CHECK(*saf.percent_vs_baseline == doctest::Approx(-33.649289).epsilon(1e-6));
  CHECK(saf.stddev == 0.0);
  CHECK(saf.negative == 1);
  REQUIRE(saf.paired.size() == 1);
  CHECK(*saf.paired[0].percent == doctest::Approx(-33.649289).epsilon(1e-6));
  CHECK(report.policies.front().policy == "drf");
  CHECK(report.metric_names ==
        std::vector<std::string>{"makespan", "usage_cpu", "usage_mem", "allocation_time_cost_ms"});
}

TEST_CASE("compare statistics") {
  std::map<std::string, std::vector<RunSummary>> results;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    results["drf"].push_back(summary("drf", s, 100, 10.0 * s));
    results["saf"].push_back(summary("saf", s, 90 + s, 11.0 * s));
  }
  const auto report = compare(results, "drf");
  const auto& cpu = report.at("saf").metrics.at("usage_cpu");
  CHECK(cpu.mean == doctest::Approx(27.5));
  CHECK(cpu.stddev == doctest::Approx(14.2009389));
  CHECK(cpu.positive == 4);
  for (const auto& d : cpu.paired) {
    CHECK(*d.percent == doctest::Approx(percent_change(d.baseline, d.treatment)));
    CHECK(*d.percent == doctest::Approx(10.0));
  }
  const auto& ms = report.at("saf").metrics.at("makespan");
  CHECK(ms.negative == 4);
}

TEST_CASE("compare rejects unmatched seeds") {
  std::map<std::string, std::vector<RunSummary>> results;
  for (std::uint64_t s = 1; s <= 8; ++s) results["drf"].push_back(summary("drf", s, 1, 1));
  for (std::uint64_t s = 1; s <= 8; ++s) {
    if (s != 7) results["saf"].push_back(summary("saf", s, 1, 1));
  }
  CHECK_THROWS_AS(compare(results, "drf"), PairingError);
  results["saf"].push_back(summary("saf", 7, 1, 1));
  CHECK_NOTHROW(compare(results, "drf"));
  results["saf"].push_back(summary("saf", 7, 1, 1));
  CHECK_THROWS_AS(compare(results, "drf"), PairingError);
  CHECK_THROWS_AS(compare(results, "fifo"), PairingError);
}

TEST_CASE("mean and sample std") {
  const std::vector<double> one{3.0};
  CHECK(sample_stddev(one) == 0.0);
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == 5.0);
  CHECK(sample_stddev(xs) == doctest::Approx(2.1380899));
}
