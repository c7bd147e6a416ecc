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

#include "fairsched/cooling.hpp"

using namespace fairsched;

namespace {
constexpr double kTwoEqualK1000 = 301.029995663981195;
}

TEST_CASE("closed-form schedules") {
  auto exp = CoolingConfig::make(CoolingKind::Exponential);
  CHECK(temperature_at(exp, 301, 2) == doctest::Approx(217.4725).epsilon(1e-12));
  for (auto kind : {CoolingKind::Exponential, CoolingKind::Linear, CoolingKind::Logarithmic,
                    CoolingKind::Quadratic}) {
    CHECK(temperature_at(CoolingConfig::make(kind), 123.0, 0) == 123.0);
  }
  auto lin = CoolingConfig::make(CoolingKind::Linear);
  CHECK(lin.alpha == 1.0);
  CHECK(temperature_at(lin, 100, 1) == doctest::Approx(50.0));
  auto lg = CoolingConfig::make(CoolingKind::Logarithmic);
  CHECK(temperature_at(lg, 100, 9) == doctest::Approx(50.0));
  auto quad = CoolingConfig::make(CoolingKind::Quadratic);
  CHECK(temperature_at(quad, 100, 3) == doctest::Approx(50.0));
}

TEST_CASE("exponential alpha range") {
  CoolingConfig c;
  c.alpha = 0.95;
  CHECK_THROWS(c.validate());
  c.allow_alpha_out_of_range = true;
  CHECK_NOTHROW(c.validate());
  CoolingConfig d;
  d.cold_fraction = 1.0;
  CHECK_THROWS(d.validate());
  auto lin = CoolingConfig::make(CoolingKind::Linear);
  lin.alpha = 0.0;
  CHECK_THROWS(lin.validate());
}

TEST_CASE("step cools until cold, then flags reheat") {
  CoolingConfig c;
  AnnealingState s;
  s.t0 = s.t = 301;
  s.cold_temperature = 3.01;
  s.initialized = true;
  auto n = step(s, c);
  CHECK(n.t == doctest::Approx(255.85).epsilon(1e-12));
  CHECK(n.k == 1);
  CHECK_FALSE(n.needs_reheat);

  for (int i = 1; i < 10; ++i) n = step(n, c);
  CHECK(n.k == 10);
  CHECK(n.t == doctest::Approx(59.2591957).epsilon(1e-8));

  AnnealingState cold = s;
  cold.t = 2.0;
  auto m = step(cold, c);
  CHECK(m.needs_reheat);
  CHECK(m.t == 2.0);
  CHECK(m.k == 0);
}

TEST_CASE("multiplicative stepping agrees with the closed form for exponential") {
  CoolingConfig closed;
  CoolingConfig mult;
  mult.step_mode = StepMode::Multiplicative;
  AnnealingState a;
  a.t0 = a.t = 301;
  a.cold_temperature = 0.0;
  AnnealingState b = a;
  for (int i = 0; i < 100; ++i) {
    a = step(a, closed);
    b = step(b, mult);
  }
  CHECK(std::abs(a.t - b.t) / a.t < 1e-9);
}

TEST_CASE("reheat recomputes from the population") {
  EstimatorConfig est;
  CoolingConfig c;
  AnnealingState s;
  const std::vector<double> pop{2000, 3000};
  auto r = reheat(s, pop, est, c);
  CHECK(r.t0 == doctest::Approx(kTwoEqualK1000).epsilon(1e-14));
  CHECK(r.t == r.t0);
  CHECK(r.k == 0);
  CHECK(r.cold_temperature == doctest::Approx(3.0103).epsilon(1e-4));
  CHECK(r.initialized);
  CHECK(r.reheats == 1);

  const std::vector<double> flat{5, 5};
  CHECK(reheat(s, flat, est, c).t == est.t_min);
  CHECK(reheat(s, std::vector<double>{}, est, c).t == est.t_min);

  auto stepped = step(step(r, c), c);
  auto again = reheat(stepped, pop, est, c);
  CHECK(again.k == 0);
  CHECK(again.t == again.t0);
}

TEST_CASE("schedules are monotone and bounded by T0") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t0d(0.001, 1e4);
  std::uniform_real_distribution<double> expa(0.8, 0.9);
  std::uniform_real_distribution<double> other(0.01, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    for (auto kind : {CoolingKind::Exponential, CoolingKind::Linear, CoolingKind::Logarithmic,
                      CoolingKind::Quadratic}) {
      auto c = CoolingConfig::make(kind);
      c.alpha = kind == CoolingKind::Exponential ? expa(rng) : other(rng);
      const double t0 = t0d(rng);
      double prev = t0;
      for (std::uint64_t k = 0; k <= 1000; ++k) {
        const double t = temperature_at(c, t0, k);
        CHECK(t <= prev);
        CHECK(t <= t0);
        prev = t;
      }
    }
  }
  const double t0 = 100.0;
  CHECK(temperature_at(CoolingConfig::make(CoolingKind::Exponential), t0, 100) <
        temperature_at(CoolingConfig::make(CoolingKind::Linear), t0, 100));
}

TEST_CASE("cooling parsing") {
  CHECK(parse_cooling("linear").kind == CoolingKind::Linear);
  CHECK(parse_cooling("Quadratic").kind == CoolingKind::Quadratic);
  CHECK_THROWS(parse_cooling("cubic"));
  CHECK(cooling_label(CoolingKind::Logarithmic) == "logarithmic");
}
