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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "fairsched/entropy.hpp"

namespace fairsched {

enum class CoolingKind { Exponential, Linear, Logarithmic, Quadratic };

// ClosedForm recomputes T from (T0, k); Multiplicative applies T = alpha * T
// for every kind.
enum class StepMode { ClosedForm, Multiplicative };

struct CoolingConfig {
  CoolingKind kind = CoolingKind::Exponential;
  // Exponential: [0.8, 0.9]; other kinds: > 0.
  double alpha = 0.85;
  // cold_temperature = cold_fraction * T0
  double cold_fraction = 0.01;
  StepMode step_mode = StepMode::ClosedForm;
  // Accept an exponential alpha outside [0.8, 0.9] with a warning.
  bool allow_alpha_out_of_range = false;

  static CoolingConfig make(CoolingKind kind);
  void validate() const;
};

/// Temperature after k cycles since the last reheat. Logarithms are base 10.
double temperature_at(const CoolingConfig& config, double t0, std::uint64_t k);

struct AnnealingState {
  double t0 = 0.0;
  double t = 0.0;
  std::uint64_t k = 0;
  double cold_temperature = 0.0;
  bool needs_reheat = false;
  bool initialized = false;
  std::uint64_t reheats = 0;
};

/// One cooling cycle. A state at or below its cold temperature is flagged for
/// reheat and otherwise left unchanged.
AnnealingState step(const AnnealingState& state, const CoolingConfig& config);

/// Recompute T0 = T from a fitness population and reset the cycle counter.
/// A zero or missing entropy is clamped to estimator.t_min.
AnnealingState reheat(const AnnealingState& state,
                      std::span<const double> fitness_population,
                      const EstimatorConfig& estimator,
                      const CoolingConfig& config);

CoolingConfig parse_cooling(std::string_view text);
std::string cooling_label(CoolingKind kind);

}  // namespace fairsched
