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

#include "fairsched/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace fairsched {

CoolingConfig CoolingConfig::make(CoolingKind kind) {
  CoolingConfig config;
  config.kind = kind;
  config.alpha = kind == CoolingKind::Exponential ? 0.85 : 1.0;
  return config;
}

void CoolingConfig::validate() const {
  if (!(cold_fraction > 0.0 && cold_fraction < 1.0)) {
    throw std::invalid_argument("cold fraction must lie in (0, 1)");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("cooling alpha must be > 0");
  }
  if (kind == CoolingKind::Exponential && (alpha < 0.8 || alpha > 0.9)) {
    std::ostringstream msg;
    msg << "exponential cooling alpha " << alpha << " outside [0.8, 0.9]";
    if (!allow_alpha_out_of_range) throw std::invalid_argument(msg.str());
    spdlog::warn("{} (override enabled)", msg.str());
  }
  if (kind == CoolingKind::Exponential && alpha >= 1.0) {
    throw std::invalid_argument("exponential cooling alpha must be < 1");
  }
}

double temperature_at(const CoolingConfig& config, double t0, std::uint64_t k) {
  const double kd = static_cast<double>(k);
  switch (config.kind) {
    case CoolingKind::Exponential:
      return t0 * std::pow(config.alpha, kd);
    case CoolingKind::Linear:
      return t0 / (1.0 + config.alpha * kd);
    case CoolingKind::Logarithmic:
      return t0 / (1.0 + config.alpha * std::log10(1.0 + kd));
    case CoolingKind::Quadratic:
      return t0 / (1.0 + config.alpha * std::log10(1.0 + kd * kd));
  }
  return t0;
}

AnnealingState step(const AnnealingState& state, const CoolingConfig& config) {
  AnnealingState next = state;
  if (state.t > state.cold_temperature) {
    next.k = state.k + 1;
    next.t = config.step_mode == StepMode::ClosedForm
                 ? temperature_at(config, state.t0, next.k)
                 : config.alpha * state.t;
    next.needs_reheat = false;
  } else {
    next.needs_reheat = true;
  }
  return next;
}

AnnealingState reheat(const AnnealingState& state,
                      std::span<const double> fitness_population,
                      const EstimatorConfig& estimator,
                      const CoolingConfig& config) {
  AnnealingState next = state;
  const double t = temperature(fitness_population, estimator);
  next.t0 = std::max(t, estimator.t_min);
  next.t = next.t0;
  next.k = 0;
  next.cold_temperature = config.cold_fraction * next.t0;
  next.needs_reheat = false;
  next.initialized = true;
  next.reheats = state.reheats + 1;
  return next;
}

CoolingConfig parse_cooling(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exponential" || lower == "exp") return CoolingConfig::make(CoolingKind::Exponential);
  if (lower == "linear") return CoolingConfig::make(CoolingKind::Linear);
  if (lower == "logarithmic" || lower == "log") return CoolingConfig::make(CoolingKind::Logarithmic);
  if (lower == "quadratic") return CoolingConfig::make(CoolingKind::Quadratic);
  throw std::invalid_argument("unknown cooling schedule '" + std::string(text) + "'");
}

std::string cooling_label(CoolingKind kind) {
  switch (kind) {
    case CoolingKind::Exponential:
      return "exponential";
    case CoolingKind::Linear:
      return "linear";
    case CoolingKind::Logarithmic:
      return "logarithmic";
    case CoolingKind::Quadratic:
      return "quadratic";
  }
  return "unknown";
}

}  // namespace fairsched
