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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairsched {

class EmptyPopulation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EstimatorParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LogBase { Ten, E, Two };

enum class EstimatorKind { Shannon, Renyi, Hartley, Collision, MinEntropy, Tsallis };

/// Empirical distribution of fitness values. Support points are kept sorted
/// by value; every probability is strictly positive.
struct FitnessDistribution {
  std::vector<std::pair<double, double>> support;  // (value, probability)
  std::size_t n = 0;
  // Empty means exact-value binning.
  std::optional<double> bin_width;
};

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Shannon;
  double k_const = 1000.0;
  double alpha = 2.0;  // Renyi order
  double q = 2.0;      // Tsallis nonextensive index
  LogBase base = LogBase::Ten;
  std::optional<double> bin_width;
  // Returned for an empty population.
  double t_min = 1e-6;

  void validate() const;
};

FitnessDistribution empirical_distribution(
    std::span<const double> fitness_values,
    std::optional<double> bin_width = std::nullopt);

double log_in(LogBase base, double x);

double shannon(const FitnessDistribution& d, double k_const,
               LogBase base = LogBase::Ten);
double renyi(const FitnessDistribution& d, double k_const, double alpha,
             LogBase base = LogBase::Ten);
double hartley(const FitnessDistribution& d, double k_const,
               LogBase base = LogBase::Ten);
double collision(const FitnessDistribution& d, double k_const,
                 LogBase base = LogBase::Ten);
double min_entropy(const FitnessDistribution& d, double k_const,
                   LogBase base = LogBase::Ten);
// Log-free, so no base.
double tsallis(const FitnessDistribution& d, double k_const, double q);

double estimate(const FitnessDistribution& d, const EstimatorConfig& config);

/// Entropy of the empirical fitness distribution, used as the annealing
/// temperature. An empty population yields config.t_min; a single-valued
/// population yields 0.
double temperature(std::span<const double> fitness_values,
                   const EstimatorConfig& config);

// "shannon", "renyi:0.5", "hartley", "collision", "min", "tsallis:1.2".
EstimatorConfig parse_estimator(std::string_view text);
std::string estimator_label(const EstimatorConfig& config);
LogBase parse_log_base(std::string_view text);

}  // namespace fairsched
