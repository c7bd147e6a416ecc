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

#include "fairsched/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace fairsched {
namespace {

void require_order(double value, const char* name) {
  if (!(value > 0.0) || value == 1.0 || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be > 0 and != 1, got " << value;
    throw EstimatorParameterError(msg.str());
  }
}

double power_sum(const FitnessDistribution& d, double exponent) {
  double sum = 0.0;
  for (const auto& [value, p] : d.support) sum += std::pow(p, exponent);
  return sum;
}

double parse_number(std::string_view text, std::string_view what) {
  double out = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw EstimatorParameterError("cannot parse " + std::string(what) +
                                  " from '" + std::string(text) + "'");
  }
  return out;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(k_const > 0.0)) throw EstimatorParameterError("K must be > 0");
  if (!(t_min > 0.0)) throw EstimatorParameterError("t_min must be > 0");
  if (bin_width && !(*bin_width > 0.0)) {
    throw EstimatorParameterError("bin width must be > 0");
  }
  if (kind == EstimatorKind::Renyi) require_order(alpha, "renyi alpha");
  if (kind == EstimatorKind::Tsallis) require_order(q, "tsallis q");
}

FitnessDistribution empirical_distribution(std::span<const double> fitness_values,
                                           std::optional<double> bin_width) {
  if (fitness_values.empty()) {
    throw EmptyPopulation("empirical_distribution: empty fitness population");
  }
  if (bin_width && !(*bin_width > 0.0)) {
    throw EstimatorParameterError("bin width must be > 0");
  }
  std::map<double, std::size_t> counts;
  for (double v : fitness_values) {
    if (bin_width) {
      const double bin = std::floor(v / *bin_width);
      ++counts[(bin + 0.5) * *bin_width];
    } else {
      ++counts[v];
    }
  }
  FitnessDistribution d;
  d.n = fitness_values.size();
  d.bin_width = bin_width;
  d.support.reserve(counts.size());
  const double n = static_cast<double>(d.n);
  for (const auto& [value, count] : counts) {
    d.support.emplace_back(value, static_cast<double>(count) / n);
  }
  return d;
}

double log_in(LogBase base, double x) {
  switch (base) {
    case LogBase::Ten:
      return std::log10(x);
    case LogBase::Two:
      return std::log2(x);
    case LogBase::E:
      break;
  }
  return std::log(x);
}

double shannon(const FitnessDistribution& d, double k_const, LogBase base) {
  double sum = 0.0;
  for (const auto& [value, p] : d.support) sum += p * log_in(base, p);
  return -k_const * sum;
}

double renyi(const FitnessDistribution& d, double k_const, double alpha,
             LogBase base) {
  require_order(alpha, "renyi alpha");
  return k_const / (1.0 - alpha) * log_in(base, power_sum(d, alpha));
}

double hartley(const FitnessDistribution& d, double k_const, LogBase base) {
  return k_const * log_in(base, static_cast<double>(d.support.size()));
}

double collision(const FitnessDistribution& d, double k_const, LogBase base) {
  return -k_const * log_in(base, power_sum(d, 2.0));
}

double min_entropy(const FitnessDistribution& d, double k_const, LogBase base) {
  double max_p = 0.0;
  for (const auto& [value, p] : d.support) max_p = std::max(max_p, p);
  return -k_const * log_in(base, max_p);
}

double tsallis(const FitnessDistribution& d, double k_const, double q) {
  require_order(q, "tsallis q");
  return k_const / (q - 1.0) * (1.0 - power_sum(d, q));
}

double estimate(const FitnessDistribution& d, const EstimatorConfig& config) {
  switch (config.kind) {
    case EstimatorKind::Shannon:
      return shannon(d, config.k_const, config.base);
    case EstimatorKind::Renyi:
      return renyi(d, config.k_const, config.alpha, config.base);
    case EstimatorKind::Hartley:
      return hartley(d, config.k_const, config.base);
    case EstimatorKind::Collision:
      return collision(d, config.k_const, config.base);
    case EstimatorKind::MinEntropy:
      return min_entropy(d, config.k_const, config.base);
    case EstimatorKind::Tsallis:
      return tsallis(d, config.k_const, config.q);
  }
  return 0.0;
}

double temperature(std::span<const double> fitness_values,
                   const EstimatorConfig& config) {
  if (fitness_values.empty()) return config.t_min;
  const auto d = empirical_distribution(fitness_values, config.bin_width);
  // -K*log(1) can come out as -0.0.
  return std::max(0.0, estimate(d, config));
}

EstimatorConfig parse_estimator(std::string_view text) {
  EstimatorConfig config;
  std::string_view name = text;
  std::string_view param;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    param = text.substr(colon + 1);
  }
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "shannon") {
    config.kind = EstimatorKind::Shannon;
  } else if (lower == "renyi") {
    config.kind = EstimatorKind::Renyi;
    if (!param.empty()) config.alpha = parse_number(param, "renyi alpha");
  } else if (lower == "hartley") {
    config.kind = EstimatorKind::Hartley;
  } else if (lower == "collision") {
    config.kind = EstimatorKind::Collision;
  } else if (lower == "min" || lower == "min_entropy" || lower == "minentropy") {
    config.kind = EstimatorKind::MinEntropy;
  } else if (lower == "tsallis") {
    config.kind = EstimatorKind::Tsallis;
    if (!param.empty()) config.q = parse_number(param, "tsallis q");
  } else {
    throw EstimatorParameterError("unknown estimator '" + std::string(text) + "'");
  }
  if ((config.kind != EstimatorKind::Renyi && config.kind != EstimatorKind::Tsallis) &&
      !param.empty()) {
    throw EstimatorParameterError("estimator '" + lower + "' takes no parameter");
  }
  config.validate();
  return config;
}

std::string estimator_label(const EstimatorConfig& config) {
  std::ostringstream out;
  switch (config.kind) {
    case EstimatorKind::Shannon:
      out << "shannon";
      break;
    case EstimatorKind::Renyi:
      out << "renyi:" << config.alpha;
      break;
    case EstimatorKind::Hartley:
      out << "hartley";
      break;
    case EstimatorKind::Collision:
      out << "collision";
      break;
    case EstimatorKind::MinEntropy:
      out << "min";
      break;
    case EstimatorKind::Tsallis:
      out << "tsallis:" << config.q;
      break;
  }
  return out.str();
}

LogBase parse_log_base(std::string_view text) {
  if (text == "10") return LogBase::Ten;
  if (text == "2") return LogBase::Two;
  if (text == "e") return LogBase::E;
  throw EstimatorParameterError("log base must be one of 10, e, 2");
}

}  // namespace fairsched
