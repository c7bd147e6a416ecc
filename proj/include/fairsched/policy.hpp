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
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairsched/cooling.hpp"
#include "fairsched/entropy.hpp"
#include "fairsched/instance.hpp"
#include "fairsched/resource.hpp"

namespace fairsched {

enum class PolicyKind { Fifo, Fair, Drf, Saf };

struct SafConfig {
  EstimatorConfig estimator;
  CoolingConfig cooling;
  // Freezes T at this value and disables cooling and reheating.
  std::optional<double> pinned_temperature;
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Drf;
  std::optional<SafConfig> saf;  // present iff kind == Saf

  static PolicyConfig fifo() { return {PolicyKind::Fifo, std::nullopt}; }
  static PolicyConfig fair() { return {PolicyKind::Fair, std::nullopt}; }
  static PolicyConfig drf() { return {PolicyKind::Drf, std::nullopt}; }
  static PolicyConfig saf_with(SafConfig config = {}) {
    return {PolicyKind::Saf, std::move(config)};
  }

  void validate() const;
};

std::string policy_name(PolicyKind kind);
PolicyKind parse_policy(std::string_view text);

// Which row of the selection tables decided a comparison.
enum class Branch {
  OnlyCandidate,
  Fifo,
  Fair,
  BothNeedy,
  FirstNeedy,
  SecondNeedy,
  BothNotNeedy,             // DRF: lower dominant fairshare ratio
  BothNotNeedySafImproving, // SAF: challenger is fairer, no draw
  BothNotNeedySaf,          // SAF: probabilistic acceptance
};

std::string branch_label(Branch branch);

/// Score of placing a task on a node: sum_q R[q] * C[q] * W[q], with C
/// the node's residual capacity.
double fitness(const ResourceVector& task_demand,
               const ResourceVector& node_residual,
               const ResourceWeights& weights);

struct PairOutcome {
  bool challenger_wins = false;
  Branch branch = Branch::BothNeedy;
  std::optional<double> delta;
  std::optional<double> temperature;
  std::optional<double> probability;
  std::optional<double> draw;
};

/// Pairwise DRF rule. a is the incumbent, b the challenger; exact ties go to
/// the challenger.
PairOutcome drf_compare(const InstanceState& a, const InstanceState& b,
                        const ResourceVector& cluster,
                        const ResourceWeights& weights);

struct SafContext {
  AnnealingState& state;
  const SafConfig& config;
  // Uniform draw in [0, 1); called only on the probabilistic branch.
  std::function<double()> draw;
  // Fitness of every running task; used for the initial and reheated T.
  std::function<std::vector<double>()> fitness_population;
};

/// Pairwise SAF rule. Needy rows match DRF. When neither is needy,
/// delta = fairshare(b) - fairshare(a); b wins outright if delta < 0, else
/// with probability exp(-delta / T). Cooling (or reheat when cold) follows
/// each probabilistic comparison.
PairOutcome saf_compare(const InstanceState& a, const InstanceState& b,
                        const ResourceVector& cluster,
                        const ResourceWeights& weights, SafContext& ctx);

struct CandidateView {
  std::string id;
  bool needy = false;
  double minshare_ratio = 0.0;
  double dominant_fairshare_ratio = 0.0;
};

struct ComparisonRecord {
  std::size_t incumbent = 0;  // positions in DecisionRecord::candidates
  std::size_t challenger = 0;
  PairOutcome outcome;
};

struct DecisionRecord {
  double time = 0.0;
  std::size_t node = 0;
  std::vector<CandidateView> candidates;  // empty unless detailed audit
  std::vector<ComparisonRecord> comparisons;  // empty unless detailed audit
  Branch branch = Branch::OnlyCandidate;
  std::optional<double> delta;
  std::optional<double> temperature;
  std::optional<double> probability;
  std::optional<double> draw;
  std::string chosen;
  double chosen_fairshare = 0.0;
};

struct SelectContext {
  double time = 0.0;
  std::size_t node = 0;
  const ResourceVector* cluster = nullptr;
  const ResourceWeights* weights = nullptr;
  std::function<std::vector<double>()> fitness_population;
  bool detailed_audit = true;
};

struct Selection {
  std::size_t chosen = 0;  // position in the candidate span
  DecisionRecord record;
};

/// Stateful scheduling policy for one simulation run. Owns the annealing
/// state and the acceptance-draw generator.
class Policy {
 public:
  Policy(PolicyConfig config, std::uint64_t decision_seed);

  /// Left fold over candidates in the given order (FIFO and Fair take the
  /// minimum of their key instead). Returns nullopt for an empty span.
  std::optional<Selection> select(std::span<const InstanceState* const> candidates,
                                  const SelectContext& ctx);

  const PolicyConfig& config() const noexcept { return config_; }
  const AnnealingState& annealing() const noexcept { return annealing_; }
  std::uint64_t draws_consumed() const noexcept { return draws_; }

 private:
  PolicyConfig config_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  AnnealingState annealing_;
  std::uint64_t draws_ = 0;
};

}  // namespace fairsched
