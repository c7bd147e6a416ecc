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

#include "fairsched/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsched {
namespace {

double max_share(const InstanceState& inst, const ResourceVector& cluster) {
  const auto s = shares(inst.usage, cluster);
  return *std::max_element(s.begin(), s.end());
}

// Rows shared by DRF and SAF. Returns nullopt when neither instance is needy.
std::optional<PairOutcome> needy_rows(const InstanceState& a, const InstanceState& b,
                                      const ResourceVector& cluster,
                                      const ResourceWeights& weights) {
  const bool a_needy = is_needy(a, cluster, weights);
  const bool b_needy = is_needy(b, cluster, weights);
  PairOutcome out;
  if (a_needy && b_needy) {
    out.branch = Branch::BothNeedy;
    out.challenger_wins =
        minshare_ratio(b, cluster, weights) <= minshare_ratio(a, cluster, weights);
    return out;
  }
  if (a_needy) {
    out.branch = Branch::FirstNeedy;
    out.challenger_wins = false;
    return out;
  }
  if (b_needy) {
    out.branch = Branch::SecondNeedy;
    out.challenger_wins = true;
    return out;
  }
  return std::nullopt;
}

}  // namespace

void PolicyConfig::validate() const {
  if ((kind == PolicyKind::Saf) != saf.has_value()) {
    throw std::invalid_argument("SAF settings must be present exactly for the SAF policy");
  }
  if (saf) {
    saf->estimator.validate();
    saf->cooling.validate();
    if (saf->pinned_temperature && !(*saf->pinned_temperature > 0.0)) {
      throw std::invalid_argument("pinned temperature must be > 0");
    }
  }
}

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Fifo:
      return "fifo";
    case PolicyKind::Fair:
      return "fair";
    case PolicyKind::Drf:
      return "drf";
    case PolicyKind::Saf:
      return "saf";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fifo") return PolicyKind::Fifo;
  if (lower == "fair") return PolicyKind::Fair;
  if (lower == "drf") return PolicyKind::Drf;
  if (lower == "saf") return PolicyKind::Saf;
  throw std::invalid_argument("unknown policy '" + std::string(text) + "'");
}

std::string branch_label(Branch branch) {
  switch (branch) {
    case Branch::OnlyCandidate:
      return "only-candidate";
    case Branch::Fifo:
      return "fifo";
    case Branch::Fair:
      return "fair";
    case Branch::BothNeedy:
      return "both-needy";
    case Branch::FirstNeedy:
      return "first-needy";
    case Branch::SecondNeedy:
      return "second-needy";
    case Branch::BothNotNeedy:
      return "both-not-needy";
    case Branch::BothNotNeedySafImproving:
      return "both-not-needy-saf-improving";
    case Branch::BothNotNeedySaf:
      return "both-not-needy-saf";
  }
  return "unknown";
}

double fitness(const ResourceVector& task_demand, const ResourceVector& node_residual,
               const ResourceWeights& weights) {
  if (task_demand.size() != node_residual.size() || task_demand.size() != weights.size()) {
    throw DimensionError("fitness: length mismatch");
  }
  double score = 0.0;
  for (std::size_t q = 0; q < task_demand.size(); ++q) {
    score += task_demand[q] * node_residual[q] * weights[q];
  }
  return score;
}

PairOutcome drf_compare(const InstanceState& a, const InstanceState& b,
                        const ResourceVector& cluster, const ResourceWeights& weights) {
  if (auto row = needy_rows(a, b, cluster, weights)) return *row;
  PairOutcome out;
  out.branch = Branch::BothNotNeedy;
  out.challenger_wins = dominant_fairshare_ratio(b, cluster, weights) <=
                        dominant_fairshare_ratio(a, cluster, weights);
  return out;
}

PairOutcome saf_compare(const InstanceState& a, const InstanceState& b,
                        const ResourceVector& cluster, const ResourceWeights& weights,
                        SafContext& ctx) {
  if (auto row = needy_rows(a, b, cluster, weights)) return *row;

  const auto& cfg = ctx.config;
  const bool pinned = cfg.pinned_temperature.has_value();
  if (!pinned && !ctx.state.initialized) {
    ctx.state = reheat(ctx.state, ctx.fitness_population(), cfg.estimator, cfg.cooling);
  }
  const double t = pinned ? *cfg.pinned_temperature : ctx.state.t;

  PairOutcome out;
  const double delta = dominant_fairshare_ratio(b, cluster, weights) -
                       dominant_fairshare_ratio(a, cluster, weights);
  out.delta = delta;
  out.temperature = t;
  if (delta < 0.0) {
    out.branch = Branch::BothNotNeedySafImproving;
    out.challenger_wins = true;
    return out;
  }

  out.branch = Branch::BothNotNeedySaf;
  const double draw = ctx.draw();
  const double p = std::exp(-delta / t);
  out.draw = draw;
  out.probability = p;
  out.challenger_wins = p > draw;

  if (!pinned) {
    AnnealingState next = step(ctx.state, cfg.cooling);
    if (next.needs_reheat) {
      next = reheat(next, ctx.fitness_population(), cfg.estimator, cfg.cooling);
    }
    ctx.state = next;
  }
  return out;
}

Policy::Policy(PolicyConfig config, std::uint64_t decision_seed)
    : config_(std::move(config)), rng_(decision_seed) {
  config_.validate();
}

std::optional<Selection> Policy::select(std::span<const InstanceState* const> candidates,
                                        const SelectContext& ctx) {
  if (candidates.empty()) return std::nullopt;
  const ResourceVector& cluster = *ctx.cluster;
  const ResourceWeights& weights = *ctx.weights;

  Selection sel;
  DecisionRecord& rec = sel.record;
  rec.time = ctx.time;
  rec.node = ctx.node;
  if (ctx.detailed_audit) {
    rec.candidates.reserve(candidates.size());
    for (const InstanceState* c : candidates) {
      rec.candidates.push_back({c->id, is_needy(*c, cluster, weights),
                                minshare_ratio(*c, cluster, weights),
                                dominant_fairshare_ratio(*c, cluster, weights)});
    }
  }

  std::size_t winner = 0;
  if (candidates.size() == 1) {
    rec.branch = Branch::OnlyCandidate;
  } else if (config_.kind == PolicyKind::Fifo) {
    rec.branch = Branch::Fifo;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i]->submit_time < candidates[winner]->submit_time) winner = i;
    }
  } else if (config_.kind == PolicyKind::Fair) {
    rec.branch = Branch::Fair;
    double best = max_share(*candidates[0], cluster);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const double s = max_share(*candidates[i], cluster);
      if (s < best) {
        best = s;
        winner = i;
      }
    }
  } else {
    std::optional<SafContext> saf_ctx;
    if (config_.kind == PolicyKind::Saf) {
      saf_ctx.emplace(SafContext{annealing_, *config_.saf,
                                 [this] {
                                   ++draws_;
                                   return unit_(rng_);
                                 },
                                 ctx.fitness_population});
    }
    PairOutcome last;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const InstanceState& a = *candidates[winner];
      const InstanceState& b = *candidates[i];
      last = saf_ctx ? saf_compare(a, b, cluster, weights, *saf_ctx)
                     : drf_compare(a, b, cluster, weights);
      if (ctx.detailed_audit) rec.comparisons.push_back({winner, i, last});
      if (last.challenger_wins) winner = i;
    }
    rec.branch = last.branch;
    rec.delta = last.delta;
    rec.temperature = last.temperature;
    rec.probability = last.probability;
    rec.draw = last.draw;
  }

  sel.chosen = winner;
  rec.chosen = candidates[winner]->id;
  rec.chosen_fairshare = dominant_fairshare_ratio(*candidates[winner], cluster, weights);
  return sel;
}

}  // namespace fairsched
