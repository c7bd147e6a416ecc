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

#include "fairsched/resource.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace fairsched {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": length mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

void require_non_negative(const std::vector<double>& values) {
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (!(values[q] >= 0.0) || !std::isfinite(values[q])) {
      std::ostringstream msg;
      msg << "resource quantity " << q << " must be finite and >= 0, got "
          << values[q];
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

ResourceVector::ResourceVector(std::initializer_list<double> values)
    : ResourceVector(std::vector<double>(values)) {}

ResourceVector::ResourceVector(std::vector<double> values)
    : values_(std::move(values)) {
  require_non_negative(values_);
}

ResourceVector ResourceVector::zeros(std::size_t k) {
  return ResourceVector(std::vector<double>(k, 0.0));
}

std::string ResourceVector::to_string() const {
  std::ostringstream out;
  out << '<';
  for (std::size_t q = 0; q < values_.size(); ++q) {
    if (q > 0) out << ',';
    out << values_[q];
  }
  out << '>';
  return out.str();
}

ResourceWeights::ResourceWeights(std::initializer_list<double> values)
    : ResourceWeights(std::vector<double>(values)) {}

ResourceWeights::ResourceWeights(std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t q = 0; q < values_.size(); ++q) {
    if (!(values_[q] > 0.0) || !std::isfinite(values_[q])) {
      throw std::invalid_argument("resource weights must be finite and > 0");
    }
  }
}

ResourceWeights ResourceWeights::uniform(std::size_t k) {
  return ResourceWeights(std::vector<double>(k, 1.0));
}

ResourceVector add(const ResourceVector& a, const ResourceVector& b) {
  require_same_length(a.size(), b.size(), "add");
  std::vector<double> out(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) out[q] = a[q] + b[q];
  return ResourceVector(std::move(out));
}

ResourceVector checked_sub(const ResourceVector& a, const ResourceVector& b) {
  require_same_length(a.size(), b.size(), "checked_sub");
  std::vector<double> out(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (b[q] > a[q]) {
      std::ostringstream msg;
      msg << "insufficient capacity on resource " << q << ": " << a.to_string()
          << " - " << b.to_string();
      throw InsufficientCapacity(msg.str());
    }
    out[q] = a[q] - b[q];
  }
  return ResourceVector(std::move(out));
}

bool fits_within(const ResourceVector& request, const ResourceVector& capacity) {
  require_same_length(request.size(), capacity.size(), "fits_within");
  for (std::size_t q = 0; q < request.size(); ++q) {
    if (request[q] > capacity[q]) return false;
  }
  return true;
}

std::vector<double> shares(const ResourceVector& usage,
                           const ResourceVector& cluster) {
  require_same_length(usage.size(), cluster.size(), "shares");
  std::vector<double> out(usage.size());
  for (std::size_t q = 0; q < usage.size(); ++q) {
    if (cluster[q] <= 0.0) {
      throw DegenerateCluster("cluster capacity of resource " +
                              std::to_string(q) + " is zero");
    }
    out[q] = usage[q] / cluster[q];
  }
  return out;
}

DominantShare dominant(std::span<const double> shares,
                       const ResourceWeights& weights) {
  if (shares.empty()) throw DimensionError("dominant: empty share vector");
  require_same_length(shares.size(), weights.size(), "dominant");
  DominantShare best{0, shares[0] / weights[0]};
  for (std::size_t q = 1; q < shares.size(); ++q) {
    const double ratio = shares[q] / weights[q];
    if (ratio > best.ratio) best = {q, ratio};
  }
  return best;
}

ResourceVector scale(const ResourceVector& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) out[q] = v[q] * factor;
  return ResourceVector(std::move(out));
}

}  // namespace fairsched
