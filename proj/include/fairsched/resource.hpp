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
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairsched {

// Raised when two resource vectors of different length meet in arithmetic.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientCapacity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cluster vector with a zero component cannot produce shares.
class DegenerateCluster : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-length vector of non-negative resource quantities, one entry per
/// resource type (index 0 is CPU cores, index 1 memory, by convention).
class ResourceVector {
 public:
  ResourceVector() = default;
  ResourceVector(std::initializer_list<double> values);
  explicit ResourceVector(std::vector<double> values);

  static ResourceVector zeros(std::size_t k);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t q) const { return values_[q]; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const ResourceVector&) const = default;

  std::string to_string() const;

 private:
  std::vector<double> values_;
};

/// Per-resource weights W[q]; every weight is strictly positive.
class ResourceWeights {
 public:
  ResourceWeights() = default;
  ResourceWeights(std::initializer_list<double> values);
  explicit ResourceWeights(std::vector<double> values);

  static ResourceWeights uniform(std::size_t k);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t q) const { return values_[q]; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const ResourceWeights&) const = default;

 private:
  std::vector<double> values_;
};

struct DominantShare {
  std::size_t index = 0;
  double ratio = 0.0;
};

ResourceVector add(const ResourceVector& a, const ResourceVector& b);

// Throws InsufficientCapacity when any component of b exceeds a.
ResourceVector checked_sub(const ResourceVector& a, const ResourceVector& b);

bool fits_within(const ResourceVector& request, const ResourceVector& capacity);

std::vector<double> shares(const ResourceVector& usage,
                           const ResourceVector& cluster);

/// Index maximizing shares[q] / weights[q] and that maximum. Ties go to the
/// lowest index.
DominantShare dominant(std::span<const double> shares,
                       const ResourceWeights& weights);

ResourceVector scale(const ResourceVector& v, double factor);

}  // namespace fairsched
