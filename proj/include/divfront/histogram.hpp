// Copyright 2026 The divfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "divfront/errors.hpp"

namespace divfront {

/// A point on the probability simplex. Construction validates and normalizes.
class Histogram {
 public:
  explicit Histogram(std::vector<double> weights) : probs_(std::move(weights)) {
    if (probs_.empty()) throw DomainError("histogram must have at least one bin");
    double total = 0.0;
    for (double w : probs_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw DomainError("histogram weights must be finite and nonnegative");
      }
      total += w;
    }
    if (!(total > 0.0)) throw DomainError("histogram has zero total mass");
    for (double& w : probs_) w /= total;
  }

  Histogram(std::initializer_list<double> weights)
      : Histogram(std::vector<double>(weights)) {}

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& vec() const noexcept { return probs_; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<double> probs_;
};

inline void require_same_size(const Histogram& p, const Histogram& q) {
  if (p.size() != q.size()) {
    throw DimensionError("histogram sizes differ: " + std::to_string(p.size()) +
                         " vs " + std::to_string(q.size()));
  }
}

inline double total_variation(const Histogram& p, const Histogram& q) {
  require_same_size(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

/// Histograms closer than this in total variation are treated as equal.
inline constexpr double kEqualityTolerance = 1e-12;

}  // namespace divfront
