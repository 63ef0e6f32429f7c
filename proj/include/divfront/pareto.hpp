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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "divfront/errors.hpp"

namespace divfront {

struct Point2 {
  double x;
  double y;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Indices of the non-dominated points: no j has x_j <= x_i and y_j <= y_i
/// with one of them strict. Returned in ascending (x, y) order with exact
/// duplicates collapsed onto their first occurrence. +inf coordinates are
/// allowed; NaN is rejected.
inline std::vector<std::size_t> pareto_minimal_indices(std::span<const Point2> pts) {
  for (const auto& p : pts) {
    if (std::isnan(p.x) || std::isnan(p.y)) throw DomainError("pareto filter got a NaN coordinate");
  }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });

  // Every earlier point in this order has x no larger, so a point survives
  // only if its y beats all of them.
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    if (kept.empty() || pts[i].y < pts[kept.back()].y) kept.push_back(i);
  }
  return kept;
}

/// Non-dominated subset of `points` (minimisation in both
/// coordinates), sorted by the first coordinate, duplicates removed.
inline std::vector<Point2> pareto_filter(std::span<const Point2> points) {
  std::vector<Point2> out;
  for (std::size_t i : pareto_minimal_indices(points)) out.push_back(points[i]);
  return out;
}

inline std::vector<Point2> pareto_filter(const std::vector<Point2>& points) {
  return pareto_filter(std::span<const Point2>(points));
}

}  // namespace divfront
