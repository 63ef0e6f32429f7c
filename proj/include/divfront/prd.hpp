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
#include <vector>

#include "divfront/errors.hpp"
#include "divfront/frontier.hpp"
#include "divfront/histogram.hpp"
#include "divfront/pareto.hpp"

namespace divfront {

struct PRDPoint {
  double recall;
  double precision;

  friend bool operator==(const PRDPoint&, const PRDPoint&) = default;
};

/// Maximal precision-recall pairs, ascending in recall.
struct PRDCurve {
  std::vector<PRDPoint> points;
};

namespace detail {

/// Keeps the maximal pairs among those with both coordinates positive. Falls
/// back to {(0,0)} when nothing is realizable.
inline PRDCurve maximal_prd(const std::vector<PRDPoint>& candidates) {
  std::vector<Point2> neg;
  for (const auto& c : candidates) {
    if (c.recall > 0.0 && c.precision > 0.0) neg.push_back({-c.recall, -c.precision});
  }
  PRDCurve out;
  for (const auto& p : pareto_filter(neg)) out.points.push_back({-p.x, -p.y});
  if (out.points.empty()) out.points.push_back({0.0, 0.0});
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const PRDPoint& a, const PRDPoint& b) { return a.recall < b.recall; });
  return out;
}

/// Largest w such that x = w r + (1 - w) x' for some x' in the simplex, read
/// off the ray from r through x: x' is where the ray leaves the simplex and
/// w = |x - x'| / |r - x'|.
inline double boundary_mixture_weight(const Histogram& r, const Histogram& x) {
  if (total_variation(r, x) <= kEqualityTolerance) return 1.0;
  double t_exit = kInf;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (x[i] < r[i]) t_exit = std::min(t_exit, r[i] / (r[i] - x[i]));
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double exit_i = r[i] + t_exit * (x[i] - r[i]);
    num += (x[i] - exit_i) * (x[i] - exit_i);
    den += (r[i] - exit_i) * (r[i] - exit_i);
  }
  return std::sqrt(num / den);
}

}  // namespace detail

/// Maps an order-infinity exclusive frontier to precision-recall pairs:
/// recall = exp(-D(R,P)), precision = exp(-D(R,Q)).
inline PRDCurve prd_from_infinity_frontier(const FrontierCurve& curve) {
  if (!curve.alpha.is_infinity() || curve.side != FrontierSide::Exclusive) {
    throw DomainError("PRD mapping needs an order-infinity exclusive frontier");
  }
  std::vector<PRDPoint> pts;
  pts.reserve(curve.points.size());
  for (const auto& fp : curve.points) {
    pts.push_back({std::exp(-fp.div_p), std::exp(-fp.div_q)});
  }
  return detail::maximal_prd(pts);
}

/// Precision-recall pairs built directly from mixture decompositions
/// P = recall R + (1-recall) P', Q = precision R + (1-precision) Q'. For each
/// ratio lambda on the order-infinity grid the shared component is taken as
/// R ~ min(lambda p, q), and the weights come from the boundary points of the
/// rays R -> P and R -> Q. Independent of the divergence code path.
inline PRDCurve prd_reference(const Histogram& p, const Histogram& q,
                              int grid_size = kDefaultGridSize) {
  require_same_size(p, q);
  std::vector<PRDPoint> pts;
  for (double lambda : infinity_lambda_grid(p, q, grid_size)) {
    std::vector<double> w(p.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      w[i] = std::min(lambda * p[i], q[i]);
      mass += w[i];
    }
    if (!(mass > 0.0)) continue;
    const Histogram r(std::move(w));
    pts.push_back({detail::boundary_mixture_weight(r, p), detail::boundary_mixture_weight(r, q)});
  }
  return detail::maximal_prd(pts);
}

}  // namespace divfront
