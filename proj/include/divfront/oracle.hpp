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
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "divfront/alpha.hpp"
#include "divfront/divergence.hpp"
#include "divfront/errors.hpp"
#include "divfront/frontier.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/histogram.hpp"
#include "divfront/numeric.hpp"
#include "divfront/pareto.hpp"

// Brute-force checks for the closed forms: exhaustive simplex grids, Pareto
// scans and numerical integration of the Renyi integrand.

namespace divfront::oracle {

/// Every histogram on n bins whose entries are multiples of 1/m.
struct SimplexGrid {
  int n = 0;
  int m = 0;
  std::vector<Histogram> points;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline constexpr std::uint64_t kMaxGridPoints = 5'000'000;

/// Lexicographically ascending enumeration of the compositions of m into n
/// parts, scaled by 1/m.
inline SimplexGrid enumerate_simplex(int n, int m) {
  if (n < 2) throw ParameterError("simplex grid needs n >= 2");
  if (m < 1) throw ParameterError("simplex grid needs m >= 1");
  const std::uint64_t count = binomial(static_cast<std::uint64_t>(m + n - 1),
                                       static_cast<std::uint64_t>(n - 1));
  if (count > kMaxGridPoints) {
    throw ParameterError("simplex grid would have " + std::to_string(count) + " points");
  }
  SimplexGrid grid{n, m, {}};
  grid.points.reserve(count);
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  c.back() = m;
  const double inv = 1.0 / m;
  for (;;) {
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] * inv;
    grid.points.emplace_back(std::move(w));
    // Next composition in lexicographic order: bump the rightmost position
    // (before the last) that still has mass to its right.
    int i = n - 2;
    int tail = c.back();
    while (i >= 0 && tail == 0) {
      tail += c[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    --tail;
    for (int j = i + 1; j < n; ++j) c[static_cast<std::size_t>(j)] = 0;
    c.back() = tail;
  }
  return grid;
}

inline constexpr double kGridSmoothing = 1e-12;

inline Histogram smoothed(const Histogram& r, double eps = kGridSmoothing) {
  std::vector<double> w(r.vec());
  for (double& v : w) v += eps;
  return Histogram(std::move(w));
}

/// Side-appropriate divergence pair at every grid point (each smoothed by
/// 1e-12 so boundary points stay finite), then Pareto-filtered.
inline std::vector<Point2> brute_force_frontier(const Histogram& p, const Histogram& q,
                                                Alpha alpha, FrontierSide side,
                                                const SimplexGrid& grid) {
  require_same_size(p, q);
  if (static_cast<std::size_t>(grid.n) != p.size()) {
    throw DimensionError("simplex grid dimension does not match the histograms");
  }
  std::vector<Point2> pts(grid.points.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    const Histogram r = smoothed(grid.points[k]);
    pts[k] = side == FrontierSide::Exclusive
                 ? Point2{renyi_discrete(r, p, alpha), renyi_discrete(r, q, alpha)}
                 : Point2{renyi_discrete(p, r, alpha), renyi_discrete(q, r, alpha)};
  });
  return pareto_filter(pts);
}

/// Largest amount by which some oracle point strictly beats a curve point in
/// both coordinates at once (0 when nothing dominates).
inline double max_dominance_violation(const std::vector<Point2>& oracle,
                                      const std::vector<Point2>& curve) {
  double worst = 0.0;
  for (const auto& c : curve) {
    for (const auto& o : oracle) {
      const double margin = std::min(c.x - o.x, c.y - o.y);
      if (std::isfinite(margin)) worst = std::max(worst, margin);
    }
  }
  return worst;
}

namespace detail {

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

inline std::vector<Point2> finite_sorted(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const auto& p : pts) {
    if (std::isfinite(p.x) && std::isfinite(p.y)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Point2& a, const Point2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return out;
}

inline double directed_distance(const std::vector<Point2>& from,
                                const std::vector<Point2>& polyline) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = kInf;
    if (polyline.size() == 1) best = std::hypot(p.x - polyline[0].x, p.y - polyline[0].y);
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
      best = std::min(best, point_segment_distance(p, polyline[i], polyline[i + 1]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

/// Symmetric Hausdorff distance between two frontiers, each read as the
/// polyline through its finite points sorted by the first coordinate.
inline double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  const auto fa = detail::finite_sorted(a);
  const auto fb = detail::finite_sorted(b);
  if (fa.empty() || fb.empty()) return fa.empty() && fb.empty() ? 0.0 : kInf;
  return std::max(detail::directed_distance(fa, fb), detail::directed_distance(fb, fa));
}

struct Verdict {
  double max_dominance_violation = 0.0;
  double hausdorff_distance = 0.0;
  double dominance_tolerance = 0.0;
  double hausdorff_tolerance = 0.0;
  bool pass = false;
};

inline std::vector<Point2> curve_points(const FrontierCurve& curve) {
  std::vector<Point2> out;
  out.reserve(curve.points.size());
  for (const auto& p : curve.points) out.push_back({p.div_p, p.div_q});
  return out;
}

/// Compares the closed-form frontier with the grid oracle at denominator m.
/// Passes when no grid point dominates a curve point by more than 2/m and the
/// Hausdorff distance is at most 5/m.
inline Verdict oracle_check(const Histogram& p, const Histogram& q, Alpha alpha,
                            FrontierSide side, int m, int grid_size = kDefaultGridSize) {
  const SimplexGrid grid = enumerate_simplex(static_cast<int>(p.size()), m);
  const auto oracle = brute_force_frontier(p, q, alpha, side, grid);
  const auto curve = curve_points(frontier(p, q, alpha, side, grid_size));
  Verdict v;
  v.max_dominance_violation = max_dominance_violation(oracle, curve);
  v.hausdorff_distance = hausdorff_distance(oracle, curve);
  v.dominance_tolerance = 2.0 / m;
  v.hausdorff_tolerance = 5.0 / m;
  v.pass = v.max_dominance_violation <= v.dominance_tolerance &&
           v.hausdorff_distance <= v.hausdorff_tolerance;
  return v;
}

struct QuadratureResult {
  double value;
  double error;  // absolute error estimate (one standard error for Monte Carlo)
};

inline constexpr std::size_t kMonteCarloSamples = 1'000'000;

namespace detail {

inline double log_density(const GaussianParams& g, const Eigen::VectorXd& x) {
  const Eigen::VectorXd diff = x - g.mean();
  const Eigen::VectorXd z = g.llt().matrixL().solve(diff);
  return -0.5 * z.squaredNorm() - 0.5 * g.log_det() -
         0.5 * static_cast<double>(g.dim()) * std::log(2.0 * std::numbers::pi);
}

inline double log_density_1d(const GaussianParams& g, double x) {
  const double var = g.cov()(0, 0);
  const double z = x - g.mean()(0);
  return -0.5 * z * z / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
}

/// Gauss-Kronrod over [lo, hi], split at the `cuts` that fall inside.
template <class F>
QuadratureResult integrate_interval(F f, double lo, double hi, std::vector<double> cuts) {
  using boost::math::quadrature::gauss_kronrod;
  std::erase_if(cuts, [&](double c) { return !(c > lo && c < hi); });
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    if (cuts[s] == cuts[s + 1]) continue;
    double err = 0.0;
    total += gauss_kronrod<double, 61>::integrate(f, cuts[s], cuts[s + 1], 12, 1e-12, &err);
    err_total += err;
  }
  return {total, err_total};
}

/// Half-width, in units of the integrand's spread, beyond which the shifted
/// integrand underflows (exp(-800)).
inline constexpr double kTailWidths = 40.0;

}  // namespace detail

/// Numerical Renyi divergence between two Gaussian densities. One dimension
/// uses adaptive Gauss-Kronrod around the mass of the integrand; higher dimensions use
/// `kMonteCarloSamples` draws (from Q for finite orders, from P for KL).
/// The infinite order is a supremum, not an integral, and is rejected.
inline QuadratureResult divergence_quadrature(const GaussianParams& p, const GaussianParams& q,
                                              Alpha alpha, std::uint64_t seed = 0) {
  require_same_dim(p, q);
  if (alpha.is_infinity()) throw Unsupported("quadrature cannot evaluate the order-infinity limit");
  if (alpha.is_zero()) return {0.0, 0.0};
  const double a = alpha.value();

  if (p.dim() == 1) {
    const double mp = p.mean()(0);
    const double mq = q.mean()(0);
    if (alpha.is_one()) {
      auto f = [&](double x) {
        const double lp = detail::log_density_1d(p, x);
        const double v = std::exp(lp) * (lp - detail::log_density_1d(q, x));
        return std::isfinite(v) ? v : 0.0;
      };
      const double sp = std::sqrt(p.cov()(0, 0));
      return detail::integrate_interval(f, mp - detail::kTailWidths * sp,
                                        mp + detail::kTailWidths * sp, {mp, mq});
    }
    // The log-integrand is a quadratic; three samples locate its peak, which
    // is subtracted before exponentiating so large orders do not overflow.
    auto g = [&](double x) {
      return a * detail::log_density_1d(p, x) + (1.0 - a) * detail::log_density_1d(q, x);
    };
    const double g0 = g(0.0);
    const double curv = 0.5 * (g(1.0) + g(-1.0)) - g0;
    const double slope = 0.5 * (g(1.0) - g(-1.0));
    if (!(curv < 0.0)) return {kInf, 0.0};
    const double peak = -slope / (2.0 * curv);
    const double width = std::sqrt(-0.5 / curv);
    const double shift = g(peak);
    auto f = [&](double x) { return std::exp(g(x) - shift); };
    const QuadratureResult integral = detail::integrate_interval(
        f, peak - detail::kTailWidths * width, peak + detail::kTailWidths * width,
        {mp, mq, peak - 8.0 * width, peak, peak + 8.0 * width});
    return {(std::log(integral.value) + shift) / (a - 1.0),
            integral.error / (integral.value * std::abs(a - 1.0))};
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const GaussianParams& source = alpha.is_one() ? p : q;
  const Eigen::MatrixXd chol = source.llt().matrixL();
  const Eigen::Index d = p.dim();
  double mean = 0.0;
  double m2 = 0.0;
  Eigen::VectorXd z(d);
  for (std::size_t s = 0; s < kMonteCarloSamples; ++s) {
    for (Eigen::Index j = 0; j < d; ++j) z(j) = normal(rng);
    const Eigen::VectorXd x = source.mean() + chol * z;
    const double log_ratio = detail::log_density(p, x) - detail::log_density(q, x);
    const double v = alpha.is_one() ? log_ratio : std::exp(a * log_ratio);
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(kMonteCarloSamples);
  const double se = std::sqrt(m2 / (n - 1.0) / n);
  if (alpha.is_one()) return {mean, se};
  return {std::log(mean) / (a - 1.0), se / (mean * std::abs(a - 1.0))};
}

}  // namespace divfront::oracle
