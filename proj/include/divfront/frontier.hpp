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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divfront/alpha.hpp"
#include "divfront/divergence.hpp"
#include "divfront/errors.hpp"
#include "divfront/histogram.hpp"
#include "divfront/numeric.hpp"
#include "divfront/pareto.hpp"

namespace divfront {

/// Exclusive frontiers put the auxiliary distribution R in the first argument
/// of both divergences, inclusive ones in the second.
enum class FrontierSide { Exclusive, Inclusive };

inline std::string_view to_string(FrontierSide side) {
  return side == FrontierSide::Exclusive ? "exclusive" : "inclusive";
}

inline FrontierSide parse_side(std::string_view text) {
  if (text == "exclusive") return FrontierSide::Exclusive;
  if (text == "inclusive") return FrontierSide::Inclusive;
  throw DomainError("side must be 'exclusive' or 'inclusive', got '" + std::string(text) + "'");
}

/// One point of a frontier. `div_p` measures R against P (loss of recall),
/// `div_q` measures R against Q (loss of precision).
struct FrontierPoint {
  double lambda;
  double div_p;
  double div_q;
};

struct FrontierCurve {
  std::vector<FrontierPoint> points;
  FrontierSide side = FrontierSide::Exclusive;
  Alpha alpha = Alpha::one();
};

inline constexpr int kDefaultGridSize = 201;

namespace detail {

/// Exponentiates log-weights after a max shift and normalizes. Empty when
/// every weight is zero.
inline std::optional<Histogram> from_log_weights(std::vector<double> logw) {
  double m = -kInf;
  for (double v : logw) m = std::max(m, v);
  if (!std::isfinite(m)) return std::nullopt;
  for (double& v : logw) v = std::exp(v - m);
  return Histogram(std::move(logw));
}

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

inline void require_unit_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("curve parameter must lie in [0,1], got " + std::to_string(lambda));
  }
}

// [gamma]_i ~ (lambda q_i^(1-a) + (1-lambda) p_i^(1-a))^(1/(1-a)). For a > 1 a
// zero in either input forces the entry to zero on the open interval.
inline std::optional<Histogram> exclusive_barycenter(const Histogram& p, const Histogram& q,
                                                     double a, double lambda) {
  if (lambda == 0.0) return p;
  if (lambda == 1.0) return q;
  const double e = 1.0 - a;
  const double ll = std::log(lambda);
  const double lm = std::log1p(-lambda);
  std::vector<double> logw(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (e < 0.0 && (p[i] == 0.0 || q[i] == 0.0)) {
      logw[i] = -kInf;
      continue;
    }
    const double lq = q[i] > 0.0 ? ll + e * std::log(q[i]) : -kInf;
    const double lp = p[i] > 0.0 ? lm + e * std::log(p[i]) : -kInf;
    logw[i] = log_sum_exp(lq, lp) / e;
  }
  return from_log_weights(std::move(logw));
}

inline Histogram inclusive_barycenter(const Histogram& p, const Histogram& q, double a,
                                      double lambda) {
  if (lambda == 0.0) return p;
  if (lambda == 1.0) return q;
  const double ll = std::log(lambda);
  const double lm = std::log1p(-lambda);
  std::vector<double> logw(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    logw[i] = log_sum_exp(ll + a * safe_log(q[i]), lm + a * safe_log(p[i])) / a;
  }
  return *from_log_weights(std::move(logw));
}

inline std::optional<Histogram> geometric_mixture(const Histogram& p, const Histogram& q,
                                                  double lambda) {
  if (lambda == 0.0) return p;
  if (lambda == 1.0) return q;
  std::vector<double> logw(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    logw[i] = (p[i] == 0.0 || q[i] == 0.0)
                  ? -kInf
                  : lambda * std::log(q[i]) + (1.0 - lambda) * std::log(p[i]);
  }
  return from_log_weights(std::move(logw));
}

inline Histogram arithmetic_mixture(const Histogram& p, const Histogram& q, double lambda) {
  if (lambda == 0.0) return p;
  if (lambda == 1.0) return q;
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = lambda * q[i] + (1.0 - lambda) * p[i];
  return Histogram(std::move(w));
}

inline Histogram require_mass(std::optional<Histogram> h) {
  if (!h) {
    throw DomainError("barycenter has no mass: the inputs share no support at this order");
  }
  return std::move(*h);
}

}  // namespace detail

/// Point on the exclusive barycentric path from p (lambda=0) to q (lambda=1).
/// Only finite orders; the KL and infinite cases have their own functions.
inline Histogram exclusive_curve_point(const Histogram& p, const Histogram& q, Alpha alpha,
                                       double lambda) {
  require_same_size(p, q);
  detail::require_unit_lambda(lambda);
  if (!alpha.is_finite()) {
    throw Unsupported("exclusive_curve_point needs a finite order other than 1; use "
                      "kl_curve_point or infinity_geodesic_point");
  }
  return detail::require_mass(detail::exclusive_barycenter(p, q, alpha.value(), lambda));
}

/// Point on the inclusive barycentric path, (lambda q^a + (1-lambda) p^a)^(1/a).
/// The formula is regular at a = 1, where it is the arithmetic mixture.
inline Histogram inclusive_curve_point(const Histogram& p, const Histogram& q, Alpha alpha,
                                       double lambda) {
  require_same_size(p, q);
  detail::require_unit_lambda(lambda);
  if (alpha.is_one()) return detail::arithmetic_mixture(p, q, lambda);
  if (!alpha.is_finite()) {
    throw Unsupported("inclusive_curve_point needs a finite order");
  }
  return detail::inclusive_barycenter(p, q, alpha.value(), lambda);
}

/// KL barycenters: normalized geometric mixture (exclusive) or arithmetic
/// mixture (inclusive).
inline Histogram kl_curve_point(const Histogram& p, const Histogram& q, FrontierSide side,
                                double lambda) {
  require_same_size(p, q);
  detail::require_unit_lambda(lambda);
  if (side == FrontierSide::Inclusive) return detail::arithmetic_mixture(p, q, lambda);
  return detail::require_mass(detail::geometric_mixture(p, q, lambda));
}

/// Range of q_i / p_i over the support of p.
struct RatioDomain {
  double lo = 0.0;           // min ratio, 0 when q misses part of supp p
  double lo_positive = 0.0;  // smallest positive ratio, 0 if none
  double hi = 0.0;           // max ratio
  bool q_within_p = true;    // supp q is contained in supp p
};

inline RatioDomain ratio_domain(const Histogram& p, const Histogram& q) {
  require_same_size(p, q);
  RatioDomain d;
  d.lo = kInf;
  d.lo_positive = kInf;
  d.hi = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] > 0.0) d.q_within_p = false;
      continue;
    }
    const double r = q[i] / p[i];
    d.lo = std::min(d.lo, r);
    d.hi = std::max(d.hi, r);
    if (r > 0.0) d.lo_positive = std::min(d.lo_positive, r);
  }
  if (!std::isfinite(d.lo_positive)) d.lo_positive = 0.0;
  return d;
}

/// Point on the geodesic of the Funk metric, [gamma]_i ~ min(p_i, q_i/lambda),
/// for lambda in [min q_i/p_i, max q_i/p_i] (ratios over supp p).
inline Histogram infinity_geodesic_point(const Histogram& p, const Histogram& q,
                                         double lambda) {
  const RatioDomain dom = ratio_domain(p, q);
  const double slack = 1e-12 * std::max(1.0, dom.hi);
  if (!(lambda >= dom.lo - slack && lambda <= dom.hi + slack)) {
    throw DomainError("geodesic parameter " + std::to_string(lambda) + " outside [" +
                      std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "]");
  }
  if (lambda <= dom.lo) return p;
  if (lambda >= dom.hi && dom.q_within_p) return q;
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = std::min(p[i], q[i] / lambda);
  return detail::require_mass(Histogram(std::move(w)));
}

/// Minimizers of the inclusive order-infinity problem, [r]_i ~ max(p_i, t q_i).
/// t = 0 gives p and t = +inf gives q.
inline Histogram inclusive_infinity_point(const Histogram& p, const Histogram& q, double t) {
  require_same_size(p, q);
  if (!(t >= 0.0)) throw DomainError("inclusive order-infinity parameter must be >= 0");
  if (t == 0.0) return p;
  if (std::isinf(t)) return q;
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = std::max(p[i], t * q[i]);
  return Histogram(std::move(w));
}

namespace detail {

inline std::vector<double> geometric_grid(double lo, double hi, int count) {
  std::vector<double> g;
  if (count <= 0) return g;
  if (count == 1 || lo == hi) {
    g.assign(static_cast<std::size_t>(count), lo);
    return g;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int k = 0; k < count; ++k) {
    g.push_back(k == 0 ? lo
                : k == count - 1
                    ? hi
                    : std::exp(llo + (lhi - llo) * static_cast<double>(k) / (count - 1)));
  }
  return g;
}

inline void require_grid_size(int grid_size) {
  if (grid_size < 2) throw ParameterError("grid size must be at least 2");
}

}  // namespace detail

/// Lambda values for the order-infinity exclusive frontier: log-uniform over
/// the ratio domain. When q misses part of supp p the lower end is 0 and the
/// log-uniform part starts at the smallest positive ratio.
inline std::vector<double> infinity_lambda_grid(const Histogram& p, const Histogram& q,
                                                int grid_size) {
  detail::require_grid_size(grid_size);
  const RatioDomain dom = ratio_domain(p, q);
  if (dom.hi == 0.0) return {0.0};
  if (dom.lo > 0.0) return detail::geometric_grid(dom.lo, dom.hi, grid_size);
  std::vector<double> g{0.0};
  auto rest = detail::geometric_grid(dom.lo_positive, dom.hi, grid_size - 1);
  g.insert(g.end(), rest.begin(), rest.end());
  return g;
}

/// Stretch factor for unbounded sides of the inclusive order-infinity grid.
inline constexpr double kInfinityTailSpan = 1e6;

/// Interior t values for the inclusive order-infinity frontier, log-uniform.
/// The path bends only for t in [1/max ratio, 1/min positive ratio]; when the
/// supports differ it keeps moving beyond either end, so that side is
/// stretched by `kInfinityTailSpan`. Disjoint supports use
/// [1/kInfinityTailSpan, kInfinityTailSpan].
inline std::vector<double> inclusive_infinity_grid(const Histogram& p, const Histogram& q,
                                                   int grid_size) {
  detail::require_grid_size(grid_size);
  const RatioDomain dom = ratio_domain(p, q);
  double lo = 1.0;
  double hi = 1.0;
  if (dom.hi > 0.0) {
    lo = 1.0 / dom.hi;
    hi = 1.0 / dom.lo_positive;
  }
  if (dom.hi == 0.0 || !dom.q_within_p) lo /= kInfinityTailSpan;
  if (dom.hi == 0.0 || dom.lo == 0.0) hi *= kInfinityTailSpan;
  return detail::geometric_grid(lo, hi, grid_size);
}

namespace detail {

inline FrontierPoint evaluate_point(const std::optional<Histogram>& r, const Histogram& p,
                                    const Histogram& q, Alpha alpha, FrontierSide side,
                                    double lambda) {
  if (!r) return {lambda, kInf, kInf};
  if (side == FrontierSide::Exclusive) {
    return {lambda, renyi_discrete(*r, p, alpha), renyi_discrete(*r, q, alpha)};
  }
  return {lambda, renyi_discrete(p, *r, alpha), renyi_discrete(q, *r, alpha)};
}

/// Pareto-filters on (div_p, div_q) and orders the survivors by lambda.
inline std::vector<FrontierPoint> finalize(std::vector<FrontierPoint> pts) {
  std::vector<Point2> xy;
  xy.reserve(pts.size());
  for (const auto& p : pts) xy.push_back({p.div_p, p.div_q});
  std::vector<std::size_t> keep = pareto_minimal_indices(xy);
  std::sort(keep.begin(), keep.end());
  std::vector<FrontierPoint> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(pts[i]);
  std::stable_sort(out.begin(), out.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    return a.lambda < b.lambda;
  });
  return out;
}

}  // namespace detail

/// Exclusive or inclusive divergence frontier between two histograms.
///
/// Finite orders and the KL order walk the closed-form barycentric path on a
/// uniform grid of `grid_size` values in [0,1]. The infinite order walks the
/// Funk geodesic (exclusive) or the max-mixture path (inclusive) on a
/// log-uniform grid. Every point is (D(R,P), D(R,Q)) for the exclusive side
/// and (D(P,R), D(Q,R)) for the inclusive side, and the result is
/// Pareto-filtered. Order zero is rejected: its frontier degenerates to
/// support overlap, see `knn_support_metrics`.
inline FrontierCurve frontier(const Histogram& p, const Histogram& q, Alpha alpha,
                              FrontierSide side, int grid_size = kDefaultGridSize) {
  require_same_size(p, q);
  detail::require_grid_size(grid_size);
  if (alpha.is_zero()) {
    throw Unsupported("frontiers are not defined for order 0; use support-overlap metrics");
  }

  std::vector<double> lambdas;
  if (alpha.is_infinity()) {
    if (side == FrontierSide::Exclusive) {
      lambdas = infinity_lambda_grid(p, q, grid_size);
      if (!ratio_domain(p, q).q_within_p) lambdas.push_back(kInf);
    } else {
      lambdas.push_back(0.0);
      const auto mid = inclusive_infinity_grid(p, q, grid_size);
      lambdas.insert(lambdas.end(), mid.begin(), mid.end());
      lambdas.push_back(kInf);
    }
  } else {
    for (int k = 0; k < grid_size; ++k) {
      lambdas.push_back(static_cast<double>(k) / (grid_size - 1));
    }
  }

  std::vector<FrontierPoint> pts(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t k) {
    const double lambda = lambdas[k];
    std::optional<Histogram> r;
    if (alpha.is_infinity()) {
      if (side == FrontierSide::Exclusive) {
        r = std::isinf(lambda) ? q : infinity_geodesic_point(p, q, lambda);
      } else {
        r = inclusive_infinity_point(p, q, lambda);
      }
    } else if (alpha.is_one()) {
      r = side == FrontierSide::Exclusive ? detail::geometric_mixture(p, q, lambda)
                                          : detail::arithmetic_mixture(p, q, lambda);
    } else if (side == FrontierSide::Exclusive) {
      r = detail::exclusive_barycenter(p, q, alpha.value(), lambda);
    } else {
      r = detail::inclusive_barycenter(p, q, alpha.value(), lambda);
    }
    pts[k] = detail::evaluate_point(r, p, q, alpha, side, lambda);
  });

  return FrontierCurve{detail::finalize(std::move(pts)), side, alpha};
}

}  // namespace divfront
