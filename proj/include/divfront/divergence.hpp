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

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "divfront/alpha.hpp"
#include "divfront/errors.hpp"
#include "divfront/exp_family.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/histogram.hpp"
#include "divfront/numeric.hpp"

namespace divfront {

namespace detail {

inline double clamp_nonnegative(double d) { return d > 0.0 ? d : 0.0; }

}  // namespace detail

/// KL(p || q) with 0 log(0/q) = 0. +inf when p puts mass where q has none.
inline double kl_discrete(const Histogram& p, const Histogram& q) {
  require_same_size(p, q);
  if (total_variation(p, q) <= kEqualityTolerance) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    s += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return detail::clamp_nonnegative(s);
}

/// -log q(supp p), the order-zero limit.
inline double support_divergence(const Histogram& p, const Histogram& q) {
  require_same_size(p, q);
  if (total_variation(p, q) <= kEqualityTolerance) return 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) mass += q[i];
  }
  if (mass <= 0.0) return kInf;
  return detail::clamp_nonnegative(-std::log(std::min(mass, 1.0)));
}

/// Funk weak metric on the simplex, log max_i p_i / q_i over supp p.
inline double funk_metric(const Histogram& p, const Histogram& q) {
  require_same_size(p, q);
  if (total_variation(p, q) <= kEqualityTolerance) return 0.0;
  double best = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    best = std::max(best, std::log(p[i]) - std::log(q[i]));
  }
  return detail::clamp_nonnegative(best);
}

/// Renyi divergence D_alpha(p || q) for every order, including the limits.
/// Finite orders are summed in the log domain with a max shift so that orders
/// up to 1e4 and beyond stay finite.
inline double renyi_discrete(const Histogram& p, const Histogram& q, Alpha alpha) {
  require_same_size(p, q);
  switch (alpha.kind()) {
    case Alpha::Kind::Zero: return support_divergence(p, q);
    case Alpha::Kind::One: return kl_discrete(p, q);
    case Alpha::Kind::Infinity: return funk_metric(p, q);
    case Alpha::Kind::Finite: break;
  }
  if (total_variation(p, q) <= kEqualityTolerance) return 0.0;
  const double a = alpha.value();
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (a > 1.0) return kInf;
      continue;
    }
    terms.push_back(a * std::log(p[i]) + (1.0 - a) * std::log(q[i]));
  }
  if (terms.empty()) return kInf;
  return detail::clamp_nonnegative(log_sum_exp(terms) / (a - 1.0));
}

/// Closed-form KL between multivariate normals.
inline double kl_gaussian(const GaussianParams& p, const GaussianParams& q) {
  require_same_dim(p, q);
  if (p == q) return 0.0;
  const Eigen::VectorXd diff = q.mean() - p.mean();
  const double trace = q.llt().solve(p.cov()).trace();
  const double maha = diff.dot(q.llt().solve(diff));
  const double d = static_cast<double>(p.dim());
  return detail::clamp_nonnegative(0.5 * (trace + maha - d + q.log_det() - p.log_det()));
}

/// Closed-form Renyi divergence between multivariate normals.
///
/// Finite orders need alpha*Sigma_Q + (1-alpha)*Sigma_P to be positive
/// definite; otherwise the integral diverges and DivergenceUndefined is
/// thrown. The infinite order is the supremum of the log density ratio, which
/// is finite only when Sigma_Q - Sigma_P is positive definite (or P == Q).
/// The zero order is 0 since both densities have full support.
inline double renyi_gaussian(const GaussianParams& p, const GaussianParams& q, Alpha alpha) {
  require_same_dim(p, q);
  switch (alpha.kind()) {
    case Alpha::Kind::Zero: return 0.0;
    case Alpha::Kind::One: return kl_gaussian(p, q);
    case Alpha::Kind::Infinity: {
      if (p == q) return 0.0;
      const Eigen::MatrixXd gap = q.cov() - p.cov();
      Eigen::LLT<Eigen::MatrixXd> llt(gap);
      if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0.0)) {
        return kInf;
      }
      const Eigen::VectorXd diff = p.mean() - q.mean();
      return detail::clamp_nonnegative(0.5 * (q.log_det() - p.log_det()) +
                                       0.5 * diff.dot(llt.solve(diff)));
    }
    case Alpha::Kind::Finite: break;
  }
  if (p == q) return 0.0;
  const double a = alpha.value();
  const Eigen::MatrixXd mixed = a * q.cov() + (1.0 - a) * p.cov();
  Eigen::LLT<Eigen::MatrixXd> llt(mixed);
  if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0.0)) {
    throw DivergenceUndefined("alpha*cov_Q + (1-alpha)*cov_P is not positive definite for alpha=" +
                              alpha.to_string());
  }
  const double log_det_mixed = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const Eigen::VectorXd diff = p.mean() - q.mean();
  const double quad = 0.5 * a * diff.dot(llt.solve(diff));
  const double logs =
      (log_det_mixed - (1.0 - a) * p.log_det() - a * q.log_det()) / (2.0 * (a - 1.0));
  return detail::clamp_nonnegative(quad - logs);
}

/// KL(P(.|theta) || P(.|theta_prime)) as the Bregman divergence of the
/// log-partition function.
inline double bregman_kl(const NaturalParams& theta, const NaturalParams& theta_prime,
                         const ExpFamilySpec& fam) {
  fam.require(theta.theta);
  fam.require(theta_prime.theta);
  if (theta.theta == theta_prime.theta) return 0.0;
  const double a = fam.log_partition(theta.theta);
  const double a_prime = fam.log_partition(theta_prime.theta);
  const Eigen::VectorXd grad = fam.grad_log_partition(theta.theta);
  return detail::clamp_nonnegative(a_prime - a - grad.dot(theta_prime.theta - theta.theta));
}

}  // namespace divfront
