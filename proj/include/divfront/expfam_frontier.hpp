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

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "divfront/alpha.hpp"
#include "divfront/divergence.hpp"
#include "divfront/exp_family.hpp"
#include "divfront/frontier.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/numeric.hpp"

namespace divfront {

/// KL barycenter between two members of an exponential family. Inclusive
/// interpolates the mean parameters, exclusive the natural parameters;
/// lambda = 1 gives theta_p and lambda = 0 gives theta_q.
inline NaturalParams expfam_curve_point(const NaturalParams& theta_p,
                                        const NaturalParams& theta_q, FrontierSide side,
                                        double lambda, const ExpFamilySpec& fam) {
  fam.require(theta_p.theta);
  fam.require(theta_q.theta);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("curve parameter must lie in [0,1], got " + std::to_string(lambda));
  }
  if (lambda == 1.0) return theta_p;
  if (lambda == 0.0) return theta_q;
  NaturalParams out;
  if (side == FrontierSide::Exclusive) {
    out.theta = lambda * theta_p.theta + (1.0 - lambda) * theta_q.theta;
  } else {
    const Eigen::VectorXd eta = lambda * fam.grad_log_partition(theta_p.theta) +
                                (1.0 - lambda) * fam.grad_log_partition(theta_q.theta);
    out.theta = fam.inv_grad_log_partition(eta);
  }
  // Both domains are convex, so leaving them means the family spec is broken.
  if (!fam.contains(out.theta)) {
    throw std::logic_error("exponential-family barycenter left the natural domain");
  }
  return out;
}

/// KL frontier between two members of `fam`. Stored lambdas follow the
/// discrete convention (0 at P, 1 at Q), i.e. lambda = 1 - t for the
/// barycenter weight t used by `expfam_curve_point`.
inline FrontierCurve expfam_frontier(const NaturalParams& theta_p, const NaturalParams& theta_q,
                                     FrontierSide side, const ExpFamilySpec& fam,
                                     int grid_size = kDefaultGridSize) {
  detail::require_grid_size(grid_size);
  fam.require(theta_p.theta);
  fam.require(theta_q.theta);
  std::vector<FrontierPoint> pts(static_cast<std::size_t>(grid_size));
  parallel_for(pts.size(), [&](std::size_t k) {
    const double lambda = static_cast<double>(k) / (grid_size - 1);
    const NaturalParams r = expfam_curve_point(theta_p, theta_q, side, 1.0 - lambda, fam);
    if (side == FrontierSide::Exclusive) {
      pts[k] = {lambda, bregman_kl(r, theta_p, fam), bregman_kl(r, theta_q, fam)};
    } else {
      pts[k] = {lambda, bregman_kl(theta_p, r, fam), bregman_kl(theta_q, r, fam)};
    }
  });
  return FrontierCurve{detail::finalize(std::move(pts)), side, Alpha::one()};
}

/// KL frontier between two Gaussians within the Gaussian family.
inline FrontierCurve frontier_kl(const GaussianParams& p, const GaussianParams& q,
                                 FrontierSide side, int grid_size = kDefaultGridSize) {
  require_same_dim(p, q);
  return expfam_frontier(gaussian_to_natural(p), gaussian_to_natural(q), side,
                         gaussian_family(p.dim()), grid_size);
}

/// Gaussian frontier for an arbitrary order. Only the KL order has a closed
/// form; anything else is rejected.
inline FrontierCurve frontier_gaussian(const GaussianParams& p, const GaussianParams& q,
                                       Alpha alpha, FrontierSide side,
                                       int grid_size = kDefaultGridSize) {
  if (!alpha.is_one()) {
    throw Unsupported("gaussian frontiers are available for order 1 (KL) only, got order " +
                      alpha.to_string());
  }
  return frontier_kl(p, q, side, grid_size);
}

struct KlEndpoints {
  double precision_loss;  // KL(Q || P)
  double recall_loss;     // KL(P || Q)
};

inline KlEndpoints kl_endpoints(const GaussianParams& p, const GaussianParams& q) {
  return {kl_gaussian(q, p), kl_gaussian(p, q)};
}

}  // namespace divfront
