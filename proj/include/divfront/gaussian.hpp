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
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "divfront/errors.hpp"

namespace divfront {

/// Multivariate normal N(mean, cov). The covariance is checked for symmetry
/// (1e-10, then symmetrized) and positive definiteness at construction; the
/// Cholesky factor is kept for later solves.
class GaussianParams {
 public:
  static constexpr double kPdRelativeTolerance = 1e-13;

  GaussianParams(Eigen::VectorXd mean, Eigen::MatrixXd cov)
      : mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto d = mean_.size();
    if (d < 1) throw DimensionError("gaussian must have dimension >= 1");
    if (cov_.rows() != d || cov_.cols() != d) {
      throw DimensionError("covariance must be " + std::to_string(d) + "x" +
                           std::to_string(d));
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
      throw DomainError("gaussian parameters must be finite");
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
      throw DomainError("covariance is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose());
    llt_.compute(cov_);
    // Rank-deficient input can leave tiny positive pivots from roundoff, so
    // the smallest squared pivot is compared with the largest variance.
    const double floor = kPdRelativeTolerance * cov_.diagonal().cwiseAbs().maxCoeff();
    if (llt_.info() != Eigen::Success ||
        !(llt_.matrixLLT().diagonal().array().square().minCoeff() > floor)) {
      throw DomainError("covariance is not positive definite");
    }
  }

  /// 1-D convenience: N(mean, variance).
  static GaussianParams univariate(double mean, double variance) {
    return GaussianParams(Eigen::VectorXd::Constant(1, mean),
                          Eigen::MatrixXd::Constant(1, 1, variance));
  }

  /// Adds ridge * I to the covariance before validation.
  static GaussianParams with_ridge(Eigen::VectorXd mean, Eigen::MatrixXd cov,
                                   double ridge) {
    const auto d = cov.rows();
    if (cov.cols() == d) cov += ridge * Eigen::MatrixXd::Identity(d, d);
    return GaussianParams(std::move(mean), std::move(cov));
  }

  Eigen::Index dim() const noexcept { return mean_.size(); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }
  const Eigen::LLT<Eigen::MatrixXd>& llt() const noexcept { return llt_; }

  double log_det() const {
    return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
  }

  Eigen::MatrixXd precision() const {
    return llt_.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  }

  friend bool operator==(const GaussianParams& a, const GaussianParams& b) {
    return a.dim() == b.dim() && a.mean_ == b.mean_ && a.cov_ == b.cov_;
  }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

inline void require_same_dim(const GaussianParams& p, const GaussianParams& q) {
  if (p.dim() != q.dim()) {
    throw DimensionError("gaussian dimensions differ: " + std::to_string(p.dim()) +
                         " vs " + std::to_string(q.dim()));
  }
}

}  // namespace divfront
