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
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "divfront/errors.hpp"
#include "divfront/gaussian.hpp"

namespace divfront {

/// Natural parameter vector of an exponential family member.
struct NaturalParams {
  Eigen::VectorXd theta;
};

/// Mean (moment) parameter, the image of the natural parameter under the
/// gradient of the log-partition function.
struct MomentParams {
  Eigen::VectorXd eta;
};

/// Log-partition function of a family together with its gradient and the
/// inverse of the gradient. `in_domain` tests membership of the open natural
/// domain; it defaults to accepting every finite vector.
struct ExpFamilySpec {
  std::function<double(const Eigen::VectorXd&)> log_partition;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_log_partition;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> inv_grad_log_partition;
  Eigen::Index param_dim = 0;
  std::function<bool(const Eigen::VectorXd&)> in_domain;

  bool contains(const Eigen::VectorXd& theta) const {
    if (theta.size() != param_dim || !theta.allFinite()) return false;
    return !in_domain || in_domain(theta);
  }

  void require(const Eigen::VectorXd& theta) const {
    if (theta.size() != param_dim) {
      throw DimensionError("natural parameter has length " +
                           std::to_string(theta.size()) + ", family expects " +
                           std::to_string(param_dim));
    }
    if (!contains(theta)) throw DomainError("natural parameter outside the family domain");
  }
};

namespace detail {

inline Eigen::Index packed_size(Eigen::Index d) { return d + d * (d + 1) / 2; }

/// Dimension d such that d + d(d+1)/2 == m.
inline Eigen::Index dim_from_packed(Eigen::Index m) {
  for (Eigen::Index d = 1; packed_size(d) <= m; ++d) {
    if (packed_size(d) == m) return d;
  }
  throw DimensionError("length " + std::to_string(m) +
                       " is not a packed gaussian parameter length");
}

// Symmetric matrices are stored as their upper triangle, row by row, with the
// off-diagonal entries scaled by sqrt(2). The scaling makes the Euclidean
// inner product of two packed vectors equal the Frobenius product of the
// matrices, so the natural/mean pairing reads theta . eta.
inline void pack_symmetric(const Eigen::MatrixXd& m, Eigen::VectorXd& out,
                           Eigen::Index offset) {
  const Eigen::Index d = m.rows();
  Eigen::Index k = offset;
  for (Eigen::Index i = 0; i < d; ++i) {
    out(k++) = m(i, i);
    for (Eigen::Index j = i + 1; j < d; ++j) out(k++) = std::numbers::sqrt2 * m(i, j);
  }
}

inline Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& v, Eigen::Index offset,
                                        Eigen::Index d) {
  Eigen::MatrixXd m(d, d);
  Eigen::Index k = offset;
  for (Eigen::Index i = 0; i < d; ++i) {
    m(i, i) = v(k++);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      m(i, j) = m(j, i) = v(k++) / std::numbers::sqrt2;
    }
  }
  return m;
}

struct GaussianNatural {
  Eigen::VectorXd shift;      // Sigma^{-1} mu
  Eigen::MatrixXd precision;  // Sigma^{-1}, i.e. -2 times the matrix block
};

inline GaussianNatural split_natural(const Eigen::VectorXd& theta) {
  const Eigen::Index d = dim_from_packed(theta.size());
  return {theta.head(d), -2.0 * unpack_symmetric(theta, d, d)};
}

}  // namespace detail

/// theta = (Sigma^{-1} mu, packed(-Sigma^{-1}/2)).
inline NaturalParams gaussian_to_natural(const GaussianParams& g) {
  const Eigen::Index d = g.dim();
  const Eigen::MatrixXd prec = g.precision();
  Eigen::VectorXd theta(detail::packed_size(d));
  theta.head(d) = g.llt().solve(g.mean());
  detail::pack_symmetric(-0.5 * prec, theta, d);
  return {theta};
}

inline GaussianParams natural_to_gaussian(const NaturalParams& nat) {
  auto [shift, prec] = detail::split_natural(nat.theta);
  Eigen::LLT<Eigen::MatrixXd> llt(prec);
  if (llt.info() != Eigen::Success) {
    throw DomainError("natural parameter has a precision block that is not positive definite");
  }
  const Eigen::Index d = shift.size();
  Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(d, d));
  cov = 0.5 * (cov + cov.transpose());
  return GaussianParams(llt.solve(shift), std::move(cov));
}

/// eta = (E[x], packed(E[x x^T])).
inline MomentParams natural_to_moment(const NaturalParams& nat) {
  const GaussianParams g = natural_to_gaussian(nat);
  const Eigen::Index d = g.dim();
  Eigen::VectorXd eta(detail::packed_size(d));
  eta.head(d) = g.mean();
  detail::pack_symmetric(g.cov() + g.mean() * g.mean().transpose(), eta, d);
  return {eta};
}

inline GaussianParams moment_to_gaussian(const MomentParams& mom) {
  const Eigen::Index d = detail::dim_from_packed(mom.eta.size());
  const Eigen::VectorXd mean = mom.eta.head(d);
  Eigen::MatrixXd cov = detail::unpack_symmetric(mom.eta, d, d) - mean * mean.transpose();
  return GaussianParams(mean, std::move(cov));
}

inline NaturalParams moment_to_natural(const MomentParams& mom) {
  return gaussian_to_natural(moment_to_gaussian(mom));
}

/// Multivariate normal family in dimension d, natural coordinates as in
/// `gaussian_to_natural`. The log-partition is evaluated through a Cholesky
/// factor of the precision block.
inline ExpFamilySpec gaussian_family(Eigen::Index d) {
  ExpFamilySpec fam;
  fam.param_dim = detail::packed_size(d);
  fam.in_domain = [](const Eigen::VectorXd& theta) {
    auto [shift, prec] = detail::split_natural(theta);
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    return llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0;
  };
  fam.log_partition = [](const Eigen::VectorXd& theta) {
    auto [shift, prec] = detail::split_natural(theta);
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) {
      throw DomainError("natural parameter outside the gaussian domain");
    }
    const double d = static_cast<double>(shift.size());
    const double log_det_prec = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return 0.5 * shift.dot(llt.solve(shift)) - 0.5 * log_det_prec +
           0.5 * d * std::log(2.0 * std::numbers::pi);
  };
  fam.grad_log_partition = [](const Eigen::VectorXd& theta) {
    return natural_to_moment({theta}).eta;
  };
  fam.inv_grad_log_partition = [](const Eigen::VectorXd& eta) {
    return moment_to_natural({eta}).theta;
  };
  return fam;
}

/// Bernoulli family, A(theta) = log(1 + e^theta). Sufficient statistic x.
inline ExpFamilySpec bernoulli_family() {
  ExpFamilySpec fam;
  fam.param_dim = 1;
  fam.log_partition = [](const Eigen::VectorXd& theta) {
    const double t = theta(0);
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  };
  fam.grad_log_partition = [](const Eigen::VectorXd& theta) {
    const double t = theta(0);
    return Eigen::VectorXd::Constant(1, 1.0 / (1.0 + std::exp(-t)));
  };
  fam.inv_grad_log_partition = [](const Eigen::VectorXd& eta) {
    const double m = eta(0);
    if (!(m > 0.0 && m < 1.0)) throw DomainError("bernoulli mean must lie in (0,1)");
    return Eigen::VectorXd::Constant(1, std::log(m) - std::log1p(-m));
  };
  return fam;
}

}  // namespace divfront
