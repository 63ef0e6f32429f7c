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
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "divfront/alpha.hpp"
#include "divfront/errors.hpp"
#include "divfront/expfam_frontier.hpp"
#include "divfront/frontier.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/histogram.hpp"
#include "divfront/numeric.hpp"
#include "divfront/prd.hpp"

namespace divfront {

/// n x d matrix of embedding vectors, one sample per row.
class SampleMatrix {
 public:
  explicit SampleMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1 || rows_.cols() < 1) {
      throw InsufficientData("sample matrix needs at least one row and one column");
    }
    if (!rows_.allFinite()) throw DomainError("sample matrix has non-finite entries");
  }

  Eigen::Index size() const noexcept { return rows_.rows(); }
  Eigen::Index dim() const noexcept { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const noexcept { return rows_; }
  auto row(Eigen::Index i) const { return rows_.row(i); }

 private:
  Eigen::MatrixXd rows_;
};

inline void require_same_dim(const SampleMatrix& a, const SampleMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("sample dimensions differ: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

/// Sample mean and unbiased sample covariance plus ridge * I.
inline GaussianParams fit_gaussian(const SampleMatrix& samples, double ridge = 0.0) {
  if (samples.size() < 2) throw InsufficientData("fitting a gaussian needs at least 2 samples");
  if (!(ridge >= 0.0)) throw ParameterError("ridge must be nonnegative");
  const Eigen::VectorXd mean = samples.rows().colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rows().rowwise() - mean.transpose();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(samples.size() - 1);
  return GaussianParams::with_ridge(mean, std::move(cov), ridge);
}

struct QuantizationModel {
  Eigen::MatrixXd centers;  // k x d
  int k = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double inertia = 0.0;
};

inline constexpr double kHistogramSmoothing = 1e-10;
inline constexpr int kMaxLloydIterations = 300;
inline constexpr double kLloydTolerance = 1e-6;

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Index of the nearest center, ties to the lower index.
inline Eigen::Index nearest_center(const Eigen::MatrixXd& centers, const Eigen::MatrixXd& x,
                                   Eigen::Index row, double* dist2 = nullptr) {
  Eigen::Index best = 0;
  double best_d = kInf;
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const double d = (x.row(row) - centers.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

inline Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = (x.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (!(total > 0.0)) {
      throw ParameterError("fewer distinct samples than clusters (k=" + std::to_string(k) + ")");
    }
    const double target = uniform01(rng) * total;
    double acc = 0.0;
    Eigen::Index pick = n - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += d2[i];
      if (acc > target && d2[i] > 0.0) {
        pick = i;
        break;
      }
    }
    while (d2[pick] == 0.0) --pick;  // rounding at the tail of the scan
    centers.row(c) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

}  // namespace detail

/// Lloyd k-means with k-means++ seeding. Stops when the relative change of
/// the inertia drops below 1e-6 or after 300 iterations. Deterministic for a
/// fixed seed; assignments are computed in parallel but reduced in row order.
inline QuantizationModel kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed) {
  if (k < 2) throw ParameterError("cluster count must be at least 2");
  if (k > x.rows()) {
    throw ParameterError("cluster count " + std::to_string(k) + " exceeds sample count " +
                         std::to_string(x.rows()));
  }
  std::mt19937_64 rng(seed);
  QuantizationModel model;
  model.k = k;
  model.seed = seed;
  model.centers = detail::kmeans_plus_plus(x, k, rng);

  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<Eigen::Index> assign(n);
  std::vector<double> dist(n);
  double prev = kInf;
  for (int it = 0; it < kMaxLloydIterations; ++it) {
    parallel_for(n, [&](std::size_t i) {
      assign[i] = detail::nearest_center(model.centers, x, static_cast<Eigen::Index>(i), &dist[i]);
    });
    double inertia = 0.0;
    for (double d : dist) inertia += d;
    model.inertia = inertia;
    model.iterations = it + 1;
    const bool converged =
        std::isfinite(prev) && std::abs(prev - inertia) <= kLloydTolerance * std::max(prev, 1e-300);
    if (converged) break;
    prev = inertia;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(assign[i]) += x.row(static_cast<Eigen::Index>(i));
      ++counts[static_cast<std::size_t>(assign[i])];
    }
    for (int c = 0; c < k; ++c) {
      // An emptied cluster keeps its previous center.
      if (counts[c] > 0) model.centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    }
  }
  return model;
}

/// Cluster-assignment histogram of `samples` under `model`, smoothed by
/// adding `smoothing` to every bin frequency before normalizing.
inline Histogram assignment_histogram(const QuantizationModel& model, const SampleMatrix& samples,
                                      double smoothing = kHistogramSmoothing) {
  if (samples.dim() != model.centers.cols()) {
    throw DimensionError("sample dimension does not match the quantization model");
  }
  const auto n = static_cast<std::size_t>(samples.size());
  std::vector<Eigen::Index> assign(n);
  parallel_for(n, [&](std::size_t i) {
    assign[i] = detail::nearest_center(model.centers, samples.rows(), static_cast<Eigen::Index>(i));
  });
  std::vector<double> freq(static_cast<std::size_t>(model.k), 0.0);
  for (Eigen::Index a : assign) freq[static_cast<std::size_t>(a)] += 1.0;
  for (double& f : freq) f = f / static_cast<double>(n) + smoothing;
  return Histogram(std::move(freq));
}

struct Quantization {
  Histogram p;
  Histogram q;
  QuantizationModel model;
};

/// Clusters the pooled samples and returns the two assignment histograms over
/// the shared bins.
inline Quantization quantize(const SampleMatrix& samples_p, const SampleMatrix& samples_q, int k,
                             std::uint64_t seed) {
  require_same_dim(samples_p, samples_q);
  const Eigen::Index total = samples_p.size() + samples_q.size();
  if (k > total) {
    throw ParameterError("cluster count " + std::to_string(k) + " exceeds combined sample count " +
                         std::to_string(total));
  }
  Eigen::MatrixXd pooled(total, samples_p.dim());
  pooled << samples_p.rows(), samples_q.rows();
  QuantizationModel model = kmeans(pooled, k, seed);
  Histogram hp = assignment_histogram(model, samples_p);
  Histogram hq = assignment_histogram(model, samples_q);
  return {std::move(hp), std::move(hq), std::move(model)};
}

struct SupportMetrics {
  double precision;
  double recall;
};

inline constexpr int kDefaultKnnK = 3;

namespace detail {

/// Squared distance from each row to its k-th nearest other row.
inline std::vector<double> knn_radii2(const Eigen::MatrixXd& x, int k) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<double> radii(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> d;
    d.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      d.push_back((x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j)))
                      .squaredNorm());
    }
    std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
    radii[i] = d[static_cast<std::size_t>(k - 1)];
  });
  return radii;
}

/// Fraction of `queries` inside the union of balls around `ref` rows.
inline double coverage(const Eigen::MatrixXd& ref, const std::vector<double>& radii2,
                       const Eigen::MatrixXd& queries) {
  const auto m = static_cast<std::size_t>(queries.rows());
  std::vector<unsigned char> inside(m, 0);
  parallel_for(m, [&](std::size_t i) {
    for (Eigen::Index j = 0; j < ref.rows(); ++j) {
      if ((queries.row(static_cast<Eigen::Index>(i)) - ref.row(j)).squaredNorm() <=
          radii2[static_cast<std::size_t>(j)]) {
        inside[i] = 1;
        return;
      }
    }
  });
  std::size_t count = 0;
  for (unsigned char b : inside) count += b;
  return static_cast<double>(count) / static_cast<double>(m);
}

}  // namespace detail

/// Support-overlap precision and recall from unions of k-NN balls. Precision
/// is the fraction of Q samples inside the balls around P samples (radius:
/// distance to the k-th nearest other P sample); recall swaps the roles.
inline SupportMetrics knn_support_metrics(const SampleMatrix& samples_p,
                                          const SampleMatrix& samples_q, int k = kDefaultKnnK) {
  require_same_dim(samples_p, samples_q);
  if (k < 1) throw ParameterError("neighbour count must be at least 1");
  if (k >= samples_p.size() || k >= samples_q.size()) {
    throw ParameterError("neighbour count " + std::to_string(k) +
                         " must be smaller than both sample counts");
  }
  const auto radii_p = detail::knn_radii2(samples_p.rows(), k);
  const auto radii_q = detail::knn_radii2(samples_q.rows(), k);
  return {detail::coverage(samples_p.rows(), radii_p, samples_q.rows()),
          detail::coverage(samples_q.rows(), radii_q, samples_p.rows())};
}

struct PipelineConfig {
  int k_clusters = 20;
  int knn_k = kDefaultKnnK;
  double ridge = 1e-6;
  std::vector<Alpha> alphas{Alpha::finite(0.5), Alpha::one(), Alpha::finite(2.0),
                            Alpha::infinity()};
  int grid_size = kDefaultGridSize;
  std::uint64_t seed = 0;
};

struct PipelineReport {
  GaussianParams fitted_p;
  GaussianParams fitted_q;
  KlEndpoints endpoints;
  FrontierCurve kl_frontier;  // exclusive, fitted gaussians
  Histogram hist_p;
  Histogram hist_q;
  std::vector<FrontierCurve> discrete_frontiers;  // per alpha, exclusive then inclusive
  PRDCurve prd;
  SupportMetrics knn;
  std::vector<std::string> notes;
};

/// Runs both evaluation strategies on two sample sets: Gaussian fits with
/// their KL endpoints and KL frontier, k-means discretization with discrete
/// frontiers for every requested order and the PRD curve, and the k-NN
/// support metrics. Order 0 has no frontier; it is covered by the k-NN
/// metrics and noted in the report.
inline PipelineReport evaluate_pipeline(const SampleMatrix& samples_p,
                                        const SampleMatrix& samples_q,
                                        const PipelineConfig& config) {
  require_same_dim(samples_p, samples_q);
  GaussianParams gp = fit_gaussian(samples_p, config.ridge);
  GaussianParams gq = fit_gaussian(samples_q, config.ridge);
  KlEndpoints ends = kl_endpoints(gp, gq);
  FrontierCurve kl = frontier_kl(gp, gq, FrontierSide::Exclusive, config.grid_size);

  Quantization quant = quantize(samples_p, samples_q, config.k_clusters, config.seed);
  std::vector<FrontierCurve> curves;
  std::vector<std::string> notes;
  for (const Alpha& a : config.alphas) {
    if (a.is_zero()) {
      notes.push_back("order 0 has no frontier; see the knn support metrics");
      continue;
    }
    curves.push_back(frontier(quant.p, quant.q, a, FrontierSide::Exclusive, config.grid_size));
    curves.push_back(frontier(quant.p, quant.q, a, FrontierSide::Inclusive, config.grid_size));
  }
  PRDCurve prd = prd_from_infinity_frontier(
      frontier(quant.p, quant.q, Alpha::infinity(), FrontierSide::Exclusive, config.grid_size));
  SupportMetrics knn = knn_support_metrics(samples_p, samples_q, config.knn_k);

  return PipelineReport{std::move(gp),     std::move(gq),     ends,
                        std::move(kl),     std::move(quant.p), std::move(quant.q),
                        std::move(curves), std::move(prd),     knn,
                        std::move(notes)};
}

}  // namespace divfront
