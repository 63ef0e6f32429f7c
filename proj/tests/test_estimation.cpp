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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "divfront/estimation.hpp"
#include "test_util.hpp"

namespace divfront {
namespace {

Eigen::MatrixXd blob(std::mt19937_64& rng, Eigen::Index n, double cx, double cy, double sd) {
  Eigen::MatrixXd x = testing::normal_samples(rng, n, 2, 0.0, sd);
  x.col(0).array() += cx;
  x.col(1).array() += cy;
  return x;
}

Eigen::MatrixXd stack(const std::vector<Eigen::MatrixXd>& parts) {
  Eigen::Index rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Eigen::MatrixXd out(rows, parts.front().cols());
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return out;
}

TEST(SampleMatrix, Validation) {
  EXPECT_THROW(SampleMatrix(Eigen::MatrixXd(0, 2)), InsufficientData);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 2);
  bad(1, 1) = NAN;
  EXPECT_THROW(SampleMatrix{bad}, DomainError);
}

TEST(FitGaussian, Examples) {
  const auto g = fit_gaussian(SampleMatrix(Eigen::MatrixXd::Zero(5, 3)), 1e-6);
  EXPECT_EQ(g.mean(), Eigen::VectorXd::Zero(3));
  EXPECT_LE((g.cov() - 1e-6 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-20);

  std::mt19937_64 rng(109);
  const auto big = fit_gaussian(SampleMatrix(testing::normal_samples(rng, 100000, 2)), 0.0);
  EXPECT_LE(big.mean().cwiseAbs().maxCoeff(), 0.02);
  EXPECT_LE((big.cov() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);

  Eigen::MatrixXd collinear(2, 3);
  collinear << 0, 0, 0, 1, 2, 3;
  EXPECT_THROW(fit_gaussian(SampleMatrix(collinear), 0.0), DomainError);
  EXPECT_THROW(fit_gaussian(SampleMatrix(Eigen::MatrixXd::Ones(1, 2)), 1e-6), InsufficientData);
  EXPECT_THROW(fit_gaussian(SampleMatrix(collinear), -1.0), ParameterError);
}

TEST(FitGaussian, Equivariance) {
  std::mt19937_64 rng(113);
  const Eigen::MatrixXd x = testing::normal_samples(rng, 500, 3, 0.5, 2.0);
  const auto base = fit_gaussian(SampleMatrix(x));
  const Eigen::RowVector3d v(3.0, -1.25, 0.5);
  const auto moved = fit_gaussian(SampleMatrix(x.rowwise() + v));
  EXPECT_LE((moved.mean() - base.mean() - v.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((moved.cov() - base.cov()).cwiseAbs().maxCoeff(), 1e-9);
  const double c = 2.5;
  const auto scaled = fit_gaussian(SampleMatrix(c * x));
  EXPECT_LE((scaled.cov() - c * c * base.cov()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Kmeans, DeterministicAndValid) {
  std::mt19937_64 rng(127);
  const Eigen::MatrixXd x = testing::normal_samples(rng, 400, 2);
  const auto a = kmeans(x, 7, 5);
  const auto b = kmeans(x, 7, 5);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.inertia, b.inertia);
  EXPECT_GE(a.iterations, 1);
  EXPECT_LE(a.iterations, kMaxLloydIterations);
  for (int i = 0; i < a.k; ++i) {
    for (int j = i + 1; j < a.k; ++j) EXPECT_NE(a.centers.row(i), a.centers.row(j));
  }
  EXPECT_THROW(kmeans(x, 1, 0), ParameterError);
  EXPECT_THROW(kmeans(x.topRows(3), 4, 0), ParameterError);
  EXPECT_THROW(kmeans(Eigen::MatrixXd::Zero(10, 2), 3, 0), ParameterError);
}

TEST(Kmeans, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(131);
  const Eigen::MatrixXd x = testing::normal_samples(rng, 3000, 3);
  ::setenv("FRONTIER_THREADS", "1", 1);
  const auto serial = kmeans(x, 12, 9);
  ::setenv("FRONTIER_THREADS", "6", 1);
  const auto parallel = kmeans(x, 12, 9);
  ::unsetenv("FRONTIER_THREADS");
  EXPECT_EQ(serial.centers, parallel.centers);
  EXPECT_EQ(serial.inertia, parallel.inertia);
}

TEST(Quantize, IdenticalInputs) {
  std::mt19937_64 rng(137);
  const SampleMatrix s(testing::normal_samples(rng, 300, 2));
  const auto qz = quantize(s, s, 8, 0);
  EXPECT_EQ(qz.p, qz.q);
  EXPECT_EQ(kl_discrete(qz.p, qz.q), 0.0);
  double total = 0.0;
  for (double v : qz.p) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_THROW(quantize(s, s, 601, 0), ParameterError);
  EXPECT_THROW(quantize(s, SampleMatrix(Eigen::MatrixXd::Zero(5, 3)), 2, 0), DimensionError);
}

TEST(Quantize, SeparatedBlobs) {
  std::mt19937_64 rng(139);
  const SampleMatrix a(blob(rng, 200, 0.0, 0.0, 0.1));
  const SampleMatrix b(blob(rng, 200, 10.0, 10.0, 0.1));
  const auto qz = quantize(a, b, 2, 0);
  EXPECT_NEAR(std::max(qz.p[0], qz.p[1]), 1.0, 1e-9);
  EXPECT_NEAR(std::max(qz.q[0], qz.q[1]), 1.0, 1e-9);
  EXPECT_NE(qz.p[0] > 0.5, qz.q[0] > 0.5);
  const auto prd =
      prd_from_infinity_frontier(frontier(qz.p, qz.q, Alpha::infinity(), FrontierSide::Exclusive));
  for (const auto& pt : prd.points) EXPECT_LE(std::min(pt.recall, pt.precision), 1e-8);
}

TEST(Quantize, UniformMixturesOfBlobs) {
  // Ten blobs on a circle; P uses all ten, Q the first five.
  std::mt19937_64 rng(149);
  std::vector<Eigen::MatrixXd> p_parts, q_parts;
  for (int c = 0; c < 10; ++c) {
    const double ang = 2.0 * std::numbers::pi * c / 10.0;
    p_parts.push_back(blob(rng, 100, 10 * std::cos(ang), 10 * std::sin(ang), 0.2));
    if (c < 5) q_parts.push_back(blob(rng, 100, 10 * std::cos(ang), 10 * std::sin(ang), 0.2));
  }
  const auto qz = quantize(SampleMatrix(stack(p_parts)), SampleMatrix(stack(q_parts)), 10, 3);
  const auto prd =
      prd_from_infinity_frontier(frontier(qz.p, qz.q, Alpha::infinity(), FrontierSide::Exclusive));
  const auto top = std::max_element(
      prd.points.begin(), prd.points.end(),
      [](const PRDPoint& x, const PRDPoint& y) { return x.precision < y.precision; });
  EXPECT_NEAR(top->precision, 1.0, 1e-6);
  EXPECT_NEAR(top->recall, 0.5, 1e-6);
}

TEST(KnnSupport, Examples) {
  std::mt19937_64 rng(151);
  const SampleMatrix s(testing::normal_samples(rng, 200, 2));
  const auto same = knn_support_metrics(s, s);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);

  const SampleMatrix a(blob(rng, 200, 0.0, 0.0, 0.1));
  const SampleMatrix b(blob(rng, 200, 50.0, 0.0, 0.1));
  const auto far = knn_support_metrics(a, b);
  EXPECT_LE(far.precision, 0.01);
  EXPECT_LE(far.recall, 0.01);

  EXPECT_THROW(knn_support_metrics(a, SampleMatrix(Eigen::MatrixXd::Zero(3, 2)), 3),
               ParameterError);
  EXPECT_THROW(knn_support_metrics(a, b, 0), ParameterError);
}

TEST(KnnSupport, SwapExchangesPrecisionAndRecall) {
  std::mt19937_64 rng(157);
  const SampleMatrix a(testing::normal_samples(rng, 300, 3));
  const SampleMatrix b(testing::normal_samples(rng, 250, 3, 0.4, 1.3));
  for (int k : {1, 3, 7}) {
    const auto ab = knn_support_metrics(a, b, k);
    const auto ba = knn_support_metrics(b, a, k);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
  }
}

TEST(KnnSupport, BlindToDensityOnSharedSupport) {
  std::mt19937_64 rng(163);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd p(2000, 2), q(2000, 2);
  for (Eigen::Index i = 0; i < 2000; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      p(i, j) = u(rng);
      q(i, j) = std::pow(u(rng), 2.0);
    }
  }
  const SampleMatrix sp(p), sq(q);
  const auto m = knn_support_metrics(sp, sq);
  EXPECT_GE(m.precision, 0.95);
  EXPECT_GE(m.recall, 0.95);
  const auto ends = kl_endpoints(fit_gaussian(sp), fit_gaussian(sq));
  EXPECT_GT(ends.precision_loss, 0.2);
  EXPECT_GT(ends.recall_loss, 0.2);
}

TEST(Pipeline, IdenticalInputs) {
  std::mt19937_64 rng(167);
  const SampleMatrix s(testing::normal_samples(rng, 400, 2));
  PipelineConfig cfg;
  cfg.k_clusters = 8;
  cfg.grid_size = 21;
  cfg.alphas = {Alpha::zero(), Alpha::one(), Alpha::infinity()};
  const auto r = evaluate_pipeline(s, s, cfg);
  EXPECT_EQ(r.endpoints.precision_loss, 0.0);
  EXPECT_EQ(r.endpoints.recall_loss, 0.0);
  EXPECT_NE(std::find(r.prd.points.begin(), r.prd.points.end(), PRDPoint{1.0, 1.0}),
            r.prd.points.end());
  EXPECT_EQ(r.knn.precision, 1.0);
  EXPECT_EQ(r.discrete_frontiers.size(), 4u);
  EXPECT_EQ(r.notes.size(), 1u);
  for (const auto& c : r.discrete_frontiers) {
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_EQ(c.points[0].div_p, 0.0);
  }
}

TEST(Pipeline, Deterministic) {
  std::mt19937_64 rng(173);
  const SampleMatrix a(testing::normal_samples(rng, 300, 2));
  const SampleMatrix b(testing::normal_samples(rng, 300, 2, 0.5, 0.7));
  PipelineConfig cfg;
  cfg.k_clusters = 6;
  cfg.grid_size = 31;
  const auto r1 = evaluate_pipeline(a, b, cfg);
  const auto r2 = evaluate_pipeline(a, b, cfg);
  EXPECT_EQ(r1.hist_p, r2.hist_p);
  EXPECT_EQ(r1.hist_q, r2.hist_q);
  EXPECT_EQ(r1.prd.points, r2.prd.points);
  EXPECT_EQ(r1.endpoints.recall_loss, r2.endpoints.recall_loss);
  ASSERT_EQ(r1.discrete_frontiers.size(), 8u);
  EXPECT_EQ(r1.discrete_frontiers[0].side, FrontierSide::Exclusive);
  EXPECT_EQ(r1.discrete_frontiers[1].side, FrontierSide::Inclusive);
}

TEST(Pipeline, TruncationTrend) {
  std::mt19937_64 rng(179);
  const SampleMatrix p(testing::normal_samples(rng, 20000, 1));
  double prev_recall = kInf, prev_precision = kInf;
  for (double tau : {0.5, 1.0, 1.5, 2.0}) {
    const auto ends =
        kl_endpoints(fit_gaussian(p, 1e-6),
                     fit_gaussian(SampleMatrix(testing::truncated_normal_samples(rng, 20000, tau)),
                                  1e-6));
    EXPECT_LT(ends.recall_loss, prev_recall) << tau;
    EXPECT_LT(ends.precision_loss, prev_precision) << tau;
    EXPECT_GT(ends.recall_loss, ends.precision_loss) << tau;
    prev_recall = ends.recall_loss;
    prev_precision = ends.precision_loss;
  }
}

}  // namespace
}  // namespace divfront
