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

#include "divfront/frontier.hpp"
#include "divfront/oracle.hpp"
#include "divfront/pareto.hpp"
#include "divfront/prd.hpp"
#include "test_util.hpp"

namespace divfront {
namespace {

const Histogram kP{0.5, 0.5};
const Histogram kQ{0.25, 0.75};

void expect_hist_near(const Histogram& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "entry " << i;
}

bool contains_point(const FrontierCurve& c, double x, double y, double tol) {
  return std::any_of(c.points.begin(), c.points.end(), [&](const FrontierPoint& fp) {
    const bool xs = std::isinf(x) ? fp.div_p == x : std::abs(fp.div_p - x) <= tol;
    const bool ys = std::isinf(y) ? fp.div_q == y : std::abs(fp.div_q - y) <= tol;
    return xs && ys;
  });
}

// O(n^2) dominance scan.
std::vector<Point2> brute_pareto(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const auto& a : pts) {
    bool dominated = false;
    for (const auto& b : pts) {
      if (b.x <= a.x && b.y <= a.y && (b.x < a.x || b.y < a.y)) dominated = true;
    }
    if (dominated) continue;
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  std::sort(out.begin(), out.end(),
            [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return out;
}

TEST(ParetoFilter, Examples) {
  EXPECT_EQ(pareto_filter(std::vector<Point2>{{1, 1}}), (std::vector<Point2>{{1, 1}}));
  EXPECT_EQ(pareto_filter(std::vector<Point2>{{2, 2}, {1, 1}, {0, 2}, {2, 0}}),
            (std::vector<Point2>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(pareto_filter(std::vector<Point2>{{1, 1}, {1, 1}, {1, 2}}),
            (std::vector<Point2>{{1, 1}}));
  EXPECT_TRUE(pareto_filter(std::vector<Point2>{}).empty());
  EXPECT_EQ(pareto_filter(std::vector<Point2>{{0, kInf}, {kInf, 0}, {kInf, kInf}}),
            (std::vector<Point2>{{0, kInf}, {kInf, 0}}));
  EXPECT_THROW(pareto_filter(std::vector<Point2>{{NAN, 0}}), DomainError);
}

TEST(ParetoFilter, MatchesQuadraticScan) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coarse(0, 12);
  std::uniform_real_distribution<double> fine(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<Point2> pts(1 + t % 60);
    for (auto& p : pts) {
      // Coarse values force ties and duplicates.
      p = t % 2 ? Point2{double(coarse(rng)), double(coarse(rng))} : Point2{fine(rng), fine(rng)};
    }
    EXPECT_EQ(pareto_filter(pts), brute_pareto(pts));
  }
}

TEST(ExclusiveCurvePoint, Examples) {
  EXPECT_EQ(exclusive_curve_point(kP, kQ, Alpha::finite(2.0), 0.0), kP);
  EXPECT_EQ(exclusive_curve_point(kP, kQ, Alpha::finite(2.0), 1.0), kQ);
  // Harmonic mixture: unnormalized (1/3, 3/5).
  expect_hist_near(exclusive_curve_point(kP, kQ, Alpha::finite(2.0), 0.5), {5.0 / 14, 9.0 / 14},
                   1e-15);
  EXPECT_THROW(exclusive_curve_point(kP, kQ, Alpha::finite(2.0), 1.5), DomainError);
  EXPECT_THROW(exclusive_curve_point(kP, kQ, Alpha::one(), 0.5), Unsupported);
  EXPECT_THROW(exclusive_curve_point(kP, Histogram{1, 1, 1}, Alpha::finite(2.0), 0.5),
               DimensionError);
}

TEST(ExclusiveCurvePoint, ZeroEntriesAboveOrderOne) {
  const Histogram p{0.5, 0.5, 0.0};
  const Histogram q{0.0, 0.5, 0.5};
  const auto r = exclusive_curve_point(p, q, Alpha::finite(3.0), 0.3);
  expect_hist_near(r, {0.0, 1.0, 0.0}, 0.0);
  // Continuity: a tiny positive entry gives almost the same barycenter.
  const Histogram p_eps{0.5, 0.5, 1e-14};
  const auto r_eps = exclusive_curve_point(p_eps, q, Alpha::finite(3.0), 0.3);
  expect_hist_near(r_eps, {0.0, 1.0, 0.0}, 1e-9);
}

TEST(InclusiveCurvePoint, Examples) {
  EXPECT_EQ(inclusive_curve_point(kP, kQ, Alpha::finite(2.0), 0.0), kP);
  EXPECT_EQ(inclusive_curve_point(kP, kQ, Alpha::finite(2.0), 1.0), kQ);
  expect_hist_near(inclusive_curve_point(kP, kQ, Alpha::one(), 0.5), {0.375, 0.625}, 1e-15);
  const double a = std::sqrt(0.5 * 0.0625 + 0.5 * 0.25);
  const double b = std::sqrt(0.5 * 0.5625 + 0.5 * 0.25);
  expect_hist_near(inclusive_curve_point(kP, kQ, Alpha::finite(2.0), 0.5),
                   {a / (a + b), b / (a + b)}, 1e-15);
  EXPECT_NEAR(a / (a + b), 0.38278222, 1e-8);
  EXPECT_THROW(inclusive_curve_point(kP, kQ, Alpha::infinity(), 0.5), Unsupported);
}

TEST(KlCurvePoint, Examples) {
  for (auto side : {FrontierSide::Exclusive, FrontierSide::Inclusive}) {
    EXPECT_EQ(kl_curve_point(kP, kQ, side, 0.0), kP);
    EXPECT_EQ(kl_curve_point(kP, kQ, side, 1.0), kQ);
  }
  expect_hist_near(kl_curve_point(kP, kQ, FrontierSide::Exclusive, 0.5),
                   {0.36602540378443865, 0.63397459621556135}, 1e-15);
  expect_hist_near(kl_curve_point(kP, kQ, FrontierSide::Inclusive, 0.5), {0.375, 0.625}, 1e-15);
}

TEST(CurvePoints, ApproachKlPathsNearOrderOne) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto p = testing::random_histogram(rng, 5, 0.01);
    const auto q = testing::random_histogram(rng, 5, 0.01);
    for (double lam : {0.2, 0.5, 0.9}) {
      const auto e = exclusive_curve_point(p, q, Alpha::finite(1.0 + 1e-7), lam);
      const auto g = kl_curve_point(p, q, FrontierSide::Exclusive, lam);
      EXPECT_LE(total_variation(e, g), 1e-5);
    }
  }
}

// The barycenter minimizes the scalarized objective over the simplex grid.
TEST(CurvePoints, MinimizeScalarizedObjective) {
  const auto grid = oracle::enumerate_simplex(3, 60);
  const Histogram p{0.6, 0.3, 0.1};
  const Histogram q{0.1, 0.2, 0.7};
  for (double lam : {0.25, 0.5, 0.75}) {
    auto excl = [&](const Histogram& r) {
      return lam * kl_discrete(r, q) + (1 - lam) * kl_discrete(r, p);
    };
    auto incl = [&](const Histogram& r) {
      return lam * kl_discrete(q, r) + (1 - lam) * kl_discrete(p, r);
    };
    const auto re = kl_curve_point(p, q, FrontierSide::Exclusive, lam);
    const auto ri = kl_curve_point(p, q, FrontierSide::Inclusive, lam);
    double best_e = kInf, best_i = kInf;
    for (const auto& g : grid.points) {
      const auto s = oracle::smoothed(g);
      best_e = std::min(best_e, excl(s));
      best_i = std::min(best_i, incl(s));
    }
    EXPECT_LE(excl(re), best_e + 1e-12);
    EXPECT_LE(incl(ri), best_i + 1e-12);
    EXPECT_GE(excl(re), best_e - 2.0 / 60);
  }
}

TEST(InfinityGeodesic, Examples) {
  expect_hist_near(infinity_geodesic_point(kP, kQ, 1.0), {1.0 / 3, 2.0 / 3}, 1e-15);
  const auto dom = ratio_domain(kP, kQ);
  EXPECT_DOUBLE_EQ(dom.lo, 0.5);
  EXPECT_DOUBLE_EQ(dom.hi, 1.5);
  EXPECT_EQ(infinity_geodesic_point(kP, kQ, dom.lo), kP);
  EXPECT_EQ(infinity_geodesic_point(kP, kQ, dom.hi), kQ);
  EXPECT_THROW(infinity_geodesic_point(kP, kQ, 0.4), DomainError);
  EXPECT_THROW(infinity_geodesic_point(kP, kQ, 1.6), DomainError);
}

TEST(InfinityGeodesic, Geodesity) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::random_histogram(rng, 2 + t % 9);
    const auto q = testing::random_histogram(rng, p.size());
    const double whole = funk_metric(p, q);
    for (double lam : infinity_lambda_grid(p, q, 201)) {
      const auto g = infinity_geodesic_point(p, q, lam);
      EXPECT_NEAR(funk_metric(p, g) + funk_metric(g, q), whole, 1e-9);
    }
  }
}

TEST(InfinityLambdaGrid, Shape) {
  const auto g = infinity_lambda_grid(kP, kQ, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.5);
  EXPECT_EQ(g.back(), 1.5);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_NEAR(g[1] / g[0], g[2] / g[1], 1e-12);
  const auto z = infinity_lambda_grid(Histogram{0.5, 0.5, 0.0}, Histogram{0.0, 0.5, 0.5}, 5);
  ASSERT_EQ(z.size(), 5u);
  EXPECT_EQ(z.front(), 0.0);
  EXPECT_EQ(z[1], 1.0);
  EXPECT_THROW(infinity_lambda_grid(kP, kQ, 1), ParameterError);
}

TEST(Frontier, IdenticalInputsCollapse) {
  for (Alpha a : {Alpha::finite(0.5), Alpha::one(), Alpha::finite(2.0), Alpha::infinity()}) {
    for (auto side : {FrontierSide::Exclusive, FrontierSide::Inclusive}) {
      const auto c = frontier(kQ, kQ, a, side, 11);
      ASSERT_EQ(c.points.size(), 1u) << a.to_string();
      EXPECT_EQ(c.points[0].div_p, 0.0);
      EXPECT_EQ(c.points[0].div_q, 0.0);
    }
  }
}

TEST(Frontier, DisjointSupportsHaveInfiniteCoordinates) {
  const Histogram p{0.5, 0.5, 0.0, 0.0};
  const Histogram q{0.0, 0.0, 0.3, 0.7};
  for (Alpha a : {Alpha::one(), Alpha::finite(2.0), Alpha::infinity()}) {
    const auto c = frontier(p, q, a, FrontierSide::Exclusive, 21);
    ASSERT_EQ(c.points.size(), 2u) << a.to_string();
    for (const auto& fp : c.points) {
      EXPECT_TRUE(std::isinf(fp.div_p) || std::isinf(fp.div_q)) << a.to_string();
    }
  }
}

// Inclusive barycenters cover both supports, so the interior stays finite:
// the disjoint curve is (log 1/(1-l), log 1/l) for the arithmetic mixture.
TEST(Frontier, DisjointSupportsInclusiveInterior) {
  const Histogram p{0.5, 0.5, 0.0, 0.0};
  const Histogram q{0.0, 0.0, 0.3, 0.7};
  const auto kl = frontier(p, q, Alpha::one(), FrontierSide::Inclusive, 5);
  ASSERT_EQ(kl.points.size(), 5u);
  for (const auto& fp : kl.points) {
    if (fp.lambda == 0.0 || fp.lambda == 1.0) continue;
    EXPECT_NEAR(fp.div_p, -std::log(1.0 - fp.lambda), 1e-12);
    EXPECT_NEAR(fp.div_q, -std::log(fp.lambda), 1e-12);
  }
  const auto inf = frontier(p, q, Alpha::infinity(), FrontierSide::Inclusive, 41);
  EXPECT_EQ(inf.points.size(), 43u);
  for (const auto& fp : inf.points) {
    if (fp.lambda == 0.0 || std::isinf(fp.lambda)) continue;
    EXPECT_NEAR(fp.div_p, std::log1p(fp.lambda), 1e-12);
    EXPECT_NEAR(fp.div_q, std::log1p(1.0 / fp.lambda), 1e-12);
  }
}

TEST(Frontier, Endpoints) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto p = testing::random_histogram(rng, 2 + t % 6);
    const auto q = testing::random_histogram(rng, p.size());
    for (Alpha a : {Alpha::finite(0.5), Alpha::one(), Alpha::finite(2.0), Alpha::infinity()}) {
      const double pq = renyi_discrete(p, q, a);
      const double qp = renyi_discrete(q, p, a);
      const auto ex = frontier(p, q, a, FrontierSide::Exclusive, 51);
      EXPECT_TRUE(contains_point(ex, 0.0, pq, 1e-9)) << a.to_string();
      EXPECT_TRUE(contains_point(ex, qp, 0.0, 1e-9)) << a.to_string();
      const auto in = frontier(p, q, a, FrontierSide::Inclusive, 51);
      EXPECT_TRUE(contains_point(in, 0.0, qp, 1e-9)) << a.to_string();
      EXPECT_TRUE(contains_point(in, pq, 0.0, 1e-9)) << a.to_string();
    }
  }
}

TEST(Frontier, SortedByLambdaAndNonDominated) {
  std::mt19937_64 rng(59);
  const auto p = testing::random_histogram(rng, 6);
  const auto q = testing::random_histogram(rng, 6);
  for (Alpha a : {Alpha::finite(0.5), Alpha::one(), Alpha::finite(3.0), Alpha::infinity()}) {
    for (auto side : {FrontierSide::Exclusive, FrontierSide::Inclusive}) {
      const auto c = frontier(p, q, a, side);
      EXPECT_EQ(c.side, side);
      EXPECT_EQ(c.alpha, a);
      for (std::size_t i = 1; i < c.points.size(); ++i) {
        EXPECT_LT(c.points[i - 1].lambda, c.points[i].lambda);
        // Along the path recall loss grows while precision loss shrinks.
        EXPECT_LE(c.points[i - 1].div_p, c.points[i].div_p);
        EXPECT_GE(c.points[i - 1].div_q, c.points[i].div_q);
      }
    }
  }
}

TEST(Frontier, Errors) {
  EXPECT_THROW(frontier(kP, kQ, Alpha::zero(), FrontierSide::Exclusive), Unsupported);
  EXPECT_THROW(frontier(kP, kQ, Alpha::finite(2.0), FrontierSide::Exclusive, 1), ParameterError);
  EXPECT_THROW(frontier(kP, Histogram{1, 2, 3}, Alpha::one(), FrontierSide::Inclusive),
               DimensionError);
  EXPECT_EQ(parse_side("exclusive"), FrontierSide::Exclusive);
  EXPECT_EQ(parse_side("inclusive"), FrontierSide::Inclusive);
  EXPECT_THROW(parse_side("sideways"), DomainError);
}

TEST(Frontier, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(61);
  const auto p = testing::random_histogram(rng, 8);
  const auto q = testing::random_histogram(rng, 8);
  ::setenv("FRONTIER_THREADS", "1", 1);
  const auto serial = frontier(p, q, Alpha::finite(2.0), FrontierSide::Inclusive, 1001);
  ::setenv("FRONTIER_THREADS", "8", 1);
  const auto parallel = frontier(p, q, Alpha::finite(2.0), FrontierSide::Inclusive, 1001);
  ::unsetenv("FRONTIER_THREADS");
  ASSERT_EQ(serial.points.size(), parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    EXPECT_EQ(serial.points[i].lambda, parallel.points[i].lambda);
    EXPECT_EQ(serial.points[i].div_p, parallel.points[i].div_p);
    EXPECT_EQ(serial.points[i].div_q, parallel.points[i].div_q);
  }
}

TEST(Prd, Examples) {
  const auto same = prd_from_infinity_frontier(
      frontier(kQ, kQ, Alpha::infinity(), FrontierSide::Exclusive));
  EXPECT_NE(std::find(same.points.begin(), same.points.end(), PRDPoint{1.0, 1.0}),
            same.points.end());

  const Histogram a{0.5, 0.5, 0.0, 0.0};
  const Histogram b{0.0, 0.0, 0.5, 0.5};
  const auto disjoint = prd_from_infinity_frontier(
      frontier(a, b, Alpha::infinity(), FrontierSide::Exclusive));
  EXPECT_EQ(disjoint.points, (std::vector<PRDPoint>{{0.0, 0.0}}));
  EXPECT_EQ(prd_reference(a, b).points, (std::vector<PRDPoint>{{0.0, 0.0}}));

  EXPECT_THROW(prd_from_infinity_frontier(
                   frontier(kP, kQ, Alpha::finite(2.0), FrontierSide::Exclusive)),
               DomainError);
  EXPECT_THROW(prd_from_infinity_frontier(
                   frontier(kP, kQ, Alpha::infinity(), FrontierSide::Inclusive)),
               DomainError);
}

void expect_prd_equal(const PRDCurve& a, const PRDCurve& b, double tol) {
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_NEAR(a.points[i].recall, b.points[i].recall, tol);
    EXPECT_NEAR(a.points[i].precision, b.points[i].precision, tol);
  }
}

TEST(Prd, MatchesReferenceConstruction) {
  expect_prd_equal(
      prd_from_infinity_frontier(frontier(kP, kQ, Alpha::infinity(), FrontierSide::Exclusive)),
      prd_reference(kP, kQ), 1e-9);
  std::mt19937_64 rng(67);
  for (int t = 0; t < 30; ++t) {
    const auto p = testing::random_histogram(rng, 10);
    const auto q = testing::random_histogram(rng, 10);
    expect_prd_equal(
        prd_from_infinity_frontier(frontier(p, q, Alpha::infinity(), FrontierSide::Exclusive)),
        prd_reference(p, q), 1e-9);
  }
}

TEST(Prd, UniformSubsetSupport) {
  std::vector<double> p(10, 1.0), q(10, 0.0);
  std::fill(q.begin(), q.begin() + 5, 1.0);
  const Histogram hp(p), hq(q);
  for (const auto& curve :
       {prd_from_infinity_frontier(frontier(hp, hq, Alpha::infinity(), FrontierSide::Exclusive)),
        prd_reference(hp, hq)}) {
    double best = 0.0;
    for (const auto& pt : curve.points) best = std::max(best, pt.precision);
    EXPECT_NEAR(best, 1.0, 1e-12);
    const auto top = std::find_if(curve.points.begin(), curve.points.end(),
                                  [](const PRDPoint& x) { return x.precision > 1 - 1e-12; });
    ASSERT_NE(top, curve.points.end());
    EXPECT_NEAR(top->recall, 0.5, 1e-12);
  }
  // Swapping roles swaps the axes.
  const auto swapped =
      prd_from_infinity_frontier(frontier(hq, hp, Alpha::infinity(), FrontierSide::Exclusive));
  double best_recall = 0.0, prec_at_best = 0.0;
  for (const auto& pt : swapped.points) {
    if (pt.recall > best_recall) best_recall = pt.recall, prec_at_best = pt.precision;
  }
  EXPECT_NEAR(best_recall, 1.0, 1e-12);
  EXPECT_NEAR(prec_at_best, 0.5, 1e-12);
}

// Shared-mass closed form: precision = sum min(lambda p, q), recall = precision / lambda.
TEST(Prd, MatchesSharedMassFormula) {
  std::mt19937_64 rng(71);
  const auto p = testing::random_histogram(rng, 7);
  const auto q = testing::random_histogram(rng, 7);
  const auto curve = prd_reference(p, q, 401);
  for (const auto& pt : curve.points) {
    const double lambda = pt.precision / pt.recall;
    double shared = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) shared += std::min(lambda * p[i], q[i]);
    EXPECT_NEAR(pt.precision, shared, 1e-9);
  }
}

}  // namespace
}  // namespace divfront
