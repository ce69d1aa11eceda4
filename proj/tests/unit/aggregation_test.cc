// Copyright 2026 The DecentLLMs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aggregation/comparison.h"
#include "aggregation/geometric_median.h"
#include "aggregation/oracle.h"
#include "aggregation/point.h"
#include "core/error.h"
#include "support/gen.h"

namespace decentllms::aggregation {
namespace {

void ExpectNear(const Point& got, const Point& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  EXPECT_LE(Distance(got, want), tol) << "got (" << got[0] << ", " << got[1] << ", ...)";
}

// Expected minimizers below were computed offline with an independent
// gradient-based minimizer (gradient norm < 1e-8 at the reported point).

TEST(GeometricMedian, EquilateralishTriangleFermatPoint) {
  const std::vector<Point> pts = {{0, 0}, {4, 0}, {2, 3}};
  ExpectNear(GeometricMedian(pts).point, {2.0, 2.0 / std::sqrt(3.0)}, 1e-4);
}

TEST(GeometricMedian, ObtuseVertexIsTheMedian) {
  const std::vector<Point> pts = {{0, 0}, {2, 0}, {1, 0.2}};
  const auto r = GeometricMedian(pts);
  EXPECT_TRUE(r.at_input);
  EXPECT_EQ(r.point, (Point{1, 0.2}));
}

TEST(GeometricMedian, SquareCenter) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  ExpectNear(GeometricMedian(pts).point, {0.5, 0.5}, 1e-5);
}

TEST(GeometricMedian, InteriorInputPoint) {
  const std::vector<Point> pts = {{0, 0}, {3, 1}, {1, 4}, {5, 5}, {2, 2.5}};
  const auto r = GeometricMedian(pts);
  EXPECT_TRUE(r.at_input);
  EXPECT_EQ(r.point, (Point{2, 2.5}));
}

TEST(GeometricMedian, FiveCriterionScores) {
  const std::vector<Point> pts = {{12, 14, 10, 16, 13}, {15, 15, 12, 18, 14}, {10, 11, 9, 12, 10},
                                  {20, 18, 17, 19, 20}, {14, 13, 15, 12, 16}};
  ExpectNear(GeometricMedian(pts).point,
             {13.720886518, 14.145302150, 11.916843872, 15.791706780, 14.037447434}, 1e-4);
}

TEST(GeometricMedian, FiveCriterionScoresWithOutliers) {
  const std::vector<Point> pts = {{12, 14, 10, 16, 13}, {15, 15, 12, 18, 14}, {10, 11, 9, 12, 10},
                                  {14, 13, 15, 12, 16}, {0, 0, 0, 0, 0},      {20, 20, 20, 20, 20},
                                  {0, 20, 0, 20, 0}};
  ExpectNear(GeometricMedian(pts).point,
             {12.056178686, 13.910172379, 10.289573032, 15.676778033, 12.832447151}, 1e-4);
}

TEST(GeometricMedian, SinglePointAndDuplicates) {
  EXPECT_EQ(GeometricMedian(std::vector<Point>{{3, 4}}).point, (Point{3, 4}));
  const std::vector<Point> same(6, Point{1, 2, 3});
  EXPECT_EQ(GeometricMedian(same).point, (Point{1, 2, 3}));
}

TEST(GeometricMedian, OneDimensionIsTheMedian) {
  const std::vector<Point> pts = {{5}, {1}, {9}, {2}, {100}};
  EXPECT_EQ(GeometricMedian(pts).point, (Point{5}));
}

TEST(GeometricMedian, RejectsBadInput) {
  EXPECT_THROW(GeometricMedian(std::vector<Point>{}), Error);
  EXPECT_THROW(GeometricMedian(std::vector<Point>{{1, 2}, {1}}), Error);
  EXPECT_THROW(GeometricMedian(std::vector<Point>{{1, NAN}}), Error);
  EXPECT_THROW(GeometricMedian(std::vector<Point>{{}}), Error);
  WeiszfeldParams bad;
  bad.tolerance = 0;
  EXPECT_THROW(GeometricMedian(std::vector<Point>{{1}}, bad), Error);
}

TEST(GeometricMedian, AggregateScalarIsComponentSum) {
  const std::vector<Point> pts = {{10, 10, 10, 10, 10}, {12, 12, 12, 12, 12}, {11, 11, 11, 11, 11}};
  const auto r = AggregateScores(pts);
  EXPECT_DOUBLE_EQ(r.scalar, 55.0);
}

// Properties over random clouds.

TEST(GeometricMedianProperty, NoWorseThanAnyInputOrTheMean) {
  testgen::ForAll(300, 1, [](testgen::Gen& g, int) {
    const auto pts = g.Cloud(g.Int(1, 15), g.Int(1, 6), 0, 20);
    const auto z = GeometricMedian(pts).point;
    const double obj = MedianObjective(pts, z);
    for (const auto& p : pts) EXPECT_LE(obj, MedianObjective(pts, p) + 1e-6);
    Point mean(pts[0].size(), 0.0);
    for (const auto& p : pts) {
      for (std::size_t i = 0; i < p.size(); ++i) mean[i] += p[i] / pts.size();
    }
    EXPECT_LE(obj, MedianObjective(pts, mean) + 1e-6);
  });
}

TEST(GeometricMedianProperty, InsideBoundingBox) {
  testgen::ForAll(300, 2, [](testgen::Gen& g, int) {
    const auto pts = g.Cloud(g.Int(1, 15), 5, 0, 20);
    const auto z = GeometricMedian(pts).point;
    for (std::size_t i = 0; i < z.size(); ++i) {
      double lo = 1e9, hi = -1e9;
      for (const auto& p : pts) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
      }
      EXPECT_GE(z[i], lo);
      EXPECT_LE(z[i], hi);
    }
  });
}

TEST(GeometricMedianProperty, PermutationInvariant) {
  testgen::ForAll(200, 3, [](testgen::Gen& g, int) {
    auto pts = g.Cloud(g.Int(2, 12), 5, 0, 20);
    if (g.Coin()) pts.push_back(pts[0]);
    const auto a = GeometricMedian(pts).point;
    g.Shuffle(pts);
    const auto b = GeometricMedian(pts).point;
    EXPECT_LE(Distance(a, b), 1e-4);
  });
}

TEST(GeometricMedianProperty, TranslationEquivariant) {
  testgen::ForAll(200, 4, [](testgen::Gen& g, int) {
    auto pts = g.Cloud(g.Int(2, 12), 3, 0, 20);
    const auto shift = g.PointIn(3, -5, 5);
    const auto a = GeometricMedian(pts).point;
    for (auto& p : pts) {
      for (std::size_t i = 0; i < 3; ++i) p[i] += shift[i];
    }
    auto b = GeometricMedian(pts).point;
    for (std::size_t i = 0; i < 3; ++i) b[i] -= shift[i];
    EXPECT_LE(Distance(a, b), 1e-3);
  });
}

TEST(GeometricMedianProperty, MajorityCoincidence) {
  testgen::ForAll(300, 5, [](testgen::Gen& g, int) {
    const int n = g.Int(1, 15);
    const int k = g.Int(0, (n - 1) / 2);
    const auto p = g.PointIn(5, 0, 20);
    std::vector<Point> pts(static_cast<std::size_t>(n - k), p);
    for (int i = 0; i < k; ++i) pts.push_back(g.PointIn(5, 0, 20));
    g.Shuffle(pts);
    EXPECT_LE(Distance(GeometricMedian(pts).point, p), 1e-5);
  });
}

TEST(GeometricMedianProperty, AgreesWithOracle) {
  testgen::ForAll(40, 6, [](testgen::Gen& g, int) {
    const auto pts = g.Cloud(2 * g.Int(1, 6) + 1, static_cast<std::size_t>(g.Int(1, 3)), 0, 20);
    EXPECT_LE(Distance(GeometricMedian(pts).point, GeometricMedianOracle(pts)), 1e-3);
  });
}

TEST(Oracle, KnownAnswersAndLimits) {
  const std::vector<Point> tri = {{0, 0}, {4, 0}, {2, 3}};
  ExpectNear(GeometricMedianOracle(tri), {2.0, 2.0 / std::sqrt(3.0)}, 1e-3);
  EXPECT_THROW(GeometricMedianOracle(std::vector<Point>{Point(6, 0.0)}), Error);
  EXPECT_THROW(GeometricMedianOracle(std::vector<Point>(21, Point{1.0})), Error);
}

// The minimizer lies 2.8e-3 from the first input with a tiny objective gain.
TEST(Oracle, FindsMinimizerBesideAnInput) {
  const std::vector<Point> pts = {
      {13.36801324820247, 13.752766486004083, 7.3206925827844804, 7.1366130144133741,
       4.4679276937666232},
      {15.077390442377371, 15.507774192172317, 5.3029804639789262, 6.5147237295296181,
       3.7469844283609435},
      {4.85449046098097, 19.017153710569008, 18.392575621802106, 7.5701004212825076,
       18.567541920981984},
      {6.2159388187763494, 3.3380812281160894, 11.593577831771265, 5.1666032365887382,
       6.3205179999429237},
      {18.18631089564122, 12.092379638297132, 2.1695719278805239, 3.7634661561978451,
       3.5920315784350039}};
  const Point oracle = GeometricMedianOracle(pts);
  EXPECT_GT(Distance(oracle, pts[0]), 1e-3);
  EXPECT_LE(Distance(GeometricMedian(pts).point, oracle), 1e-3);
}

TEST(CoordinateMedian, OddAndEven) {
  EXPECT_EQ(CoordinateMedian(std::vector<Point>{{1, 9}, {3, 7}, {2, 8}}), (Point{2, 8}));
  EXPECT_EQ(CoordinateMedian(std::vector<Point>{{1, 0}, {3, 4}}), (Point{2, 2}));
}

TEST(Krum, PicksTheTightCluster) {
  std::vector<Point> pts = {{10, 10}, {10.5, 10}, {10, 10.5}, {9.5, 10}, {10, 9.5}, {100, 100},
                            {-80, 40}};
  EXPECT_LT(KrumIndex(pts, 2), 5u);
  const auto k = Krum(pts, 2);
  EXPECT_LT(Distance(k, Point{10, 10}), 1.0);
}

TEST(Krum, RequiresEnoughPoints) {
  const std::vector<Point> pts = {{0}, {1}, {2}, {3}};
  EXPECT_THROW(KrumIndex(pts, 2), Error);
  EXPECT_NO_THROW(KrumIndex(pts, 1));
}

TEST(Krum, TiesGoToLowestIndex) {
  const std::vector<Point> pts = {{0}, {1}, {0}, {1}};
  EXPECT_EQ(KrumIndex(pts, 1), 0u);
}

TEST(Bulyan, ResistsOutliersAndChecksSize) {
  std::vector<Point> pts;
  for (int i = 0; i < 9; ++i) pts.push_back({10.0 + 0.1 * i, 5.0 - 0.1 * i});
  pts.push_back({1000, -1000});
  pts.push_back({-1000, 1000});
  const auto b = Bulyan(pts, 2);
  EXPECT_LT(Distance(b, Point{10.4, 4.6}), 1.0);
  EXPECT_THROW(Bulyan(std::vector<Point>(10, Point{1.0}), 2), Error);
}

// Geometric median keeps an honest majority intact where Krum can be pulled
// away: the tolerances differ.
TEST(Comparison, GeometricMedianToleratesMoreOutliers) {
  // n = 7: GM tolerates 3, Krum needs n >= f + 3 and rejects f = 5.
  std::vector<Point> pts(4, Point{5, 5});
  for (int i = 0; i < 3; ++i) pts.push_back({20, 0});
  EXPECT_LE(Distance(GeometricMedian(pts).point, Point{5, 5}), 1e-5);
  EXPECT_THROW(KrumIndex(pts, 5), Error);
  EXPECT_THROW(Bulyan(pts, 2), Error);
}

}  // namespace
}  // namespace decentllms::aggregation
