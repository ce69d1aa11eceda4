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

#include "aggregation/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/error.h"

namespace decentllms::aggregation {
namespace {

constexpr int kGridPoints = 9;
// Half-width of the next box, in cells of the current grid.
constexpr double kZoomCells = 3.0;
// Bound on refinement levels, including slides.
constexpr int kMaxLevels = 2000;
// Half-width of the box around the best input, as a fraction of the extent.
constexpr double kAnchorBox = 1.0 / 16;

double Objective(std::span<const Point> points, const Point& z) {
  double obj = 0.0;
  for (const auto& p : points) {
    double s = 0.0;
    for (std::size_t c = 0; c < z.size(); ++c) {
      const double d = z[c] - p[c];
      s += d * d;
    }
    obj += std::sqrt(s);
  }
  return obj;
}

// Nested grid search starting from the box [lo, hi], never leaving
// [lo_bound, hi_bound].
Point Search(std::span<const Point> points, Point lo, Point hi, const Point& lo_bound,
             const Point& hi_bound) {
  const std::size_t dim = lo.size();
  Point best(dim);
  for (std::size_t c = 0; c < dim; ++c) best[c] = 0.5 * (lo[c] + hi[c]);

  std::vector<int> idx(dim), best_idx(dim);
  Point z(dim);
  Point cell(dim);
  for (int level = 0; level < kMaxLevels; ++level) {
    double max_cell = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      cell[c] = (hi[c] - lo[c]) / (kGridPoints - 1);
      max_cell = std::max(max_cell, cell[c]);
    }
    double best_obj = std::numeric_limits<double>::infinity();
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (std::size_t c = 0; c < dim; ++c) z[c] = lo[c] + idx[c] * cell[c];
      const double obj = Objective(points, z);
      if (obj < best_obj) {
        best_obj = obj;
        best = z;
        best_idx = idx;
      }
      std::size_t c = 0;
      while (c < dim && ++idx[c] == kGridPoints) idx[c++] = 0;
      if (c == dim) break;
    }
    // A best point on a face of the box (not the bounding box) means the
    // minimizer may lie outside it: slide the box there without shrinking.
    bool on_face = false;
    for (std::size_t c = 0; c < dim; ++c) {
      if ((best_idx[c] == 0 && lo[c] > lo_bound[c]) ||
          (best_idx[c] == kGridPoints - 1 && hi[c] < hi_bound[c])) {
        on_face = true;
      }
    }
    if (!on_face && max_cell <= kOracleCellSize) break;
    const double half = on_face ? 0.5 * (kGridPoints - 1) : kZoomCells;
    for (std::size_t c = 0; c < dim; ++c) {
      lo[c] = std::max(lo_bound[c], best[c] - half * cell[c]);
      hi[c] = std::min(hi_bound[c], best[c] + half * cell[c]);
    }
  }
  return best;
}

}  // namespace

Point GeometricMedianOracle(std::span<const Point> points) {
  const std::size_t dim = CheckPoints(points);
  if (dim > kOracleMaxDim) {
    throw InvalidArgument("gm oracle supports dimension <= 5");
  }
  if (points.size() > kOracleMaxPoints) {
    throw InvalidArgument("gm oracle supports at most 20 points");
  }

  Point lo_bound(dim), hi_bound(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    lo_bound[c] = hi_bound[c] = points.front()[c];
    for (const auto& p : points) {
      lo_bound[c] = std::min(lo_bound[c], p[c]);
      hi_bound[c] = std::max(hi_bound[c], p[c]);
    }
  }
  Point best = Search(points, lo_bound, hi_bound, lo_bound, hi_bound);
  double best_obj = Objective(points, best);

  // The minimizer often sits on or just beside an input, a kink the coarse
  // levels misjudge: search again in a small box centred on the best input.
  const Point* anchor = nullptr;
  double anchor_obj = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double obj = Objective(points, p);
    if (obj < anchor_obj) {
      anchor_obj = obj;
      anchor = &p;
    }
  }
  double extent = 0.0;
  for (std::size_t c = 0; c < dim; ++c) extent = std::max(extent, hi_bound[c] - lo_bound[c]);
  Point lo(dim), hi(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    lo[c] = std::max(lo_bound[c], (*anchor)[c] - kAnchorBox * extent);
    hi[c] = std::min(hi_bound[c], (*anchor)[c] + kAnchorBox * extent);
  }
  for (const Point& cand : {*anchor, Search(points, lo, hi, lo_bound, hi_bound)}) {
    const double obj = Objective(points, cand);
    if (obj < best_obj) {
      best_obj = obj;
      best = cand;
    }
  }
  return best;
}

}  // namespace decentllms::aggregation
