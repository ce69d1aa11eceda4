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

#include "aggregation/comparison.h"

#include <algorithm>
#include <numeric>

#include "core/error.h"

namespace decentllms::aggregation {
namespace {

double MedianOf(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Krum scoring with an explicit neighbour count; Bulyan's late selections run
// on sets too small for n - f - 2 >= 1, so the count is floored at one there.
std::size_t KrumSelect(std::span<const Point> points, int neighbours) {
  const std::size_t n = points.size();
  if (n == 1) return 0;
  const auto k = static_cast<std::size_t>(
      std::clamp(neighbours, 1, static_cast<int>(n) - 1));
  std::size_t best = 0;
  double best_score = 0.0;
  std::vector<double> d;
  for (std::size_t i = 0; i < n; ++i) {
    d.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d.push_back(SquaredDistance(points[i], points[j]));
    }
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    const double score = std::accumulate(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    if (i == 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

Point CoordinateMedian(std::span<const Point> points) {
  const std::size_t dim = CheckPoints(points);
  Point out(dim);
  std::vector<double> column(points.size());
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < points.size(); ++i) column[i] = points[i][c];
    out[c] = MedianOf(column);
  }
  return out;
}

std::size_t KrumIndex(std::span<const Point> points, int f) {
  CheckPoints(points);
  const auto n = static_cast<int>(points.size());
  if (f < 0) throw InvalidArgument("krum: f must be non-negative");
  if (n < f + 3) {
    throw PreconditionError("krum requires n >= f + 3 (n=" + std::to_string(n) +
                            ", f=" + std::to_string(f) + ")");
  }
  return KrumSelect(points, n - f - 2);
}

Point Krum(std::span<const Point> points, int f) {
  return points[KrumIndex(points, f)];
}

Point Bulyan(std::span<const Point> points, int f) {
  const std::size_t dim = CheckPoints(points);
  const auto n = static_cast<int>(points.size());
  if (f < 0) throw InvalidArgument("bulyan: f must be non-negative");
  if (n < 4 * f + 3) {
    throw PreconditionError("bulyan requires n >= 4f + 3 (n=" +
                            std::to_string(n) + ", f=" + std::to_string(f) + ")");
  }

  std::vector<Point> remaining(points.begin(), points.end());
  std::vector<Point> selected;
  const int theta = n - 2 * f;
  for (int s = 0; s < theta; ++s) {
    const int m = static_cast<int>(remaining.size());
    const std::size_t pick = KrumSelect(remaining, m - f - 2);
    selected.push_back(std::move(remaining[pick]));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  const auto beta = static_cast<std::size_t>(theta - 2 * f);
  Point out(dim);
  std::vector<double> column(selected.size());
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < selected.size(); ++i) column[i] = selected[i][c];
    const double med = MedianOf(column);
    std::stable_sort(column.begin(), column.end(), [med](double a, double b) {
      return std::abs(a - med) < std::abs(b - med);
    });
    out[c] = std::accumulate(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(beta), 0.0) /
             static_cast<double>(beta);
  }
  return out;
}

}  // namespace decentllms::aggregation
