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

#include "aggregation/geometric_median.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "core/error.h"

namespace decentllms::aggregation {
namespace {

// Norm of the sum of unit vectors pointing from y to every input farther than
// eps, plus the number of inputs within eps of y. y minimizes the objective iff
// that norm is <= the coincident count.
struct AnchorCheck {
  double pull = 0.0;
  int coincident = 0;
};

AnchorCheck CheckAnchor(std::span<const Point> points, std::span<const double> y,
                        double eps) {
  const std::size_t dim = y.size();
  std::vector<double> r(dim, 0.0);
  AnchorCheck out;
  for (const auto& p : points) {
    const double d = Distance(p, y);
    if (d <= eps) {
      ++out.coincident;
      continue;
    }
    for (std::size_t c = 0; c < dim; ++c) r[c] += (p[c] - y[c]) / d;
  }
  out.pull = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
  return out;
}

// An input that satisfies the optimality condition, if any. Among several
// (only possible for collinear inputs) the one with the smallest objective,
// then lexicographically smallest, wins so input order never matters.
std::optional<Point> OptimalInput(std::span<const Point> points, double eps) {
  std::optional<Point> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const auto check = CheckAnchor(points, p, eps);
    if (check.pull > static_cast<double>(check.coincident)) continue;
    const double obj = MedianObjective(points, p);
    if (!best || obj < best_obj || (obj == best_obj && p < *best)) {
      best = p;
      best_obj = obj;
    }
  }
  return best;
}

// Newton step on the objective at y (no input within eps of y). Returns
// nothing when the Hessian is numerically singular, e.g. collinear inputs.
std::optional<Point> NewtonCandidate(std::span<const Point> points, const Point& y,
                                     double eps) {
  const std::size_t dim = y.size();
  std::vector<double> h(dim * dim, 0.0);
  Point rhs(dim, 0.0);
  Point u(dim);
  for (const auto& p : points) {
    const double d = Distance(p, y);
    if (d <= eps) return std::nullopt;
    for (std::size_t c = 0; c < dim; ++c) {
      u[c] = (p[c] - y[c]) / d;
      rhs[c] += u[c];
    }
    for (std::size_t a = 0; a < dim; ++a) {
      h[a * dim + a] += 1.0 / d;
      for (std::size_t b = 0; b < dim; ++b) h[a * dim + b] -= u[a] * u[b] / d;
    }
  }
  double trace = 0.0;
  for (std::size_t a = 0; a < dim; ++a) trace += h[a * dim + a];
  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::abs(h[r * dim + col]) > std::abs(h[piv * dim + col])) piv = r;
    }
    if (std::abs(h[piv * dim + col]) <= 1e-12 * trace) return std::nullopt;
    if (piv != col) {
      for (std::size_t b = 0; b < dim; ++b) std::swap(h[col * dim + b], h[piv * dim + b]);
      std::swap(rhs[col], rhs[piv]);
    }
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double f = h[r * dim + col] / h[col * dim + col];
      for (std::size_t b = col; b < dim; ++b) h[r * dim + b] -= f * h[col * dim + b];
      rhs[r] -= f * rhs[col];
    }
  }
  Point out(dim);
  for (std::size_t i = dim; i-- > 0;) {
    double v = rhs[i];
    for (std::size_t b = i + 1; b < dim; ++b) v -= h[i * dim + b] * out[b];
    out[i] = v / h[i * dim + i];
  }
  for (std::size_t c = 0; c < dim; ++c) out[c] += y[c];
  for (double v : out) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return out;
}

void ClampToHull(std::span<const Point> points, Point& z) {
  for (std::size_t c = 0; c < z.size(); ++c) {
    double lo = points.front()[c], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[c]);
      hi = std::max(hi, p[c]);
    }
    z[c] = std::clamp(z[c], lo, hi);
  }
}

}  // namespace

void WeiszfeldParams::Validate() const {
  if (max_iterations <= 0) throw InvalidArgument("max_iterations must be > 0");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");
  if (!(coincidence_epsilon > 0.0)) {
    throw InvalidArgument("coincidence_epsilon must be > 0");
  }
}

GeometricMedianResult GeometricMedian(std::span<const Point> points,
                                      const WeiszfeldParams& params) {
  params.Validate();
  const std::size_t dim = CheckPoints(points);
  const double eps = params.coincidence_epsilon;

  GeometricMedianResult result;
  if (auto anchor = OptimalInput(points, eps)) {
    result.point = std::move(*anchor);
    result.converged = true;
    result.at_input = true;
    return result;
  }

  Point y(dim, 0.0);
  for (const auto& p : points) {
    for (std::size_t c = 0; c < dim; ++c) y[c] += p[c];
  }
  for (auto& v : y) v /= static_cast<double>(points.size());

  Point weighted(dim);
  Point pull(dim);
  Point next(dim);
  for (int it = 1; it <= params.max_iterations; ++it) {
    result.iterations = it;
    std::fill(weighted.begin(), weighted.end(), 0.0);
    std::fill(pull.begin(), pull.end(), 0.0);
    double inv_sum = 0.0;
    int coincident = 0;
    for (const auto& p : points) {
      const double d = Distance(p, y);
      if (d <= eps) {
        ++coincident;
        continue;
      }
      const double w = 1.0 / d;
      inv_sum += w;
      for (std::size_t c = 0; c < dim; ++c) {
        weighted[c] += w * p[c];
        pull[c] += w * (p[c] - y[c]);
      }
    }
    for (std::size_t c = 0; c < dim; ++c) next[c] = weighted[c] / inv_sum;

    if (coincident > 0) {
      const double r =
          std::sqrt(std::inner_product(pull.begin(), pull.end(), pull.begin(), 0.0));
      if (r <= static_cast<double>(coincident)) {
        result.converged = true;
        result.at_input = true;
        break;
      }
      const double keep = static_cast<double>(coincident) / r;
      for (std::size_t c = 0; c < dim; ++c) {
        next[c] = (1.0 - keep) * next[c] + keep * y[c];
      }
    }

    // Plain Weiszfeld crawls when the minimizer sits close to an input; a
    // Newton step is taken instead whenever it lowers the objective more.
    if (coincident == 0) {
      if (auto n = NewtonCandidate(points, y, eps);
          n && MedianObjective(points, *n) < MedianObjective(points, next)) {
        next = std::move(*n);
      }
    }

    const double step = Distance(next, y);
    y.swap(next);
    if (step < params.tolerance) {
      result.converged = true;
      break;
    }
  }
  ClampToHull(points, y);
  result.point = std::move(y);
  return result;
}

RobustScore AggregateScores(std::span<const Point> points,
                            const WeiszfeldParams& params) {
  auto gm = GeometricMedian(points, params);
  RobustScore out;
  out.scalar = std::accumulate(gm.point.begin(), gm.point.end(), 0.0);
  out.vector = std::move(gm.point);
  return out;
}

}  // namespace decentllms::aggregation
