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

#include "aggregation/point.h"

#include <cmath>

#include "core/error.h"

namespace decentllms::aggregation {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a, b));
}

double MedianObjective(std::span<const Point> points, std::span<const double> z) {
  double s = 0.0;
  for (const auto& p : points) s += Distance(p, z);
  return s;
}

std::size_t CheckPoints(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("aggregation input is empty");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw InvalidArgument("aggregation input has dimension 0");
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw InvalidArgument("dimension mismatch: expected " +
                            std::to_string(dim) + ", got " +
                            std::to_string(p.size()));
    }
    for (double v : p) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite coordinate");
    }
  }
  return dim;
}

}  // namespace decentllms::aggregation
