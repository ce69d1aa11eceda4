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

#pragma once

#include <span>
#include <vector>

namespace decentllms::aggregation {

using Point = std::vector<double>;

double Distance(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Sum of Euclidean distances from z to every point.
double MedianObjective(std::span<const Point> points, std::span<const double> z);

// Throws on empty input, zero dimension, ragged dimensions, or non-finite
// coordinates. Returns the common dimension.
std::size_t CheckPoints(std::span<const Point> points);

}  // namespace decentllms::aggregation
