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

#include "aggregation/point.h"

namespace decentllms::aggregation {

struct WeiszfeldParams {
  int max_iterations = 1000;
  double tolerance = 1e-5;
  double coincidence_epsilon = 1e-12;

  // Throws unless every field is strictly positive.
  void Validate() const;
};

struct GeometricMedianResult {
  Point point;
  int iterations = 0;
  bool converged = false;
  // True when the minimizer is one of the inputs, certified by the
  // first-order optimality condition at that input.
  bool at_input = false;
};

// Weiszfeld iteration started from the coordinate-wise mean, with the
// Vardi-Zhang modification when an iterate lands on an input.
GeometricMedianResult GeometricMedian(std::span<const Point> points,
                                      const WeiszfeldParams& params = {});

struct RobustScore {
  std::vector<double> vector;
  // Sum of the vector's components: [0, 100] for score vectors.
  double scalar = 0.0;
};

RobustScore AggregateScores(std::span<const Point> points,
                            const WeiszfeldParams& params = {});

}  // namespace decentllms::aggregation
