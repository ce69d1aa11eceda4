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

#include "aggregation/point.h"

namespace decentllms::aggregation {

inline constexpr std::size_t kOracleMaxDim = 5;
inline constexpr std::size_t kOracleMaxPoints = 20;
inline constexpr double kOracleCellSize = 1e-4;

// Brute-force geometric median: nested grid search of the objective over the
// inputs' bounding box. The box zooms in around the best grid point, or slides
// unshrunk when that point lies on its face, until the cell edge is at most
// kOracleCellSize. A second search, in a small box centred on the best input,
// and the inputs themselves then compete with the result.
// Shares no code with the Weiszfeld solver. Dimension above 5 is unsupported.
Point GeometricMedianOracle(std::span<const Point> points);

}  // namespace decentllms::aggregation
