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

// Per-coordinate median; even counts take the midpoint of the two middle
// values.
Point CoordinateMedian(std::span<const Point> points);

// Krum: the input minimizing the sum of squared distances to its n - f - 2
// nearest other inputs. Requires n >= f + 3. Ties go to the lowest index.
Point Krum(std::span<const Point> points, int f);
std::size_t KrumIndex(std::span<const Point> points, int f);

// Bulyan: n - 2f iterated Krum selections, then a per-coordinate mean of the
// n - 4f selected values closest to that coordinate's median. Requires
// n >= 4f + 3.
Point Bulyan(std::span<const Point> points, int f);

}  // namespace decentllms::aggregation
