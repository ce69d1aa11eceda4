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

#include <array>
#include <cstdint>

namespace decentllms::experiments::reference_snapshot {

inline constexpr std::uint32_t kWorkers = 10;
inline constexpr std::uint32_t kEvaluators = 9;
inline constexpr std::uint32_t kHonestEvaluators = 8;
inline constexpr std::uint32_t kByzantineWorker = 9;

// Reference per-evaluator totals (0..100), evaluator-major. Row 8 is the
// colluding evaluator.
inline constexpr std::array<std::array<double, kWorkers>, kEvaluators> kTotals = {{
    {63, 95, 92, 75, 46, 50, 92, 96, 95, 6},
    {21, 98, 99, 55, 45, 41, 89, 99, 100, 22},
    {33, 100, 75, 45, 40, 35, 99, 100, 85, 0},
    {60, 80, 100, 80, 50, 94, 82, 82, 82, 38},
    {52, 83, 66, 57, 44, 84, 84, 83, 66, 35},
    {49, 53, 60, 19, 42, 27, 66, 66, 66, 7},
    {31, 52, 79, 49, 27, 17, 79, 84, 49, 34},
    {75, 100, 80, 100, 50, 64, 100, 100, 100, 39},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 100},
}};

inline constexpr std::array<double, kWorkers> kRobustScores = {
    45.1, 83.8, 80.4, 55.6, 43.5, 42.0, 84.5, 88.2, 83.0, 28.5};

inline constexpr std::array<bool, kWorkers> kCorrect = {
    false, true, true, true, false, false, true, true, false, false};

inline constexpr std::array<std::uint32_t, kWorkers> kRanking = {7, 6, 1, 8, 2, 3, 0, 4, 5, 9};

// Mean honest total per worker.
inline double HonestMean(std::uint32_t worker) {
  double s = 0.0;
  for (std::uint32_t j = 0; j < kHonestEvaluators; ++j) s += kTotals[j][worker];
  return s / kHonestEvaluators;
}

}  // namespace decentllms::experiments::reference_snapshot
