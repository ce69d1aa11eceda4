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

#include <optional>
#include <string>

#include "core/rng.h"
#include "core/types.h"

namespace decentllms::agents {

// An answer is correct when its latent quality reaches this value.
inline constexpr double kCorrectnessThreshold = 60.0;

struct WorkerProfile {
  double skill = 0.5;  // [0, 1]
  // Standard deviation of the latent quality around 100 * skill.
  double quality_sd = 10.0;
  double latency_mean_ms = 131'600.0;
  double latency_jitter_ms = 8'000.0;

  void Validate() const;
};

struct EvaluatorProfile {
  double noise_sd = 0.0;  // per criterion
  double bias = 0.0;      // per criterion, before clamping

  void Validate() const;
};

// Simulation-only ground truth attached to mock answers.
struct LatentTruth {
  double true_quality = 0.0;  // [0, 100]
  bool is_correct = false;

  static LatentTruth FromQuality(double q);
  bool operator==(const LatentTruth&) const = default;
};

}  // namespace decentllms::agents
