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

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "core/rng.h"
#include "core/types.h"
#include "experiments/config.h"
#include "experiments/report.h"

namespace decentllms::experiments {

// Column schemas are listed in the README.
Report RunAccuracy(const ScenarioConfig& config);
Report RunLatency(const ScenarioConfig& config);
Report RunSnapshot(const ScenarioConfig& config);
Report RunThreshold(const ScenarioConfig& config);
Report RunExperiment(const ScenarioConfig& config);

// A total in [0, 100] split across the criteria with random weights, each
// component capped at 20; the sum is preserved up to rounding.
ScoreVector RandomSplit(double total, Rng& rng);

// Honest evaluator rows for the threshold sweep, keyed by worker.
using Row = std::map<std::uint32_t, ScoreVector>;
std::vector<Row> UnanimousRows(std::uint32_t honest);
std::vector<Row> SpreadRows(std::uint32_t honest, std::uint64_t seed, std::uint32_t rep);

struct ThresholdStep {
  std::uint32_t colluders = 0;
  std::uint32_t selected = 0;
  bool byzantine_wins = false;
  double byzantine_scalar = 0.0;
  double top_honest_scalar = 0.0;
  bool oracle_byzantine_wins = false;
  double oracle_byzantine_scalar = 0.0;
  double oracle_top_honest_scalar = 0.0;
};

// First colluder count at which the Byzantine worker wins.
std::optional<std::uint32_t> FlipPoint(const std::vector<ThresholdStep>& steps, bool oracle);

}  // namespace decentllms::experiments
