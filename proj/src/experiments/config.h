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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adversary/strategy.h"
#include "agents/profiles.h"
#include "aggregation/geometric_median.h"
#include "core/types.h"
#include "protocol/protocol.h"
#include "simnet/latency.h"

namespace decentllms::experiments {

enum class ExperimentKind { kAccuracy, kLatency, kSnapshot, kThreshold };

std::string_view Name(ExperimentKind k);
ExperimentKind ParseExperimentKind(std::string_view name);

enum class SnapshotMode { kReference, kSimulated };
enum class ThresholdVariant { kUnanimous, kSpread, kBoth };

struct LatencySweep {
  std::uint32_t max_f = 5;
  adversary::EvaluatorStrategy strategy = adversary::EvaluatorStrategy::kCollude;
};

struct ThresholdSweep {
  std::uint32_t honest_evaluators = 8;
  std::uint32_t max_colluders = 7;
  ThresholdVariant variant = ThresholdVariant::kBoth;
};

struct ScenarioConfig {
  ExperimentKind kind = ExperimentKind::kAccuracy;
  GroupConfig group;
  adversary::AdversaryStrategy adversary;
  // One per worker / evaluator.
  std::vector<agents::WorkerProfile> workers;
  std::vector<agents::EvaluatorProfile> evaluators;
  simnet::LatencyModel latency;
  aggregation::WeiszfeldParams gm;
  std::uint64_t seed = 1;
  std::uint32_t repetitions = 1;

  LatencySweep latency_sweep;
  ThresholdSweep threshold;
  SnapshotMode snapshot = SnapshotMode::kReference;

  // Shipped defaults for each experiment.
  static ScenarioConfig Default(ExperimentKind kind);
  // Starts from Default(kind of "scenario") and overrides the keys present.
  // Unknown keys are a config error.
  static ScenarioConfig FromJson(std::string_view json);
  static ScenarioConfig Load(const std::filesystem::path& path);
  std::string ToJson() const;

  void Validate() const;
  // latency.generation_timeout_ms, or the slowest possible profile latency
  // when that is 0.
  double GenerationTimeoutMs() const;
};

// Mock-backed protocol scenario for `group` / `adversary`; worker and
// evaluator profiles are taken by index (the config's lists must be long
// enough).
protocol::Scenario BuildScenario(const ScenarioConfig& config, const GroupConfig& group,
                                 const adversary::AdversaryStrategy& adversary);

}  // namespace decentllms::experiments
