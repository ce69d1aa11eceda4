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

namespace decentllms::simnet {

// Phase-level cost model, in simulated milliseconds. Defaults put a 9x9
// all-honest DecentLLMs round near 221 s end to end.
struct LatencyModel {
  // Default generation latency for workers without their own profile; the
  // sampled latency is mean + jitter * U(-1, 1).
  double generation_mean_ms = 131'600.0;
  double generation_jitter_ms = 8'000.0;
  // 0 means "derive": the largest mean + jitter over the worker profiles.
  double generation_timeout_ms = 0.0;
  // Cost for one evaluator to score one answer; evaluators run in parallel,
  // answers within one evaluator run back to back.
  double evaluation_ms = 9'000.0;
  double network_round_ms = 500.0;
  // One debate round of the fixed-leader baseline.
  double debate_round_ms = 40'000.0;
  // One propose/vote round of the rotating-leader baseline.
  double quality_round_ms = 25'000.0;

  // Throws a config error for negative or non-finite fields.
  void Validate() const;
};

}  // namespace decentllms::simnet
