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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/rng.h"
#include "core/types.h"

namespace decentllms::adversary {

enum class WorkerStrategy { kAdInjection, kNumericCorruption, kSilence, kEquivocate };
enum class EvaluatorStrategy { kCollude, kInvert, kSilence, kEquivocate };

// Names are the config/CLI spelling, e.g. "AdInjection".
std::string_view Name(WorkerStrategy s);
std::string_view Name(EvaluatorStrategy s);
WorkerStrategy ParseWorkerStrategy(std::string_view name);
EvaluatorStrategy ParseEvaluatorStrategy(std::string_view name);

// Byzantine assignments. Byzantine agents take the highest indices of their
// group, in order: worker_strategies[0] is worker n_w - f_w, and so on.
struct AdversaryStrategy {
  std::vector<WorkerStrategy> worker_strategies;
  std::vector<EvaluatorStrategy> evaluator_strategies;
  // Byzantine workers known to colluding evaluators (worker indices).
  std::set<std::uint32_t> collusion_roster;

  // Strategy counts must equal (f_w, f_e); roster entries must be workers.
  void Validate(const GroupConfig& group) const;

  std::optional<WorkerStrategy> ForWorker(const GroupConfig& group, std::uint32_t i) const;
  std::optional<EvaluatorStrategy> ForEvaluator(const GroupConfig& group,
                                                std::uint32_t j) const;
};

// Appended verbatim by the AdInjection attack.
inline constexpr std::string_view kAdvertisement =
    "Sponsored: upgrade your answers with MegaBoost Pro at megaboost.example "
    "- 50% off today only!";

// Quality the latent model assigns to an attacked answer.
inline constexpr double kAdInjectionQualityPenalty = 45.0;
inline constexpr double kNumericCorruptionQualityPenalty = 35.0;

// AdInjection appends kAdvertisement (alone for empty input).
// NumericCorruption replaces every maximal digit run n with n + d, where d is
// drawn uniformly from {-9..-1, 1..9} and flipped positive when n + d < 0.
// Other strategies are rejected.
std::string CorruptAnswer(std::string_view content, WorkerStrategy strategy, Rng& rng);

// Full marks for roster members, zeros for everyone else.
ScoreVector CollusiveScore(std::uint32_t worker, const std::set<std::uint32_t>& roster);
std::map<std::uint32_t, ScoreVector> CollusiveScores(std::span<const std::uint32_t> workers,
                                                     const std::set<std::uint32_t>& roster);

// 20 - x per criterion.
ScoreVector InvertScore(const ScoreVector& honest);

// Recipients in `first` receive p, every other recipient receives q.
template <typename Payload>
std::map<AgentId, Payload> Equivocate(const Payload& p, const Payload& q,
                                      std::span<const AgentId> recipients,
                                      const std::set<AgentId>& first) {
  std::map<AgentId, Payload> out;
  for (const auto& r : recipients) out.emplace(r, first.count(r) ? p : q);
  return out;
}

// The lower half of the recipients (by index order); the default fork split.
std::set<AgentId> HalfPartition(std::span<const AgentId> recipients);

}  // namespace decentllms::adversary
