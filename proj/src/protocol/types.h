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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agents/profiles.h"
#include "aggregation/geometric_median.h"
#include "core/crypto.h"
#include "core/types.h"

namespace decentllms::protocol {

using Bytes = std::vector<std::uint8_t>;

struct Answer {
  AgentId worker;
  std::string prompt_id;
  std::string content;
  Signature signature{};
  // Simulation ground truth; travels with the payload so mock evaluators can
  // score it, and is never part of what is signed or hashed for tie-breaks.
  std::optional<agents::LatentTruth> latent;

  // Canonical (prompt_id, content), the bytes the worker signs.
  Bytes SigningBytes() const;
  Bytes Encode() const;
  static Answer Decode(std::span<const std::uint8_t> bytes);

  bool operator==(const Answer&) const = default;
};

// Delivered answers by worker index; a missing worker is a failed delivery.
using AnswerView = std::map<std::uint32_t, Answer>;

// (worker i, evaluator j) -> A_i^j. Absent entries come from failed
// deliveries and are never imputed.
class EvaluationMatrix {
 public:
  // Throws if (worker, evaluator) is already present.
  void Set(std::uint32_t worker, std::uint32_t evaluator, const ScoreVector& v);
  std::optional<ScoreVector> Get(std::uint32_t worker, std::uint32_t evaluator) const;
  // Present vectors for one worker, in evaluator order.
  std::vector<aggregation::Point> Column(std::uint32_t worker) const;
  std::set<std::uint32_t> workers() const;
  std::set<std::uint32_t> evaluators() const;
  std::size_t size() const { return entries_.size(); }
  // Removes every entry of one evaluator.
  void DropEvaluator(std::uint32_t evaluator);

  Bytes Encode() const;
  Digest digest() const;

  const std::map<std::pair<std::uint32_t, std::uint32_t>, ScoreVector>& entries() const {
    return entries_;
  }
  bool operator==(const EvaluationMatrix&) const = default;

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, ScoreVector> entries_;
};

// What one evaluator concludes in the score-consensus phase.
struct Decision {
  std::map<std::uint32_t, aggregation::RobustScore> robust_scores;
  // Scalar descending, ties resolved by tie-break.
  std::vector<std::uint32_t> ranking;
  std::uint32_t selected = 0;

  bool operator==(const Decision& o) const;
};

struct PhaseTimes {
  double generation_ms = 0.0;
  double evaluation_ms = 0.0;
  double consensus_ms = 0.0;

  double total() const { return generation_ms + evaluation_ms + consensus_ms; }
};

struct ConsensusRound {
  Prompt prompt;
  Digest ledger_head_before;
  // Per worker, in index order; nullopt for failed deliveries.
  std::vector<std::optional<Answer>> answers;
  EvaluationMatrix matrix;
  std::map<std::uint32_t, aggregation::RobustScore> robust_scores;
  std::vector<std::uint32_t> ranking;
  std::uint32_t selected = 0;
  PhaseTimes phase_times;
  double latency_ms = 0.0;

  // Senders convicted of equivocation by BRB.
  std::set<AgentId> faulty;
  // Evaluator-to-evaluator exchanges in score consensus; one BRB batch.
  std::uint32_t score_consensus_rounds = 0;
  // Per honest evaluator.
  std::map<std::uint32_t, Decision> decisions;
  bool honest_agreement = false;

  std::size_t user_matching_replies = 0;
  std::optional<std::uint32_t> user_accepted_worker;

  std::optional<Digest> block_hash;
  std::string ledger_error;

  const Answer& selected_answer() const { return *answers.at(selected); }
  // Stable field order; doubles printed round-trip exact.
  std::string ToJson() const;
};

}  // namespace decentllms::protocol
