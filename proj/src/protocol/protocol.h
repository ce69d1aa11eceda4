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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "adversary/strategy.h"
#include "agents/backend.h"
#include "aggregation/geometric_median.h"
#include "ledger/chain.h"
#include "protocol/types.h"
#include "simnet/brb.h"
#include "simnet/keyring.h"
#include "simnet/latency.h"
#include "simnet/network.h"

namespace decentllms::protocol {

// Everything a round needs besides the prompt.
struct Scenario {
  GroupConfig group;
  adversary::AdversaryStrategy adversary;
  // One backend per worker / evaluator. Byzantine agents still own a backend:
  // corrupting workers start from an honest generation, inverting evaluators
  // from an honest score.
  std::vector<std::shared_ptr<agents::WorkerBackend>> workers;
  std::vector<std::shared_ptr<agents::EvaluatorBackend>> evaluators;
  simnet::LatencyModel latency;
  // Answers generated later than this are dropped; must cover every honest
  // worker's latency.
  double generation_timeout_ms = 0.0;
  aggregation::WeiszfeldParams gm;
  std::uint64_t seed = 0;

  // Throws a config error if sizes, strategies, or parameters are
  // inconsistent. Honest-majority violations are allowed here.
  void Validate() const;

  bool IsByzantine(const AgentId& id) const;
  std::vector<AgentId> EvaluatorIds() const;
  std::vector<std::uint32_t> HonestEvaluators() const;
};

struct GenerationPhase {
  // What each worker produced (before delivery), for reporting.
  std::vector<std::optional<Answer>> produced;
  // Per honest evaluator.
  std::map<std::uint32_t, AnswerView> views;
  std::set<AgentId> faulty;
  double phase_ms = 0.0;

  const AnswerView& view_of(std::uint32_t evaluator) const { return views.at(evaluator); }
  bool Agreement() const;
};

struct EvaluationPhase {
  // Per honest evaluator, the matrix assembled from reliably broadcast rows.
  std::map<std::uint32_t, EvaluationMatrix> matrices;
  std::set<AgentId> faulty;
  double evaluation_ms = 0.0;
  double consensus_ms = 0.0;
  std::uint32_t exchanges = 0;

  bool Agreement() const;
};

// Answer generation plus reliable broadcast of the answers to all evaluators.
// Throws a no-answer error if no answer reaches the honest evaluators.
GenerationPhase PhaseGenerate(const Prompt& prompt, const Scenario& scenario,
                              const simnet::Keyring& keys, simnet::Network& net);

// Every evaluator scores the answers it holds and reliably broadcasts its
// row. Backend failures leave the row out. Throws a precondition error when
// no answers were delivered.
EvaluationPhase PhaseEvaluate(const Prompt& prompt, const GenerationPhase& generation,
                              const Scenario& scenario, const simnet::Keyring& keys,
                              simnet::Network& net);

// Robust score per answered worker (geometric median of the present rows),
// ranking by scalar descending, ties by TieBreak against ledger_head.
Decision PhaseDecide(const EvaluationMatrix& matrix, const AnswerView& answers,
                     const Digest& ledger_head,
                     const aggregation::WeiszfeldParams& params = {});

struct TieCandidate {
  std::uint32_t worker;
  std::string content;
};

// hash(canonical(content) || ledger_head); larger digests rank first.
Digest TieBreakDigest(std::string_view content, const Digest& ledger_head);

// Worker whose digest is largest; identical digests fall back to the lower
// worker index. Requires at least one candidate.
std::uint32_t TieBreak(std::span<const TieCandidate> tied, const Digest& ledger_head);

// The full protocol: three phases, user reply, ledger append.
ConsensusRound RunRound(const Prompt& prompt, const Scenario& scenario,
                        const simnet::Keyring& keys, simnet::Network& net,
                        ledger::Chain& chain);

}  // namespace decentllms::protocol
