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
#include <string_view>
#include <vector>

#include "simnet/latency.h"

namespace decentllms::baselines {

enum class Quorum { kTwoThirds, kMajority };

std::string_view Name(Quorum q);

// Rank (1 = best) of the answer a leader-based protocol finalizes when the
// leader proposes the lowest-ranked answer still able to gather the quorum:
// TwoThirds -> ceil((n+1)/3), Majority -> ceil((n+1)/2).
std::uint32_t QuorumRankSelection(std::uint32_t n_workers, Quorum quorum);

// Yes-votes needed among n voters: ceil(2n/3) or ceil(n/2).
std::uint32_t QuorumVotes(std::uint32_t n_voters, Quorum quorum);

struct LeaderSchedule {
  // Permutation of agent indices; leaders are tried in this order.
  std::vector<std::uint32_t> order;
  // The first k leaders of `order` are Byzantine.
  std::uint32_t byzantine_prefix = 0;

  // Identity order.
  static LeaderSchedule Sequential(std::uint32_t n, std::uint32_t k);
  // Throws a config error unless order is a permutation of [0, n) and k <= n.
  void Validate(std::uint32_t n) const;
  bool IsByzantine(std::uint32_t agent) const;
};

// What an honest leader puts forward.
enum class ProposalPolicy {
  // Its own answer.
  kOwnAnswer,
  // The honest answer at the quorum rank, the lowest one a quorum accepts.
  kQuorumRank,
};

struct BaselineOutcome {
  bool consensus_reached = false;
  std::uint32_t rounds_used = 0;
  std::uint32_t leaders_tried = 0;
  // Rank of the finalized answer among all agents' answers; 0 if none.
  std::uint32_t selected_rank = 0;
  std::int64_t selected_agent = -1;
  double latency_ms = 0.0;
};

struct BaselineInput {
  // Answer quality per agent; agents are both answer holders and voters.
  std::vector<double> qualities;
  LeaderSchedule schedule;
  ProposalPolicy policy = ProposalPolicy::kQuorumRank;
  // Generation plus evaluation time, paid once before the first round.
  double base_ms = 0.0;
};

// One leader retries majority-vote debate rounds, up to three, before it is
// replaced. Byzantine leaders burn all three. Each round costs
// debate_round_ms.
BaselineOutcome RunFixedLeaderDebate(const BaselineInput& input,
                                     const simnet::LatencyModel& latency);

// One propose/vote round per leader under a two-thirds quorum; any failed
// round rotates to the next leader. Each round costs quality_round_ms.
BaselineOutcome RunRotatingLeaderQuality(const BaselineInput& input,
                                         const simnet::LatencyModel& latency);

inline constexpr std::uint32_t kDebateRoundsPerLeader = 3;

}  // namespace decentllms::baselines
