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

#include "baselines/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.h"

namespace decentllms::baselines {

namespace {

std::uint32_t CeilDiv(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint32_t>((a + b - 1) / b);
}

// 1-based rank of agent `who` among all answers by descending quality; equal
// qualities share the better rank.
std::uint32_t RankOf(const std::vector<double>& q, std::uint32_t who) {
  std::uint32_t better = 0;
  for (double x : q) {
    if (x > q[who]) ++better;
  }
  return better + 1;
}

struct Params {
  Quorum quorum;
  std::uint32_t rounds_per_leader;
  double round_ms;
};

BaselineOutcome Run(const BaselineInput& in, const Params& p) {
  const auto n = static_cast<std::uint32_t>(in.qualities.size());
  if (n == 0) throw ConfigError("baseline needs at least one agent");
  in.schedule.Validate(n);
  for (double q : in.qualities) {
    if (!std::isfinite(q)) throw ConfigError("baseline qualities must be finite");
  }
  if (!std::isfinite(in.base_ms) || in.base_ms < 0.0) {
    throw ConfigError("baseline base latency must be >= 0");
  }

  std::vector<std::uint32_t> honest;
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!in.schedule.IsByzantine(a)) honest.push_back(a);
  }
  const auto needed = QuorumVotes(static_cast<std::uint32_t>(honest.size()), p.quorum);

  // Honest agents sorted best first; ties keep index order.
  std::vector<std::uint32_t> by_quality = honest;
  std::stable_sort(by_quality.begin(), by_quality.end(), [&](auto a, auto b) {
    return in.qualities[a] > in.qualities[b];
  });

  BaselineOutcome out;
  out.latency_ms = in.base_ms;
  for (std::uint32_t leader : in.schedule.order) {
    ++out.leaders_tried;
    if (in.schedule.IsByzantine(leader)) {
      out.rounds_used += p.rounds_per_leader;
      out.latency_ms += p.round_ms * p.rounds_per_leader;
      continue;
    }
    std::uint32_t proposal = leader;
    if (in.policy == ProposalPolicy::kQuorumRank && !honest.empty()) {
      const auto r = QuorumRankSelection(static_cast<std::uint32_t>(honest.size()), p.quorum);
      proposal = by_quality[r - 1];
    }
    const double pq = in.qualities[proposal];
    const auto yes = static_cast<std::uint32_t>(std::count_if(
        honest.begin(), honest.end(), [&](auto a) { return pq >= in.qualities[a]; }));
    // Votes are a function of fixed answers, so repeating a round changes
    // nothing: an honest leader wins in its first round or uses them all.
    if (yes >= needed) {
      out.rounds_used += 1;
      out.latency_ms += p.round_ms;
      out.consensus_reached = true;
      out.selected_agent = proposal;
      out.selected_rank = RankOf(in.qualities, proposal);
      return out;
    }
    out.rounds_used += p.rounds_per_leader;
    out.latency_ms += p.round_ms * p.rounds_per_leader;
  }
  return out;
}

}  // namespace

std::string_view Name(Quorum q) {
  return q == Quorum::kTwoThirds ? "TwoThirds" : "Majority";
}

std::uint32_t QuorumRankSelection(std::uint32_t n_workers, Quorum quorum) {
  if (n_workers == 0) throw InvalidArgument("quorum rank needs n_workers >= 1");
  return CeilDiv(std::uint64_t{n_workers} + 1, quorum == Quorum::kTwoThirds ? 3 : 2);
}

std::uint32_t QuorumVotes(std::uint32_t n_voters, Quorum quorum) {
  return quorum == Quorum::kTwoThirds ? CeilDiv(2ull * n_voters, 3) : CeilDiv(n_voters, 2);
}

LeaderSchedule LeaderSchedule::Sequential(std::uint32_t n, std::uint32_t k) {
  LeaderSchedule s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0u);
  s.byzantine_prefix = k;
  return s;
}

void LeaderSchedule::Validate(std::uint32_t n) const {
  if (order.size() != n) throw ConfigError("leader schedule must list every agent once");
  std::vector<bool> seen(n, false);
  for (auto a : order) {
    if (a >= n || seen[a]) throw ConfigError("leader schedule is not a permutation");
    seen[a] = true;
  }
  if (byzantine_prefix > n) throw ConfigError("byzantine prefix exceeds the schedule");
}

bool LeaderSchedule::IsByzantine(std::uint32_t agent) const {
  const auto end = order.begin() + std::min<std::size_t>(byzantine_prefix, order.size());
  return std::find(order.begin(), end, agent) != end;
}

BaselineOutcome RunFixedLeaderDebate(const BaselineInput& input,
                                     const simnet::LatencyModel& latency) {
  latency.Validate();
  return Run(input, {Quorum::kMajority, kDebateRoundsPerLeader, latency.debate_round_ms});
}

BaselineOutcome RunRotatingLeaderQuality(const BaselineInput& input,
                                         const simnet::LatencyModel& latency) {
  latency.Validate();
  return Run(input, {Quorum::kTwoThirds, 1, latency.quality_round_ms});
}

}  // namespace decentllms::baselines
