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
#include <string>
#include <vector>

#include "core/crypto.h"
#include "core/types.h"

namespace decentllms::simnet {

struct SimClock {
  std::uint64_t round = 0;
  double wall_time_ms = 0.0;
};

struct Envelope {
  AgentId sender;
  AgentId recipient;
  std::vector<std::uint8_t> payload;
  Signature signature{};
  std::uint64_t send_round = 0;
  Digest payload_digest;
};

struct TranscriptEntry {
  std::uint64_t round = 0;
  AgentId sender;
  AgentId recipient;
  Digest payload_digest;
};

struct PhaseCharge {
  std::string phase;
  double ms = 0.0;
};

// Synchronous lockstep network. Everything sent during round r is delivered
// by StepRound() as round r + 1, in (sender, recipient, payload digest)
// order, so the transcript never depends on send order.
class Network {
 public:
  explicit Network(double round_ms);

  void Send(Envelope envelope);

  // Delivers all pending envelopes and advances the clock by one network
  // round; the round cost is recorded as a "network" charge.
  std::vector<Envelope> StepRound();

  // Time spent outside message exchange (generation, evaluation, ...).
  void Charge(std::string phase, double ms);

  const SimClock& clock() const { return clock_; }
  std::size_t pending() const { return pending_.size(); }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<PhaseCharge>& charges() const { return charges_; }

  double ChargedTotalMs() const;
  // One JSON object per delivered envelope, newline terminated.
  std::string TranscriptNdjson() const;
  Digest TranscriptDigest() const;

 private:
  double round_ms_;
  SimClock clock_;
  std::vector<Envelope> pending_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<PhaseCharge> charges_;
};

}  // namespace decentllms::simnet
