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

#include "simnet/network.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.h"
#include "simnet/latency.h"

namespace decentllms::simnet {

void LatencyModel::Validate() const {
  for (double v : {generation_mean_ms, generation_jitter_ms,
                   generation_timeout_ms, evaluation_ms, network_round_ms,
                   debate_round_ms, quality_round_ms}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("latency model fields must be finite and >= 0");
    }
  }
}

Network::Network(double round_ms) : round_ms_(round_ms) {
  if (!std::isfinite(round_ms) || round_ms < 0.0) {
    throw ConfigError("network round cost must be >= 0");
  }
}

void Network::Send(Envelope envelope) {
  envelope.send_round = clock_.round;
  envelope.payload_digest = Hash(envelope.payload);
  pending_.push_back(std::move(envelope));
}

std::vector<Envelope> Network::StepRound() {
  std::vector<Envelope> delivered;
  delivered.swap(pending_);
  std::sort(delivered.begin(), delivered.end(),
            [](const Envelope& a, const Envelope& b) {
              if (a.sender != b.sender) return a.sender < b.sender;
              if (a.recipient != b.recipient) return a.recipient < b.recipient;
              return a.payload_digest < b.payload_digest;
            });
  Charge("network", round_ms_);
  ++clock_.round;
  for (const auto& e : delivered) {
    transcript_.push_back({clock_.round, e.sender, e.recipient, e.payload_digest});
  }
  return delivered;
}

void Network::Charge(std::string phase, double ms) {
  if (!std::isfinite(ms) || ms < 0.0) {
    throw InvalidArgument("phase charge must be >= 0");
  }
  clock_.wall_time_ms += ms;
  charges_.push_back({std::move(phase), ms});
}

double Network::ChargedTotalMs() const {
  return std::accumulate(charges_.begin(), charges_.end(), 0.0,
                         [](double s, const PhaseCharge& c) { return s + c.ms; });
}

std::string Network::TranscriptNdjson() const {
  std::string out;
  for (const auto& t : transcript_) {
    out += "{\"round\":" + std::to_string(t.round) + ",\"sender\":\"" +
           t.sender.ToString() + "\",\"recipient\":\"" + t.recipient.ToString() +
           "\",\"payload_digest\":\"" + t.payload_digest.Hex() + "\"}\n";
  }
  return out;
}

Digest Network::TranscriptDigest() const { return Hash(TranscriptNdjson()); }

}  // namespace decentllms::simnet
