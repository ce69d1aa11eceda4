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

#include "core/types.h"
#include "simnet/keyring.h"
#include "simnet/network.h"

namespace decentllms::simnet {

using Bytes = std::vector<std::uint8_t>;

// One sender's broadcast. An honest sender maps every recipient to the same
// payload; a Byzantine one may map recipients to different payloads or omit
// them.
struct BrbInstance {
  AgentId sender;
  std::map<AgentId, Bytes> outgoing;

  static BrbInstance Honest(const AgentId& sender,
                            std::span<const AgentId> recipients, const Bytes& payload);
};

enum class EchoBehavior { kRelay, kWithhold };

struct BrbGroup {
  // The recipient group; also the echo group. Sorted, no duplicates.
  std::vector<AgentId> members;
  // Members whose delivery results are not reported (Byzantine).
  std::set<AgentId> byzantine;
  // Members that withhold echoes. Absent means relay.
  std::map<AgentId, EchoBehavior> echo;

  std::size_t Quorum() const { return members.size() / 2 + 1; }
};

struct BrbDelivery {
  // nullopt is the common failure marker for this sender.
  std::optional<Bytes> payload;
  // Set when two validly signed conflicting payloads were observed; the pair
  // is a transferable proof of equivocation.
  bool sender_faulty = false;

  bool operator==(const BrbDelivery&) const = default;
};

struct BrbOutcome {
  // honest recipient -> sender -> delivery
  std::map<AgentId, std::map<AgentId, BrbDelivery>> deliveries;
  std::set<AgentId> faulty_senders;
  std::uint64_t network_rounds = 0;

  // True iff every honest recipient holds the same delivery for every sender.
  bool Agreement() const;
  // The common view; throws if Agreement() is false.
  const std::map<AgentId, BrbDelivery>& CommonView() const;
};

// Signed echo broadcast, two network rounds for a whole batch of instances:
//   1. each sender signs (sender, tag, payload) and sends it to recipients;
//   2. every relaying member forwards each validly signed copy it received to
//      all other members.
// A member delivers a payload when it saw exactly one validly signed payload
// for the sender and at least a majority of members vouched for it (its own
// direct receipt plus distinct echoers). Two distinct signed payloads mark the
// sender faulty and deliver the failure marker.
BrbOutcome BroadcastReliable(Network& net, const Keyring& keys,
                             std::span<const BrbInstance> instances,
                             const BrbGroup& group, const std::string& tag);

}  // namespace decentllms::simnet
