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
#include <span>

#include "core/crypto.h"
#include "core/types.h"

namespace decentllms::simnet {

// Per-scenario keys for every agent, derived from the scenario seed.
class Keyring {
 public:
  static Keyring Generate(std::uint64_t seed, const GroupConfig& group);

  const KeyPair& key(const AgentId& id) const;
  const PublicKey& public_key(const AgentId& id) const;
  bool contains(const AgentId& id) const { return keys_.count(id) != 0; }

  // Verify() with memoization; identical (key, message, signature) triples
  // recur across echoes.
  bool VerifyCached(const AgentId& signer, std::span<const std::uint8_t> message,
                    const Signature& sig) const;

 private:
  std::map<AgentId, KeyPair> keys_;
  mutable std::map<Digest, bool> verified_;
};

}  // namespace decentllms::simnet
