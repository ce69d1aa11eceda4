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

#include "simnet/keyring.h"

#include "core/error.h"
#include "core/rng.h"
#include "core/serialize.h"

namespace decentllms::simnet {

Keyring Keyring::Generate(std::uint64_t seed, const GroupConfig& group) {
  Keyring ring;
  for (std::uint32_t i = 0; i < group.n_workers; ++i) {
    ring.keys_.emplace(Worker(i), KeyPair::FromSeed(DeriveKeySeed(seed, Worker(i))));
  }
  for (std::uint32_t j = 0; j < group.n_evaluators; ++j) {
    ring.keys_.emplace(Evaluator(j),
                       KeyPair::FromSeed(DeriveKeySeed(seed, Evaluator(j))));
  }
  return ring;
}

const KeyPair& Keyring::key(const AgentId& id) const {
  auto it = keys_.find(id);
  if (it == keys_.end()) throw InvalidArgument("no key for agent " + id.ToString());
  return it->second;
}

const PublicKey& Keyring::public_key(const AgentId& id) const {
  return key(id).public_key();
}

bool Keyring::VerifyCached(const AgentId& signer,
                           std::span<const std::uint8_t> message,
                           const Signature& sig) const {
  auto it = keys_.find(signer);
  if (it == keys_.end()) return false;
  const auto& pk = it->second.public_key();
  ByteWriter w;
  w.Bytes(pk);
  w.Bytes(sig);
  w.Bytes(message);
  const Digest key = Hash(w.bytes());
  if (auto hit = verified_.find(key); hit != verified_.end()) return hit->second;
  const bool ok = Verify(pk, message, sig);
  verified_.emplace(key, ok);
  return ok;
}

}  // namespace decentllms::simnet
