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

// Builds signed chains for ledger tests.

#include <string>
#include <vector>

#include "core/rng.h"
#include "ledger/chain.h"

namespace testgen {

struct SignedChain {
  std::vector<decentllms::KeyPair> keys;
  decentllms::ledger::Chain chain;
};

inline std::vector<decentllms::KeyPair> EvaluatorKeys(std::uint32_t n, std::uint64_t seed) {
  std::vector<decentllms::KeyPair> out;
  for (std::uint32_t j = 0; j < n; ++j) {
    out.push_back(decentllms::KeyPair::FromSeed(
        decentllms::DeriveKeySeed(seed, decentllms::Evaluator(j))));
  }
  return out;
}

inline std::vector<decentllms::PublicKey> PublicKeys(const std::vector<decentllms::KeyPair>& keys) {
  std::vector<decentllms::PublicKey> out;
  for (const auto& k : keys) out.push_back(k.public_key());
  return out;
}

// Next block on `chain`, signed by evaluators [0, signers).
inline decentllms::ledger::Block NextBlock(decentllms::ledger::Chain& chain,
                                           const std::vector<decentllms::KeyPair>& keys,
                                           std::size_t signers, const std::string& answer) {
  using namespace decentllms;
  ledger::Block b;
  b.height = chain.next_height();
  b.prev_hash = chain.head();
  b.evaluator_set = ledger::EvaluatorSetDigest(chain.evaluator_keys());
  b.prompt_id = "task-" + std::to_string(b.height);
  b.answer_digests = {chain.StoreContent(answer), std::nullopt};
  b.matrix_digest = Hash("matrix-" + std::to_string(b.height));
  b.robust_scores = {ScoreVector::FromTotal(70.0).components(), std::nullopt};
  b.selected = 0;
  const auto msg = b.SigningBytes();
  for (std::size_t j = 0; j < signers; ++j) {
    b.signatures.push_back({static_cast<std::uint32_t>(j), keys[j].Sign(msg)});
  }
  b.block_hash = b.ComputeHash();
  return b;
}

inline SignedChain BuildChain(std::size_t blocks, std::uint32_t evaluators, std::uint64_t seed) {
  auto keys = EvaluatorKeys(evaluators, seed);
  decentllms::ledger::Chain chain(PublicKeys(keys));
  for (std::size_t h = 0; h < blocks; ++h) {
    chain.Append(NextBlock(chain, keys, evaluators, "Final answer: " + std::to_string(h)));
  }
  return {std::move(keys), std::move(chain)};
}

}  // namespace testgen
