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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/crypto.h"
#include "core/types.h"

namespace decentllms::ledger {

struct EvaluatorSignature {
  std::uint32_t evaluator = 0;
  Signature signature{};

  bool operator==(const EvaluatorSignature&) const = default;
};

// Audit record of one consensus round. Answer contents live off-block in the
// content store, referenced by digest.
struct Block {
  std::uint64_t height = 0;
  Digest prev_hash;
  // EvaluatorSetDigest() of the keys the block is signed under.
  Digest evaluator_set;
  std::string prompt_id;
  // Per worker; nullopt for workers whose answer was not delivered.
  std::vector<std::optional<Digest>> answer_digests;
  Digest matrix_digest;
  std::vector<std::optional<std::array<double, kNumCriteria>>> robust_scores;
  std::uint32_t selected = 0;
  std::vector<EvaluatorSignature> signatures;
  Digest block_hash;

  // What evaluators sign: every field except signatures and block_hash.
  std::vector<std::uint8_t> SigningBytes() const;
  Digest SigningDigest() const;
  // Hash over every field except block_hash.
  Digest ComputeHash() const;

  std::vector<std::uint8_t> Encode() const;
  // Strict; throws a parse error on malformed or trailing bytes.
  static Block Decode(std::span<const std::uint8_t> bytes);

  bool operator==(const Block&) const = default;
};

// Hash over the evaluator public keys in index order.
Digest EvaluatorSetDigest(std::span<const PublicKey> evaluator_keys);

// floor(n / 2) + 1.
std::size_t SignatureQuorum(std::size_t n_evaluators);

// Distinct evaluators with a valid signature over the block's signing digest.
std::size_t CountValidSignatures(const Block& block,
                                 std::span<const PublicKey> evaluator_keys);

}  // namespace decentllms::ledger
