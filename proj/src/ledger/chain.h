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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/crypto.h"
#include "ledger/block.h"

namespace decentllms::ledger {

struct ChainVerdict {
  bool ok = true;
  // Height of the first bad block.
  std::optional<std::uint64_t> fault_height;
  std::string reason;
};

// Checks, block by block: height sequence, prev_hash link (genesis links to
// 32 zero bytes), block_hash, and a majority of valid evaluator signatures.
ChainVerdict VerifyChain(std::span<const Block> chain,
                         std::span<const PublicKey> evaluator_keys);

// Append-only chain with a sidecar store for answer contents.
class Chain {
 public:
  explicit Chain(std::vector<PublicKey> evaluator_keys);

  // Zero digest while empty.
  Digest head() const;
  std::uint64_t next_height() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<PublicKey>& evaluator_keys() const { return keys_; }

  // Validates linkage, hash and signature quorum, then appends. Throws a
  // rejection error otherwise; the chain is unchanged on failure.
  const Block& Append(Block block);

  // Content-addressed answer storage.
  Digest StoreContent(const std::string& content);
  const std::map<Digest, std::string>& contents() const { return contents_; }

  // Directory layout: index.json, blocks/NNNNNNNN.blk (u32 length prefix +
  // canonical block bytes), content/<digest>.txt.
  void Save(const std::filesystem::path& dir) const;
  static Chain Load(const std::filesystem::path& dir);

 private:
  std::vector<PublicKey> keys_;
  std::vector<Block> blocks_;
  std::map<Digest, std::string> contents_;
};

// Loads and verifies a saved chain; decode failures and index mismatches are
// reported as faults instead of thrown.
ChainVerdict VerifyChainDirectory(const std::filesystem::path& dir);

}  // namespace decentllms::ledger
