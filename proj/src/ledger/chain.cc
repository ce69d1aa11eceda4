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

#include "ledger/chain.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.h"
#include "core/serialize.h"
#include "json.hpp"

namespace decentllms::ledger {

namespace fs = std::filesystem;
using nlohmann::json;

ChainVerdict VerifyChain(std::span<const Block> chain,
                         std::span<const PublicKey> evaluator_keys) {
  Digest prev = Digest::Zero();
  const std::size_t quorum = SignatureQuorum(evaluator_keys.size());
  const Digest set = EvaluatorSetDigest(evaluator_keys);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Block& b = chain[i];
    auto fail = [&](std::string why) {
      return ChainVerdict{false, i, std::move(why)};
    };
    if (b.height != i) return fail("height out of sequence");
    if (b.prev_hash != prev) return fail("prev_hash does not link to previous block");
    if (b.ComputeHash() != b.block_hash) return fail("block_hash mismatch");
    if (b.evaluator_set != set) return fail("block is bound to a different evaluator set");
    if (CountValidSignatures(b, evaluator_keys) < quorum) {
      return fail("fewer than " + std::to_string(quorum) + " valid evaluator signatures");
    }
    prev = b.block_hash;
  }
  return {};
}

Chain::Chain(std::vector<PublicKey> evaluator_keys) : keys_(std::move(evaluator_keys)) {
  if (keys_.empty()) throw ConfigError("chain needs at least one evaluator key");
}

Digest Chain::head() const {
  return blocks_.empty() ? Digest::Zero() : blocks_.back().block_hash;
}

const Block& Chain::Append(Block block) {
  if (block.height != next_height()) {
    throw Error(ErrorCode::kRejected, "block height " + std::to_string(block.height) +
                                          " != expected " + std::to_string(next_height()));
  }
  if (block.prev_hash != head()) {
    throw Error(ErrorCode::kRejected, "prev_hash mismatch");
  }
  if (block.ComputeHash() != block.block_hash) {
    throw Error(ErrorCode::kRejected, "block_hash mismatch");
  }
  if (block.evaluator_set != EvaluatorSetDigest(keys_)) {
    throw Error(ErrorCode::kRejected, "block is bound to a different evaluator set");
  }
  const auto valid = CountValidSignatures(block, keys_);
  if (valid < SignatureQuorum(keys_.size())) {
    throw Error(ErrorCode::kRejected,
                "insufficient evaluator signatures: " + std::to_string(valid) + " of " +
                    std::to_string(keys_.size()) + ", need " +
                    std::to_string(SignatureQuorum(keys_.size())));
  }
  blocks_.push_back(std::move(block));
  return blocks_.back();
}

Digest Chain::StoreContent(const std::string& content) {
  Digest d = Hash(content);
  contents_.emplace(d, content);
  return d;
}

namespace {

std::string BlockFileName(std::uint64_t height) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08llu.blk", static_cast<unsigned long long>(height));
  return buf;
}

std::vector<std::uint8_t> ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const fs::path& p, std::span<const std::uint8_t> data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
}

struct Index {
  std::vector<PublicKey> keys;
  std::uint64_t height = 0;
  Digest head;
};

Index ReadIndex(const fs::path& dir) {
  const auto raw = ReadFile(dir / "index.json");
  json j;
  try {
    j = json::parse(raw.begin(), raw.end());
    Index idx;
    for (const auto& k : j.at("evaluator_keys")) {
      auto bytes = FromHex(k.get<std::string>());
      if (bytes.size() != kPublicKeySize) throw InvalidArgument("bad key size");
      PublicKey pk;
      std::copy(bytes.begin(), bytes.end(), pk.begin());
      idx.keys.push_back(pk);
    }
    idx.height = j.at("height").get<std::uint64_t>();
    idx.head = Digest::FromHex(j.at("head").get<std::string>());
    return idx;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad chain index: ") + e.what());
  }
}

Block ReadBlockFile(const fs::path& p) {
  const auto raw = ReadFile(p);
  ByteReader r(raw);
  const auto body = r.Bytes();
  r.ExpectDone();
  return Block::Decode(body);
}

// Canonical index text; verification regenerates it and compares bytes.
std::string IndexText(std::span<const PublicKey> keys, std::span<const Block> blocks) {
  nlohmann::ordered_json index;
  index["format"] = "decentllms-chain/1";
  index["height"] = blocks.size();
  index["head"] = (blocks.empty() ? Digest::Zero() : blocks.back().block_hash).Hex();
  index["evaluator_keys"] = json::array();
  for (const auto& k : keys) index["evaluator_keys"].push_back(ToHex(k));
  index["blocks"] = json::array();
  for (const auto& b : blocks) {
    index["blocks"].push_back({{"height", b.height},
                               {"file", "blocks/" + BlockFileName(b.height)},
                               {"block_hash", b.block_hash.Hex()}});
  }
  return index.dump(2) + "\n";
}

}  // namespace

void Chain::Save(const fs::path& dir) const {
  fs::create_directories(dir / "blocks");
  fs::create_directories(dir / "content");
  for (const auto& b : blocks_) {
    ByteWriter w;
    w.Bytes(b.Encode());
    WriteFile(dir / "blocks" / BlockFileName(b.height), w.bytes());
  }
  for (const auto& [digest, content] : contents_) {
    WriteFile(dir / "content" / (digest.Hex() + ".txt"), ToBytes(content));
  }
  WriteFile(dir / "index.json", ToBytes(IndexText(keys_, blocks_)));
}

Chain Chain::Load(const fs::path& dir) {
  Index idx = ReadIndex(dir);
  Chain chain(idx.keys);
  for (std::uint64_t h = 0; h < idx.height; ++h) {
    chain.Append(ReadBlockFile(dir / "blocks" / BlockFileName(h)));
  }
  if (chain.head() != idx.head) throw Error(ErrorCode::kRejected, "index head mismatch");
  if (fs::exists(dir / "content")) {
    for (const auto& entry : fs::directory_iterator(dir / "content")) {
      const auto raw = ReadFile(entry.path());
      chain.StoreContent(std::string(raw.begin(), raw.end()));
    }
  }
  return chain;
}

ChainVerdict VerifyChainDirectory(const fs::path& dir) {
  Index idx;
  try {
    idx = ReadIndex(dir);
  } catch (const Error& e) {
    return {false, std::nullopt, e.what()};
  }
  std::vector<Block> blocks;
  for (std::uint64_t h = 0; h < idx.height; ++h) {
    try {
      blocks.push_back(ReadBlockFile(dir / "blocks" / BlockFileName(h)));
    } catch (const Error& e) {
      return {false, h, std::string("undecodable block: ") + e.what()};
    }
  }
  auto verdict = VerifyChain(blocks, idx.keys);
  if (!verdict.ok) return verdict;
  const Digest head = blocks.empty() ? Digest::Zero() : blocks.back().block_hash;
  if (head != idx.head) {
    return {false, blocks.empty() ? std::nullopt : std::optional<std::uint64_t>(idx.height - 1),
            "index head does not match last block"};
  }
  const auto index_raw = ReadFile(dir / "index.json");
  if (std::string(index_raw.begin(), index_raw.end()) != IndexText(idx.keys, blocks)) {
    return {false, std::nullopt, "index.json is not the canonical index for these blocks"};
  }
  for (const auto& b : blocks) {
    for (const auto& d : b.answer_digests) {
      if (!d) continue;
      const auto p = dir / "content" / (d->Hex() + ".txt");
      if (!fs::exists(p)) continue;
      if (Hash(ReadFile(p)) != *d) {
        return {false, b.height, "content store entry does not match its digest"};
      }
    }
  }
  return {};
}

}  // namespace decentllms::ledger
