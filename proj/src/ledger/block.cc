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

#include "ledger/block.h"

#include <set>

#include "core/error.h"
#include "core/serialize.h"

namespace decentllms::ledger {
namespace {

void WriteBody(ByteWriter& w, const Block& b) {
  w.U64(b.height);
  w.Fixed(b.prev_hash);
  w.Fixed(b.evaluator_set);
  w.String(b.prompt_id);
  w.U32(static_cast<std::uint32_t>(b.answer_digests.size()));
  for (const auto& d : b.answer_digests) {
    w.Bool(d.has_value());
    if (d) w.Fixed(*d);
  }
  w.Fixed(b.matrix_digest);
  w.U32(static_cast<std::uint32_t>(b.robust_scores.size()));
  for (const auto& s : b.robust_scores) {
    w.Bool(s.has_value());
    if (s) {
      for (double v : *s) w.F64(v);
    }
  }
  w.U32(b.selected);
}

void WriteSignatures(ByteWriter& w, const Block& b) {
  w.U32(static_cast<std::uint32_t>(b.signatures.size()));
  for (const auto& s : b.signatures) {
    w.U32(s.evaluator);
    w.Bytes(s.signature);
  }
}

}  // namespace

std::vector<std::uint8_t> Block::SigningBytes() const {
  ByteWriter w;
  w.String("decentllms/block");
  WriteBody(w, *this);
  return std::move(w).bytes();
}

Digest Block::SigningDigest() const { return Hash(SigningBytes()); }

Digest Block::ComputeHash() const {
  ByteWriter w;
  WriteBody(w, *this);
  WriteSignatures(w, *this);
  return Hash(w.bytes());
}

std::vector<std::uint8_t> Block::Encode() const {
  ByteWriter w;
  WriteBody(w, *this);
  WriteSignatures(w, *this);
  w.Fixed(block_hash);
  return std::move(w).bytes();
}

Block Block::Decode(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Block b;
  b.height = r.U64();
  b.prev_hash = r.Fixed();
  b.evaluator_set = r.Fixed();
  b.prompt_id = r.String();
  const auto n_answers = r.U32();
  if (n_answers > bytes.size()) throw Error(ErrorCode::kParse, "bad answer count");
  for (std::uint32_t i = 0; i < n_answers; ++i) {
    if (r.Bool()) {
      b.answer_digests.emplace_back(r.Fixed());
    } else {
      b.answer_digests.emplace_back(std::nullopt);
    }
  }
  b.matrix_digest = r.Fixed();
  const auto n_scores = r.U32();
  if (n_scores > bytes.size()) throw Error(ErrorCode::kParse, "bad score count");
  for (std::uint32_t i = 0; i < n_scores; ++i) {
    if (r.Bool()) {
      std::array<double, kNumCriteria> v;
      for (auto& x : v) x = r.F64();
      b.robust_scores.emplace_back(v);
    } else {
      b.robust_scores.emplace_back(std::nullopt);
    }
  }
  b.selected = r.U32();
  const auto n_sigs = r.U32();
  if (n_sigs > bytes.size()) throw Error(ErrorCode::kParse, "bad signature count");
  for (std::uint32_t i = 0; i < n_sigs; ++i) {
    EvaluatorSignature s;
    s.evaluator = r.U32();
    auto raw = r.Bytes();
    if (raw.size() != kSignatureSize) throw Error(ErrorCode::kParse, "bad signature size");
    std::copy(raw.begin(), raw.end(), s.signature.begin());
    b.signatures.push_back(s);
  }
  b.block_hash = r.Fixed();
  r.ExpectDone();
  return b;
}

Digest EvaluatorSetDigest(std::span<const PublicKey> evaluator_keys) {
  ByteWriter w;
  w.String("decentllms/evaluator-set");
  w.U32(static_cast<std::uint32_t>(evaluator_keys.size()));
  for (const auto& k : evaluator_keys) w.Bytes(k);
  return Hash(w.bytes());
}

std::size_t SignatureQuorum(std::size_t n_evaluators) { return n_evaluators / 2 + 1; }

std::size_t CountValidSignatures(const Block& block,
                                 std::span<const PublicKey> evaluator_keys) {
  const auto msg = block.SigningBytes();
  std::set<std::uint32_t> signers;
  for (const auto& s : block.signatures) {
    if (s.evaluator >= evaluator_keys.size() || signers.count(s.evaluator)) continue;
    if (Verify(evaluator_keys[s.evaluator], msg, s.signature)) signers.insert(s.evaluator);
  }
  return signers.size();
}

}  // namespace decentllms::ledger
