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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/crypto.h"
#include "core/types.h"

namespace decentllms {

// Canonical byte encoding used for everything that is signed or hashed.
// Integers are big-endian, reals are IEEE-754 binary64 big-endian, and
// variable-length fields carry a u32 big-endian length prefix. See
// docs/serialization.md.
class ByteWriter {
 public:
  void U8(std::uint8_t v);
  void U32(std::uint32_t v);
  void U64(std::uint64_t v);
  void F64(double v);
  void Bool(bool v) { U8(v ? 1 : 0); }
  void Bytes(std::span<const std::uint8_t> v);
  void String(std::string_view v);
  void Fixed(const Digest& d);
  void Agent(const AgentId& id);
  void Scores(const ScoreVector& s);

  const std::vector<std::uint8_t>& bytes() const& { return buf_; }
  std::vector<std::uint8_t> bytes() && { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

// Strict reader: any overrun or malformed field throws a parse error.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t U8();
  std::uint32_t U32();
  std::uint64_t U64();
  double F64();
  bool Bool();
  std::vector<std::uint8_t> Bytes();
  std::string String();
  Digest Fixed();
  AgentId Agent();
  ScoreVector Scores();

  bool done() const { return pos_ == data_.size(); }
  // Throws unless every byte was consumed.
  void ExpectDone() const;

 private:
  std::span<const std::uint8_t> Take(std::size_t n);

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> ToBytes(std::string_view s);

}  // namespace decentllms
