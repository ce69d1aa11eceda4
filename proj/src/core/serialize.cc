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

#include "core/serialize.h"

#include <bit>
#include <cstring>
#include <limits>

#include "core/error.h"

namespace decentllms {

void ByteWriter::U8(std::uint8_t v) { buf_.push_back(v); }

void ByteWriter::U32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::U64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::Bytes(std::span<const std::uint8_t> v) {
  if (v.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("field too large for u32 length prefix");
  }
  U32(static_cast<std::uint32_t>(v.size()));
  buf_.insert(buf_.end(), v.begin(), v.end());
}

void ByteWriter::String(std::string_view v) {
  Bytes({reinterpret_cast<const std::uint8_t*>(v.data()), v.size()});
}

void ByteWriter::Fixed(const Digest& d) {
  buf_.insert(buf_.end(), d.bytes.begin(), d.bytes.end());
}

void ByteWriter::Agent(const AgentId& id) {
  U8(static_cast<std::uint8_t>(id.role));
  U32(id.index);
}

void ByteWriter::Scores(const ScoreVector& s) {
  for (double c : s.components()) F64(c);
}

std::span<const std::uint8_t> ByteReader::Take(std::size_t n) {
  if (data_.size() - pos_ < n) {
    throw Error(ErrorCode::kParse, "truncated canonical encoding");
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::U8() { return Take(1)[0]; }

std::uint32_t ByteReader::U32() {
  std::uint32_t v = 0;
  for (auto b : Take(4)) v = (v << 8) | b;
  return v;
}

std::uint64_t ByteReader::U64() {
  std::uint64_t v = 0;
  for (auto b : Take(8)) v = (v << 8) | b;
  return v;
}

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

bool ByteReader::Bool() {
  auto v = U8();
  if (v > 1) throw Error(ErrorCode::kParse, "bad bool byte");
  return v == 1;
}

std::vector<std::uint8_t> ByteReader::Bytes() {
  auto n = U32();
  auto s = Take(n);
  return {s.begin(), s.end()};
}

std::string ByteReader::String() {
  auto n = U32();
  auto s = Take(n);
  return {reinterpret_cast<const char*>(s.data()), s.size()};
}

Digest ByteReader::Fixed() {
  Digest d;
  auto s = Take(d.bytes.size());
  std::memcpy(d.bytes.data(), s.data(), s.size());
  return d;
}

AgentId ByteReader::Agent() {
  auto role = U8();
  if (role > 1) throw Error(ErrorCode::kParse, "bad role byte");
  return {static_cast<Role>(role), U32()};
}

ScoreVector ByteReader::Scores() {
  std::array<double, kNumCriteria> c;
  for (auto& v : c) v = F64();
  try {
    return ScoreVector(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

void ByteReader::ExpectDone() const {
  if (!done()) throw Error(ErrorCode::kParse, "trailing bytes in encoding");
}

std::vector<std::uint8_t> ToBytes(std::string_view s) {
  return {s.begin(), s.end()};
}

}  // namespace decentllms
