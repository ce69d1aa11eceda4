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

#include "core/rng.h"

#include "core/serialize.h"

namespace decentllms {
namespace {

std::uint64_t First8(const Digest& d) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d.bytes[i];
  return v;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label,
                         std::uint64_t k) {
  ByteWriter w;
  w.String("decentllms/seed");
  w.U64(seed);
  w.String(label);
  w.U64(k);
  return First8(Hash(w.bytes()));
}

Rng DeriveRng(std::uint64_t seed, std::string_view label, const AgentId& agent) {
  ByteWriter w;
  w.String("decentllms/rng");
  w.U64(seed);
  w.String(label);
  w.Agent(agent);
  return Rng(First8(Hash(w.bytes())));
}

Rng DeriveRng(std::uint64_t seed, std::string_view label, std::uint64_t k) {
  return Rng(DeriveSeed(seed, label, k));
}

Digest DeriveKeySeed(std::uint64_t seed, const AgentId& agent) {
  ByteWriter w;
  w.String("decentllms/key");
  w.U64(seed);
  w.Agent(agent);
  return Hash(w.bytes());
}

}  // namespace decentllms
