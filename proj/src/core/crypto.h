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
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace decentllms {

// SHA-256 output. Ordered lexicographically by byte.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const Digest&) const = default;

  std::string Hex() const;
  static Digest FromHex(std::string_view hex);
  static Digest Zero() { return {}; }
};

Digest Hash(std::span<const std::uint8_t> data);
Digest Hash(std::string_view data);

inline constexpr std::size_t kPublicKeySize = 32;
inline constexpr std::size_t kSecretKeySize = 64;
inline constexpr std::size_t kSignatureSize = 64;

using PublicKey = std::array<std::uint8_t, kPublicKeySize>;
using Signature = std::array<std::uint8_t, kSignatureSize>;

// Ed25519. Deterministic: the same seed yields the same pair, and signing is
// deterministic in (key, message).
class KeyPair {
 public:
  static KeyPair FromSeed(const Digest& seed);

  const PublicKey& public_key() const { return pk_; }
  Signature Sign(std::span<const std::uint8_t> message) const;

 private:
  PublicKey pk_{};
  std::array<std::uint8_t, kSecretKeySize> sk_{};
};

// Never throws; any malformed input simply fails verification.
bool Verify(const PublicKey& pk, std::span<const std::uint8_t> message,
            const Signature& sig);

std::string ToHex(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> FromHex(std::string_view hex);

}  // namespace decentllms
