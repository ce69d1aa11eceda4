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
#include <random>
#include <string_view>

#include "core/crypto.h"
#include "core/types.h"

namespace decentllms {

using Rng = std::mt19937_64;

// Independent stream per (seed, label, agent). Derived through SHA-256 so
// adding a new consumer never shifts an existing stream.
Rng DeriveRng(std::uint64_t seed, std::string_view label, const AgentId& agent);
Rng DeriveRng(std::uint64_t seed, std::string_view label, std::uint64_t k = 0);

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label,
                         std::uint64_t k);

// Key seed for an agent within one scenario seed.
Digest DeriveKeySeed(std::uint64_t seed, const AgentId& agent);

}  // namespace decentllms
