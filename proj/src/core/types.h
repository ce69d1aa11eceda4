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
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace decentllms {

enum class Role : std::uint8_t { kWorker = 0, kEvaluator = 1 };

std::string_view RoleName(Role role);

struct AgentId {
  Role role = Role::kWorker;
  std::uint32_t index = 0;

  auto operator<=>(const AgentId&) const = default;

  // "w3" / "e7".
  std::string ToString() const;
};

inline AgentId Worker(std::uint32_t i) { return {Role::kWorker, i}; }
inline AgentId Evaluator(std::uint32_t i) { return {Role::kEvaluator, i}; }

struct GroupConfig {
  std::uint32_t n_workers = 0;
  std::uint32_t n_evaluators = 0;
  std::uint32_t f_workers = 0;
  std::uint32_t f_evaluators = 0;
};

struct GroupValidity {
  bool valid = false;
  // floor((n - 1) / 2); the fault count must stay strictly below it.
  std::int64_t bound = 0;
  // bound - 1 - f. Non-negative iff the group keeps an honest majority.
  std::int64_t slack = 0;
};

struct ValidityReport {
  GroupValidity workers;
  GroupValidity evaluators;

  bool valid() const { return workers.valid && evaluators.valid; }
};

// Throws a config error for empty groups. Bound violations are reported, not
// thrown, so threshold sweeps can run past the tolerance.
ValidityReport ValidateConfig(const GroupConfig& config);

struct Prompt {
  std::string id;
  std::string text;
  std::optional<std::string> ground_truth_label;
};

inline constexpr std::size_t kNumCriteria = 5;
inline constexpr double kCriterionMax = 20.0;

// Serialization order of the criteria. Never reorder.
inline constexpr std::array<std::string_view, kNumCriteria> kCriterionNames = {
    "factual_contradiction", "factual_fabrication", "instruction_inconsistency",
    "context_inconsistency", "logical_inconsistency"};

class ScoreVector {
 public:
  // Rejects any component outside [0, 20] or non-finite.
  explicit ScoreVector(const std::array<double, kNumCriteria>& components);

  static ScoreVector Uniform(double value);
  // Splits a 0..100 total evenly across the criteria.
  static ScoreVector FromTotal(double total);
  static ScoreVector Clamped(const std::array<double, kNumCriteria>& raw);

  const std::array<double, kNumCriteria>& components() const { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double total() const;

  bool operator==(const ScoreVector&) const = default;

 private:
  std::array<double, kNumCriteria> c_;
};

}  // namespace decentllms
