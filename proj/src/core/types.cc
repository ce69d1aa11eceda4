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

#include "core/types.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.h"

namespace decentllms {

std::string_view RoleName(Role role) {
  return role == Role::kWorker ? "worker" : "evaluator";
}

std::string AgentId::ToString() const {
  return (role == Role::kWorker ? "w" : "e") + std::to_string(index);
}

namespace {

GroupValidity CheckGroup(std::uint32_t n, std::uint32_t f) {
  GroupValidity v;
  v.bound = (static_cast<std::int64_t>(n) - 1) / 2;
  v.slack = v.bound - 1 - static_cast<std::int64_t>(f);
  v.valid = v.slack >= 0;
  return v;
}

}  // namespace

ValidityReport ValidateConfig(const GroupConfig& config) {
  if (config.n_workers == 0) throw ConfigError("worker group is empty");
  if (config.n_evaluators == 0) throw ConfigError("evaluator group is empty");
  if (config.f_workers > config.n_workers) {
    throw ConfigError("f_workers exceeds n_workers");
  }
  if (config.f_evaluators > config.n_evaluators) {
    throw ConfigError("f_evaluators exceeds n_evaluators");
  }
  return {CheckGroup(config.n_workers, config.f_workers),
          CheckGroup(config.n_evaluators, config.f_evaluators)};
}

ScoreVector::ScoreVector(const std::array<double, kNumCriteria>& components)
    : c_(components) {
  for (std::size_t i = 0; i < kNumCriteria; ++i) {
    if (!std::isfinite(c_[i]) || c_[i] < 0.0 || c_[i] > kCriterionMax) {
      throw InvalidArgument("score component " +
                            std::string(kCriterionNames[i]) +
                            " outside [0, 20]: " + std::to_string(c_[i]));
    }
  }
}

ScoreVector ScoreVector::Uniform(double value) {
  std::array<double, kNumCriteria> c;
  c.fill(value);
  return ScoreVector(c);
}

ScoreVector ScoreVector::FromTotal(double total) {
  return Uniform(total / static_cast<double>(kNumCriteria));
}

ScoreVector ScoreVector::Clamped(const std::array<double, kNumCriteria>& raw) {
  std::array<double, kNumCriteria> c;
  for (std::size_t i = 0; i < kNumCriteria; ++i) {
    c[i] = std::clamp(raw[i], 0.0, kCriterionMax);
  }
  return ScoreVector(c);
}

double ScoreVector::total() const {
  return std::accumulate(c_.begin(), c_.end(), 0.0);
}

}  // namespace decentllms
