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
#include <string>
#include <string_view>

#include "core/error.h"
#include "core/types.h"

namespace decentllms::agents {

// Evaluator reply: integer score per criterion plus their sum.
struct StructuredEvaluation {
  std::array<int, kNumCriteria> scores{};
  int final_score = 0;

  ScoreVector ToScoreVector() const;
  bool operator==(const StructuredEvaluation&) const = default;
};

class EvaluationParseError : public Error {
 public:
  EvaluationParseError(std::string field, const std::string& what)
      : Error(ErrorCode::kParse, what), field_(std::move(field)) {}
  // Offending key, or empty when no JSON object could be extracted.
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Accepts a bare object or prose with an embedded object; only the first
// balanced {...} is considered.
StructuredEvaluation ParseStructuredEvaluation(std::string_view text);

// Keys in criteria order, final_score last.
std::string SerializeStructuredEvaluation(const StructuredEvaluation& e);

// First balanced JSON object in text, respecting string literals.
std::string_view ExtractFirstJsonObject(std::string_view text);

}  // namespace decentllms::agents
