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

#include "agents/structured_evaluation.h"

#include <cmath>
#include <numeric>

#include "json.hpp"

namespace decentllms::agents {

using nlohmann::json;

std::string_view ExtractFirstJsonObject(std::string_view text) {
  const auto start = text.find('{');
  if (start == std::string_view::npos) {
    throw EvaluationParseError("", "no JSON object in evaluator output");
  }
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return text.substr(start, i - start + 1);
    }
  }
  throw EvaluationParseError("", "unbalanced JSON object in evaluator output");
}

namespace {

int ReadScore(const json& obj, const std::string& key, int lo, int hi) {
  auto it = obj.find(key);
  if (it == obj.end()) throw EvaluationParseError(key, "missing key " + key);
  int v = 0;
  if (it->is_number_integer()) {
    v = it->get<int>();
  } else if (it->is_number_float() && std::floor(it->get<double>()) == it->get<double>()) {
    v = static_cast<int>(it->get<double>());
  } else {
    throw EvaluationParseError(key, key + " must be an integer");
  }
  if (v < lo || v > hi) {
    throw EvaluationParseError(key, key + " out of range: " + std::to_string(v));
  }
  return v;
}

}  // namespace

StructuredEvaluation ParseStructuredEvaluation(std::string_view text) {
  const auto raw = ExtractFirstJsonObject(text);
  json obj;
  try {
    obj = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw EvaluationParseError("", std::string("malformed JSON: ") + e.what());
  }
  StructuredEvaluation out;
  for (std::size_t i = 0; i < kNumCriteria; ++i) {
    out.scores[i] = ReadScore(obj, std::string(kCriterionNames[i]), 0, 20);
  }
  out.final_score = ReadScore(obj, "final_score", 0, 100);
  for (const auto& [key, value] : obj.items()) {
    bool known = key == "final_score";
    for (auto name : kCriterionNames) known = known || key == name;
    if (!known) throw EvaluationParseError(key, "unexpected key " + key);
  }
  const int sum = std::accumulate(out.scores.begin(), out.scores.end(), 0);
  if (sum != out.final_score) {
    throw EvaluationParseError("final_score", "final_score " +
                                                  std::to_string(out.final_score) +
                                                  " != sum of criteria " +
                                                  std::to_string(sum));
  }
  return out;
}

std::string SerializeStructuredEvaluation(const StructuredEvaluation& e) {
  nlohmann::ordered_json obj;
  for (std::size_t i = 0; i < kNumCriteria; ++i) {
    obj[std::string(kCriterionNames[i])] = e.scores[i];
  }
  obj["final_score"] = e.final_score;
  return obj.dump();
}

ScoreVector StructuredEvaluation::ToScoreVector() const {
  std::array<double, kNumCriteria> c;
  for (std::size_t i = 0; i < kNumCriteria; ++i) c[i] = scores[i];
  return ScoreVector(c);
}

}  // namespace decentllms::agents
