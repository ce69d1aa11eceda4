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

#include "adversary/strategy.h"

#include <cctype>

#include "core/error.h"

namespace decentllms::adversary {

std::string_view Name(WorkerStrategy s) {
  switch (s) {
    case WorkerStrategy::kAdInjection: return "AdInjection";
    case WorkerStrategy::kNumericCorruption: return "NumericCorruption";
    case WorkerStrategy::kSilence: return "Silence";
    case WorkerStrategy::kEquivocate: return "Equivocate";
  }
  return "?";
}

std::string_view Name(EvaluatorStrategy s) {
  switch (s) {
    case EvaluatorStrategy::kCollude: return "Collude";
    case EvaluatorStrategy::kInvert: return "Invert";
    case EvaluatorStrategy::kSilence: return "Silence";
    case EvaluatorStrategy::kEquivocate: return "Equivocate";
  }
  return "?";
}

WorkerStrategy ParseWorkerStrategy(std::string_view name) {
  for (auto s : {WorkerStrategy::kAdInjection, WorkerStrategy::kNumericCorruption,
                 WorkerStrategy::kSilence, WorkerStrategy::kEquivocate}) {
    if (Name(s) == name) return s;
  }
  throw ConfigError("unknown worker strategy: " + std::string(name));
}

EvaluatorStrategy ParseEvaluatorStrategy(std::string_view name) {
  for (auto s : {EvaluatorStrategy::kCollude, EvaluatorStrategy::kInvert,
                 EvaluatorStrategy::kSilence, EvaluatorStrategy::kEquivocate}) {
    if (Name(s) == name) return s;
  }
  throw ConfigError("unknown evaluator strategy: " + std::string(name));
}

void AdversaryStrategy::Validate(const GroupConfig& group) const {
  if (worker_strategies.size() != group.f_workers) {
    throw ConfigError("expected " + std::to_string(group.f_workers) +
                      " worker strategies, got " +
                      std::to_string(worker_strategies.size()));
  }
  if (evaluator_strategies.size() != group.f_evaluators) {
    throw ConfigError("expected " + std::to_string(group.f_evaluators) +
                      " evaluator strategies, got " +
                      std::to_string(evaluator_strategies.size()));
  }
  for (auto w : collusion_roster) {
    if (w >= group.n_workers) {
      throw ConfigError("collusion roster names unknown worker w" + std::to_string(w));
    }
  }
}

std::optional<WorkerStrategy> AdversaryStrategy::ForWorker(const GroupConfig& group,
                                                           std::uint32_t i) const {
  const std::uint32_t first = group.n_workers - group.f_workers;
  if (i < first || i >= group.n_workers) return std::nullopt;
  return worker_strategies.at(i - first);
}

std::optional<EvaluatorStrategy> AdversaryStrategy::ForEvaluator(const GroupConfig& group,
                                                                 std::uint32_t j) const {
  const std::uint32_t first = group.n_evaluators - group.f_evaluators;
  if (j < first || j >= group.n_evaluators) return std::nullopt;
  return evaluator_strategies.at(j - first);
}

std::string CorruptAnswer(std::string_view content, WorkerStrategy strategy, Rng& rng) {
  switch (strategy) {
    case WorkerStrategy::kAdInjection:
      if (content.empty()) return std::string(kAdvertisement);
      return std::string(content) + " " + std::string(kAdvertisement);
    case WorkerStrategy::kNumericCorruption: {
      std::string out;
      std::size_t i = 0;
      while (i < content.size()) {
        if (!std::isdigit(static_cast<unsigned char>(content[i]))) {
          out.push_back(content[i++]);
          continue;
        }
        std::size_t j = i;
        while (j < content.size() && std::isdigit(static_cast<unsigned char>(content[j]))) ++j;
        // Long digit runs saturate; the perturbation only needs to differ.
        long long n = 0;
        for (std::size_t k = i; k < j && n < 100'000'000'000'000LL; ++k) {
          n = n * 10 + (content[k] - '0');
        }
        long long d = std::uniform_int_distribution<long long>(1, 9)(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 0 && n - d >= 0) d = -d;
        out += std::to_string(n + d);
        i = j;
      }
      return out;
    }
    default:
      throw InvalidArgument("strategy " + std::string(Name(strategy)) +
                            " does not rewrite content");
  }
}

ScoreVector CollusiveScore(std::uint32_t worker, const std::set<std::uint32_t>& roster) {
  return ScoreVector::Uniform(roster.count(worker) ? kCriterionMax : 0.0);
}

std::map<std::uint32_t, ScoreVector> CollusiveScores(std::span<const std::uint32_t> workers,
                                                     const std::set<std::uint32_t>& roster) {
  std::map<std::uint32_t, ScoreVector> out;
  for (auto w : workers) out.emplace(w, CollusiveScore(w, roster));
  return out;
}

ScoreVector InvertScore(const ScoreVector& honest) {
  std::array<double, kNumCriteria> c;
  for (std::size_t i = 0; i < kNumCriteria; ++i) c[i] = kCriterionMax - honest[i];
  return ScoreVector(c);
}

std::set<AgentId> HalfPartition(std::span<const AgentId> recipients) {
  std::set<AgentId> out;
  for (std::size_t i = 0; i < recipients.size() / 2; ++i) out.insert(recipients[i]);
  return out;
}

}  // namespace decentllms::adversary
