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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "agents/profiles.h"
#include "agents/prompts.h"
#include "core/rng.h"
#include "core/types.h"

namespace decentllms::agents {

struct Generation {
  std::string content;
  std::optional<LatentTruth> latent;
  double latency_ms = 0.0;
};

struct EvaluationRequest {
  const Prompt* prompt = nullptr;
  AgentId worker;
  std::string content;
  std::optional<LatentTruth> latent;
};

// Raw text completion endpoint, e.g. an HTTP client for a hosted model.
struct BackendRequest {
  std::string prompt;
  double timeout_ms = 0.0;
};

class TextBackend {
 public:
  virtual ~TextBackend() = default;
  // Throws on transport failure or timeout.
  virtual std::string Complete(const BackendRequest& request) = 0;
};

class WorkerBackend {
 public:
  virtual ~WorkerBackend() = default;
  virtual Generation Generate(const Prompt& prompt, Rng& rng) = 0;
};

class EvaluatorBackend {
 public:
  virtual ~EvaluatorBackend() = default;
  // Throws when no score can be produced; the caller then drops the
  // evaluator's row.
  virtual ScoreVector Evaluate(const EvaluationRequest& request, Rng& rng) = 0;
};

class MockWorker final : public WorkerBackend {
 public:
  explicit MockWorker(WorkerProfile profile);
  Generation Generate(const Prompt& prompt, Rng& rng) override;
  const WorkerProfile& profile() const { return profile_; }

 private:
  WorkerProfile profile_;
};

class MockEvaluator final : public EvaluatorBackend {
 public:
  explicit MockEvaluator(EvaluatorProfile profile);
  ScoreVector Evaluate(const EvaluationRequest& request, Rng& rng) override;

 private:
  EvaluatorProfile profile_;
};

// Replays a fixed row keyed by worker index; used to inject reference or
// constructed score matrices into a live round.
class ScriptedEvaluator final : public EvaluatorBackend {
 public:
  explicit ScriptedEvaluator(std::map<std::uint32_t, ScoreVector> row);
  ScoreVector Evaluate(const EvaluationRequest& request, Rng& rng) override;

 private:
  std::map<std::uint32_t, ScoreVector> row_;
};

// Worker backed by a text endpoint. Answers carry no latent truth.
class TextWorker final : public WorkerBackend {
 public:
  TextWorker(std::shared_ptr<TextBackend> backend, double timeout_ms);
  Generation Generate(const Prompt& prompt, Rng& rng) override;

 private:
  std::shared_ptr<TextBackend> backend_;
  double timeout_ms_;
};

// Evaluator backed by a text endpoint: renders the evaluator prompt, parses
// the JSON reply.
class TextEvaluator final : public EvaluatorBackend {
 public:
  TextEvaluator(std::shared_ptr<TextBackend> backend, double timeout_ms);
  ScoreVector Evaluate(const EvaluationRequest& request, Rng& rng) override;

 private:
  std::shared_ptr<TextBackend> backend_;
  double timeout_ms_;
};

// Adapter for tests and embedding code.
class FunctionBackend final : public TextBackend {
 public:
  explicit FunctionBackend(std::function<std::string(const BackendRequest&)> fn)
      : fn_(std::move(fn)) {}
  std::string Complete(const BackendRequest& request) override { return fn_(request); }

 private:
  std::function<std::string(const BackendRequest&)> fn_;
};

// Latent-truth generator behind MockWorker.
Generation MockGenerate(const Prompt& prompt, const WorkerProfile& profile, Rng& rng);

// Each criterion = clamp(q / 5 + bias + N(0, noise_sd), 0, 20). Throws a
// precondition error when the answer has no latent truth.
ScoreVector MockEvaluate(const std::optional<LatentTruth>& latent,
                         const EvaluatorProfile& profile, Rng& rng);

}  // namespace decentllms::agents
