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

#include "agents/backend.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "agents/structured_evaluation.h"
#include "core/error.h"

namespace decentllms::agents {

void WorkerProfile::Validate() const {
  if (!(skill >= 0.0 && skill <= 1.0)) throw ConfigError("worker skill must be in [0, 1]");
  if (!(quality_sd >= 0.0)) throw ConfigError("worker quality_sd must be >= 0");
  if (!(latency_mean_ms >= 0.0) || !(latency_jitter_ms >= 0.0)) {
    throw ConfigError("worker latency parameters must be >= 0");
  }
}

void EvaluatorProfile::Validate() const {
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
    throw ConfigError("evaluator noise_sd must be >= 0");
  }
  if (!std::isfinite(bias)) throw ConfigError("evaluator bias must be finite");
}

LatentTruth LatentTruth::FromQuality(double q) {
  const double clamped = std::clamp(q, 0.0, 100.0);
  return {clamped, clamped >= kCorrectnessThreshold};
}

namespace {

double Gaussian(Rng& rng, double mean, double sd) {
  if (sd == 0.0) return mean;
  return std::normal_distribution<double>(mean, sd)(rng);
}

std::string WrongAnswer(const std::string& label, Rng& rng) {
  long long n = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), n);
  const long long delta = std::uniform_int_distribution<long long>(1, 9)(rng);
  if (ec == std::errc() && ptr == label.data() + label.size()) {
    return std::to_string(n + (n >= delta && (delta % 2 == 0) ? -delta : delta));
  }
  return "not " + label;
}

}  // namespace

Generation MockGenerate(const Prompt& prompt, const WorkerProfile& profile, Rng& rng) {
  profile.Validate();
  Generation g;
  g.latent = LatentTruth::FromQuality(Gaussian(rng, 100.0 * profile.skill, profile.quality_sd));
  const double u = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  g.latency_ms = std::max(0.0, profile.latency_mean_ms + profile.latency_jitter_ms * u);
  const int steps = std::uniform_int_distribution<int>(2, 9)(rng);
  const std::string label = prompt.ground_truth_label.value_or("42");
  const std::string final =
      g.latent->is_correct ? label : WrongAnswer(label, rng);
  g.content = "Restating task " + prompt.id + " and checking " +
              std::to_string(steps) +
              " intermediate results step by step. Final answer: " + final;
  return g;
}

ScoreVector MockEvaluate(const std::optional<LatentTruth>& latent,
                         const EvaluatorProfile& profile, Rng& rng) {
  if (!latent) {
    throw PreconditionError(
        "mock evaluation needs latent truth; use a text evaluator for external answers");
  }
  profile.Validate();
  std::array<double, kNumCriteria> raw;
  for (auto& c : raw) {
    c = latent->true_quality / static_cast<double>(kNumCriteria) + profile.bias +
        Gaussian(rng, 0.0, profile.noise_sd);
  }
  return ScoreVector::Clamped(raw);
}

MockWorker::MockWorker(WorkerProfile profile) : profile_(profile) { profile_.Validate(); }

Generation MockWorker::Generate(const Prompt& prompt, Rng& rng) {
  return MockGenerate(prompt, profile_, rng);
}

MockEvaluator::MockEvaluator(EvaluatorProfile profile) : profile_(profile) {
  profile_.Validate();
}

ScoreVector MockEvaluator::Evaluate(const EvaluationRequest& request, Rng& rng) {
  return MockEvaluate(request.latent, profile_, rng);
}

ScriptedEvaluator::ScriptedEvaluator(std::map<std::uint32_t, ScoreVector> row)
    : row_(std::move(row)) {}

ScoreVector ScriptedEvaluator::Evaluate(const EvaluationRequest& request, Rng&) {
  auto it = row_.find(request.worker.index);
  if (it == row_.end()) {
    throw Error(ErrorCode::kPrecondition,
                "scripted evaluator has no score for " + request.worker.ToString());
  }
  return it->second;
}

TextWorker::TextWorker(std::shared_ptr<TextBackend> backend, double timeout_ms)
    : backend_(std::move(backend)), timeout_ms_(timeout_ms) {}

Generation TextWorker::Generate(const Prompt& prompt, Rng&) {
  Generation g;
  g.content = backend_->Complete({RenderPrompt(Role::kWorker, prompt.text), timeout_ms_});
  return g;
}

TextEvaluator::TextEvaluator(std::shared_ptr<TextBackend> backend, double timeout_ms)
    : backend_(std::move(backend)), timeout_ms_(timeout_ms) {}

ScoreVector TextEvaluator::Evaluate(const EvaluationRequest& request, Rng&) {
  const std::string task = request.prompt ? request.prompt->text : std::string();
  const auto reply = backend_->Complete(
      {RenderPrompt(Role::kEvaluator, task, request.content), timeout_ms_});
  return ParseStructuredEvaluation(reply).ToScoreVector();
}

}  // namespace decentllms::agents
