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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "agents/backend.h"
#include "agents/prompts.h"
#include "agents/structured_evaluation.h"
#include "core/rng.h"
#include "support/gen.h"

namespace decentllms::agents {
namespace {

Prompt P(std::string label = "17") { return {"task-0001", "What is 8 + 9?", label}; }

TEST(StructuredEvaluation, ParsesBareObject) {
  const auto e = ParseStructuredEvaluation(
      R"({"factual_contradiction": 18, "factual_fabrication": 17, "instruction_inconsistency": 16,)"
      R"( "context_inconsistency": 15, "logical_inconsistency": 14, "final_score": 80})");
  EXPECT_EQ(e.scores, (std::array<int, 5>{18, 17, 16, 15, 14}));
  EXPECT_EQ(e.final_score, 80);
  EXPECT_DOUBLE_EQ(e.ToScoreVector().total(), 80.0);
}

TEST(StructuredEvaluation, ExtractsFirstObjectFromProse) {
  const std::string text =
      "Sure! Here is my evaluation: {\"factual_contradiction\": 1, \"factual_fabrication\": 2, "
      "\"instruction_inconsistency\": 3, \"context_inconsistency\": 4, "
      "\"logical_inconsistency\": 5, \"final_score\": 15} and {\"ignored\": 1}";
  EXPECT_EQ(ParseStructuredEvaluation(text).final_score, 15);
  EXPECT_EQ(ExtractFirstJsonObject(R"(x {"a": "}{", "b": {"c": 1}} y)"),
            R"({"a": "}{", "b": {"c": 1}})");
}

TEST(StructuredEvaluation, Rejections) {
  auto field_of = [](const std::string& text) {
    try {
      ParseStructuredEvaluation(text);
    } catch (const EvaluationParseError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  const std::string ok_head =
      R"("factual_contradiction": 1, "factual_fabrication": 1, "instruction_inconsistency": 1, "context_inconsistency": 1, )";
  EXPECT_EQ(field_of("no json here"), "");
  EXPECT_EQ(field_of("{ unbalanced"), "");
  EXPECT_EQ(field_of("{" + ok_head + R"("final_score": 5})"), "logical_inconsistency");
  EXPECT_EQ(field_of("{" + ok_head + R"("logical_inconsistency": 21, "final_score": 25})"),
            "logical_inconsistency");
  EXPECT_EQ(field_of("{" + ok_head + R"("logical_inconsistency": 1.5, "final_score": 5})"),
            "logical_inconsistency");
  EXPECT_EQ(field_of("{" + ok_head + R"("logical_inconsistency": 1, "final_score": 6})"),
            "final_score");
  EXPECT_EQ(field_of("{" + ok_head + R"("logical_inconsistency": 1, "final_score": 5, "x": 0})"),
            "x");
  EXPECT_EQ(field_of("{" + ok_head + R"("logical_inconsistency": 1.0, "final_score": 5})"),
            "<accepted>");
}

TEST(StructuredEvaluation, SerializeRoundTripProperty) {
  testgen::ForAll(300, 3, [](testgen::Gen& g, int) {
    StructuredEvaluation e;
    for (auto& s : e.scores) s = g.Int(0, 20);
    for (auto s : e.scores) e.final_score += s;
    const auto text = SerializeStructuredEvaluation(e);
    EXPECT_EQ(ParseStructuredEvaluation("Reply: " + text + " done"), e);
  });
}

TEST(StructuredEvaluation, SerializedKeyOrder) {
  StructuredEvaluation e;
  e.scores = {1, 2, 3, 4, 5};
  e.final_score = 15;
  EXPECT_EQ(SerializeStructuredEvaluation(e),
            R"({"factual_contradiction":1,"factual_fabrication":2,"instruction_inconsistency":3,)"
            R"("context_inconsistency":4,"logical_inconsistency":5,"final_score":15})");
}

TEST(Templates, RenderSubstitutesAndRejectsUnknown) {
  EXPECT_EQ(RenderTemplate("a {{x}} b {{x}}", {{"x", "1"}}), "a 1 b 1");
  EXPECT_THROW(RenderTemplate("{{y}}", {{"x", "1"}}), Error);
  EXPECT_THROW(RenderTemplate("{{x", {{"x", "1"}}), Error);
}

TEST(Templates, DefaultPromptsCarryTaskAndAnswer) {
  const auto w = RenderPrompt(Role::kWorker, "TASK-TEXT");
  EXPECT_NE(w.find("TASK-TEXT"), std::string::npos);
  EXPECT_NE(w.find("step by step"), std::string::npos);
  EXPECT_EQ(w.find("{{"), std::string::npos);
  const auto e = RenderPrompt(Role::kEvaluator, "TASK-TEXT", "ANSWER-TEXT");
  EXPECT_NE(e.find("ANSWER-TEXT"), std::string::npos);
  for (auto name : kCriterionNames) EXPECT_NE(e.find(name), std::string::npos) << name;
  EXPECT_NE(e.find("final_score"), std::string::npos);
}

TEST(Templates, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "dllm_template_test.txt";
  std::ofstream(path) << "hello {{task}}";
  EXPECT_EQ(RenderTemplate(LoadTemplate(path), {{"task", "t"}}), "hello t");
  std::filesystem::remove(path);
  EXPECT_THROW(LoadTemplate(path), Error);
}

TEST(MockWorker, DeterministicPerStream) {
  WorkerProfile prof;
  prof.skill = 0.7;
  auto r1 = DeriveRng(1, "generate/task", Worker(0));
  auto r2 = DeriveRng(1, "generate/task", Worker(0));
  const auto a = MockGenerate(P(), prof, r1);
  const auto b = MockGenerate(P(), prof, r2);
  EXPECT_EQ(a.content, b.content);
  EXPECT_EQ(a.latent, b.latent);
  EXPECT_DOUBLE_EQ(a.latency_ms, b.latency_ms);
}

TEST(MockWorker, CorrectnessFollowsLatentQuality) {
  testgen::ForAll(200, 9, [](testgen::Gen& g, int i) {
    WorkerProfile prof;
    prof.skill = g.Real(0.0, 1.0);
    auto rng = DeriveRng(static_cast<std::uint64_t>(i), "gen", Worker(0));
    const auto out = MockGenerate(P("17"), prof, rng);
    ASSERT_TRUE(out.latent.has_value());
    EXPECT_GE(out.latent->true_quality, 0.0);
    EXPECT_LE(out.latent->true_quality, 100.0);
    EXPECT_EQ(out.latent->is_correct, out.latent->true_quality >= kCorrectnessThreshold);
    const std::string tail = "Final answer: 17";
    const bool says_17 = out.content.size() >= tail.size() &&
                         out.content.compare(out.content.size() - tail.size(), tail.size(),
                                             tail) == 0;
    EXPECT_EQ(says_17, out.latent->is_correct) << out.content;
    EXPECT_GE(out.latency_ms, prof.latency_mean_ms - prof.latency_jitter_ms);
    EXPECT_LE(out.latency_ms, prof.latency_mean_ms + prof.latency_jitter_ms);
  });
}

TEST(MockWorker, SkillShiftsQuality) {
  WorkerProfile low, high;
  low.skill = 0.3;
  high.skill = 0.9;
  double lo = 0, hi = 0;
  auto r = DeriveRng(4, "skill", 0);
  for (int i = 0; i < 200; ++i) {
    lo += MockGenerate(P(), low, r).latent->true_quality;
    hi += MockGenerate(P(), high, r).latent->true_quality;
  }
  EXPECT_GT(hi, lo + 200 * 40.0);
}

TEST(MockEvaluator, NoiselessScoreIsQualityOverFive) {
  Rng rng = DeriveRng(1, "e", 0);
  const auto s = MockEvaluate(LatentTruth::FromQuality(73.0), {}, rng);
  for (auto c : s.components()) EXPECT_DOUBLE_EQ(c, 73.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.total(), 73.0);
  EvaluatorProfile biased{0.0, 10.0};
  EXPECT_DOUBLE_EQ(MockEvaluate(LatentTruth::FromQuality(90.0), biased, rng)[0], 20.0);
  EXPECT_THROW(MockEvaluate(std::nullopt, {}, rng), Error);
}

TEST(MockEvaluator, NoisyScoresStayInRange) {
  testgen::ForAll(200, 5, [](testgen::Gen& g, int i) {
    Rng rng = DeriveRng(static_cast<std::uint64_t>(i), "e", 0);
    EvaluatorProfile prof{g.Real(0.0, 10.0), g.Real(-5.0, 5.0)};
    const auto s = MockEvaluate(LatentTruth::FromQuality(g.Real(0, 100)), prof, rng);
    for (auto c : s.components()) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, kCriterionMax);
    }
  });
}

TEST(Profiles, Validation) {
  WorkerProfile w;
  w.skill = 1.5;
  EXPECT_THROW(w.Validate(), Error);
  EXPECT_THROW(MockWorker{w}, Error);
  EvaluatorProfile e{-1.0, 0.0};
  EXPECT_THROW(e.Validate(), Error);
  EXPECT_EQ(LatentTruth::FromQuality(150.0).true_quality, 100.0);
  EXPECT_TRUE(LatentTruth::FromQuality(60.0).is_correct);
  EXPECT_FALSE(LatentTruth::FromQuality(59.9).is_correct);
}

TEST(ScriptedEvaluator, ReplaysRowAndRejectsUnknownWorker) {
  ScriptedEvaluator ev({{2, ScoreVector::FromTotal(80.0)}});
  Rng rng(0);
  EvaluationRequest req;
  req.worker = Worker(2);
  EXPECT_DOUBLE_EQ(ev.Evaluate(req, rng).total(), 80.0);
  req.worker = Worker(3);
  EXPECT_THROW(ev.Evaluate(req, rng), Error);
}

TEST(TextBackends, RenderPromptAndParseReply) {
  std::string seen;
  auto backend = std::make_shared<FunctionBackend>([&](const BackendRequest& r) {
    seen = r.prompt;
    EXPECT_DOUBLE_EQ(r.timeout_ms, 500.0);
    return std::string(
        "{\"factual_contradiction\": 10, \"factual_fabrication\": 10, "
        "\"instruction_inconsistency\": 10, \"context_inconsistency\": 10, "
        "\"logical_inconsistency\": 10, \"final_score\": 50}");
  });
  TextEvaluator ev(backend, 500.0);
  const Prompt p = P();
  EvaluationRequest req{&p, Worker(0), "my answer", std::nullopt};
  Rng rng(0);
  EXPECT_DOUBLE_EQ(ev.Evaluate(req, rng).total(), 50.0);
  EXPECT_NE(seen.find("my answer"), std::string::npos);
  EXPECT_NE(seen.find(p.text), std::string::npos);

  TextWorker w(std::make_shared<FunctionBackend>([](const BackendRequest&) {
                 return std::string("Final answer: 17");
               }),
               500.0);
  const auto g = w.Generate(p, rng);
  EXPECT_EQ(g.content, "Final answer: 17");
  EXPECT_FALSE(g.latent.has_value());

  TextEvaluator bad(std::make_shared<FunctionBackend>([](const BackendRequest&) {
                      return std::string("I refuse");
                    }),
                    500.0);
  EXPECT_THROW(bad.Evaluate(req, rng), EvaluationParseError);
}

}  // namespace
}  // namespace decentllms::agents
