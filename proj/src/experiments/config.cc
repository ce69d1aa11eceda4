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

#include "experiments/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "agents/backend.h"
#include "core/error.h"

namespace decentllms::experiments {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Spread of capability; the top few workers are usually correct, the bottom
// few usually wrong.
constexpr double kMixedSkills[] = {0.35, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.85};

void CheckKeys(const json& j, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + std::string(where));
  }
}

template <typename T>
void Get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

agents::WorkerProfile ParseWorker(const json& j, agents::WorkerProfile p) {
  CheckKeys(j, {"skill", "quality_sd", "latency_mean_ms", "latency_jitter_ms"}, "worker");
  Get(j, "skill", p.skill);
  Get(j, "quality_sd", p.quality_sd);
  Get(j, "latency_mean_ms", p.latency_mean_ms);
  Get(j, "latency_jitter_ms", p.latency_jitter_ms);
  return p;
}

agents::EvaluatorProfile ParseEvaluator(const json& j, agents::EvaluatorProfile p) {
  CheckKeys(j, {"noise_sd", "bias"}, "evaluator");
  Get(j, "noise_sd", p.noise_sd);
  Get(j, "bias", p.bias);
  return p;
}

// Either a list with one entry per agent, or one object applied to all.
template <typename P, typename F>
std::vector<P> ParseProfiles(const json& j, std::vector<P> current, std::uint32_t n,
                             F parse) {
  const P base = current.empty() ? P{} : current.front();
  if (j.is_array()) {
    std::vector<P> out;
    for (const auto& e : j) out.push_back(parse(e, base));
    return out;
  }
  current.assign(n, parse(j, base));
  return current;
}

}  // namespace

std::string_view Name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kAccuracy: return "accuracy";
    case ExperimentKind::kLatency: return "latency";
    case ExperimentKind::kSnapshot: return "snapshot";
    case ExperimentKind::kThreshold: return "threshold";
  }
  return "?";
}

ExperimentKind ParseExperimentKind(std::string_view name) {
  for (auto k : {ExperimentKind::kAccuracy, ExperimentKind::kLatency,
                 ExperimentKind::kSnapshot, ExperimentKind::kThreshold}) {
    if (Name(k) == name) return k;
  }
  throw ConfigError("unknown scenario: " + std::string(name));
}

ScenarioConfig ScenarioConfig::Default(ExperimentKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  agents::WorkerProfile w;
  w.latency_mean_ms = c.latency.generation_mean_ms;
  w.latency_jitter_ms = c.latency.generation_jitter_ms;
  agents::EvaluatorProfile e;
  e.noise_sd = 3.0;

  switch (kind) {
    case ExperimentKind::kAccuracy:
      c.group = {9, 9, 0, 0};
      c.repetitions = 100;
      for (double s : kMixedSkills) {
        w.skill = s;
        c.workers.push_back(w);
      }
      break;
    case ExperimentKind::kLatency:
      c.group = {9, 13, 0, 0};
      w.skill = 0.6;
      c.workers.assign(9, w);
      break;
    case ExperimentKind::kSnapshot:
    case ExperimentKind::kThreshold:
      c.group = {10, kind == ExperimentKind::kSnapshot ? 9u : 8u, 1, 0};
      c.adversary.worker_strategies = {adversary::WorkerStrategy::kAdInjection};
      c.adversary.collusion_roster = {9};
      if (kind == ExperimentKind::kSnapshot) {
        c.group.f_evaluators = 1;
        c.adversary.evaluator_strategies = {adversary::EvaluatorStrategy::kCollude};
      }
      w.skill = 0.6;
      c.workers.assign(10, w);
      break;
  }
  // Threshold sweeps add colluders on top of the honest evaluators.
  const std::uint32_t max_e = kind == ExperimentKind::kLatency     ? c.group.n_evaluators
                              : kind == ExperimentKind::kThreshold ? 8 + 7
                                                                   : c.group.n_evaluators;
  c.evaluators.assign(max_e, e);
  return c;
}

ScenarioConfig ScenarioConfig::FromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("config is not valid JSON: ") + ex.what());
  }
  CheckKeys(j, {"scenario", "seed", "repetitions", "group", "adversary", "workers",
                "evaluators", "latency", "gm", "latency_sweep", "threshold", "snapshot"},
            "config");
  try {
    auto c = Default(ParseExperimentKind(j.value("scenario", std::string("accuracy"))));
    Get(j, "seed", c.seed);
    Get(j, "repetitions", c.repetitions);
    if (j.contains("group")) {
      const auto& g = j["group"];
      CheckKeys(g, {"n_workers", "n_evaluators", "f_workers", "f_evaluators"}, "group");
      Get(g, "n_workers", c.group.n_workers);
      Get(g, "n_evaluators", c.group.n_evaluators);
      Get(g, "f_workers", c.group.f_workers);
      Get(g, "f_evaluators", c.group.f_evaluators);
    }
    if (j.contains("adversary")) {
      const auto& a = j["adversary"];
      CheckKeys(a, {"worker_strategies", "evaluator_strategies", "collusion_roster"},
                "adversary");
      if (a.contains("worker_strategies")) {
        c.adversary.worker_strategies.clear();
        for (const auto& s : a["worker_strategies"]) {
          c.adversary.worker_strategies.push_back(
              adversary::ParseWorkerStrategy(s.get<std::string>()));
        }
      }
      if (a.contains("evaluator_strategies")) {
        c.adversary.evaluator_strategies.clear();
        for (const auto& s : a["evaluator_strategies"]) {
          c.adversary.evaluator_strategies.push_back(
              adversary::ParseEvaluatorStrategy(s.get<std::string>()));
        }
      }
      if (a.contains("collusion_roster")) {
        c.adversary.collusion_roster = a["collusion_roster"].get<std::set<std::uint32_t>>();
      }
    }
    if (j.contains("workers")) {
      c.workers = ParseProfiles(j["workers"], c.workers, c.group.n_workers, ParseWorker);
    }
    if (j.contains("evaluators")) {
      const auto n = std::max<std::uint32_t>(c.group.n_evaluators,
                                             static_cast<std::uint32_t>(c.evaluators.size()));
      c.evaluators = ParseProfiles(j["evaluators"], c.evaluators, n, ParseEvaluator);
    }
    if (j.contains("latency")) {
      const auto& l = j["latency"];
      CheckKeys(l, {"generation_mean_ms", "generation_jitter_ms", "generation_timeout_ms",
                    "evaluation_ms", "network_round_ms", "debate_round_ms",
                    "quality_round_ms"},
                "latency");
      Get(l, "generation_mean_ms", c.latency.generation_mean_ms);
      Get(l, "generation_jitter_ms", c.latency.generation_jitter_ms);
      Get(l, "generation_timeout_ms", c.latency.generation_timeout_ms);
      Get(l, "evaluation_ms", c.latency.evaluation_ms);
      Get(l, "network_round_ms", c.latency.network_round_ms);
      Get(l, "debate_round_ms", c.latency.debate_round_ms);
      Get(l, "quality_round_ms", c.latency.quality_round_ms);
    }
    if (j.contains("gm")) {
      const auto& g = j["gm"];
      CheckKeys(g, {"max_iterations", "tolerance", "coincidence_epsilon"}, "gm");
      Get(g, "max_iterations", c.gm.max_iterations);
      Get(g, "tolerance", c.gm.tolerance);
      Get(g, "coincidence_epsilon", c.gm.coincidence_epsilon);
    }
    if (j.contains("latency_sweep")) {
      const auto& l = j["latency_sweep"];
      CheckKeys(l, {"max_f", "strategy"}, "latency_sweep");
      Get(l, "max_f", c.latency_sweep.max_f);
      if (l.contains("strategy")) {
        c.latency_sweep.strategy =
            adversary::ParseEvaluatorStrategy(l["strategy"].get<std::string>());
      }
    }
    if (j.contains("threshold")) {
      const auto& t = j["threshold"];
      CheckKeys(t, {"honest_evaluators", "max_colluders", "variant"}, "threshold");
      Get(t, "honest_evaluators", c.threshold.honest_evaluators);
      Get(t, "max_colluders", c.threshold.max_colluders);
      if (t.contains("variant")) {
        const auto v = t["variant"].get<std::string>();
        if (v == "unanimous") c.threshold.variant = ThresholdVariant::kUnanimous;
        else if (v == "spread") c.threshold.variant = ThresholdVariant::kSpread;
        else if (v == "both") c.threshold.variant = ThresholdVariant::kBoth;
        else throw ConfigError("unknown threshold variant: " + v);
      }
      const auto need = c.threshold.honest_evaluators + c.threshold.max_colluders;
      if (c.kind == ExperimentKind::kThreshold && c.evaluators.size() < need &&
          !c.evaluators.empty()) {
        c.evaluators.resize(need, c.evaluators.back());
      }
    }
    if (j.contains("snapshot")) {
      const auto& s = j["snapshot"];
      CheckKeys(s, {"mode"}, "snapshot");
      const auto m = s.value("mode", std::string("reference"));
      if (m == "reference") c.snapshot = SnapshotMode::kReference;
      else if (m == "simulated") c.snapshot = SnapshotMode::kSimulated;
      else throw ConfigError("unknown snapshot mode: " + m);
    }
    c.Validate();
    return c;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + ex.what());
  }
}

ScenarioConfig ScenarioConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

std::string ScenarioConfig::ToJson() const {
  ordered_json j;
  j["scenario"] = Name(kind);
  j["seed"] = seed;
  j["repetitions"] = repetitions;
  j["group"] = {{"n_workers", group.n_workers},
                {"n_evaluators", group.n_evaluators},
                {"f_workers", group.f_workers},
                {"f_evaluators", group.f_evaluators}};
  ordered_json adv;
  adv["worker_strategies"] = ordered_json::array();
  for (auto s : adversary.worker_strategies) adv["worker_strategies"].push_back(Name(s));
  adv["evaluator_strategies"] = ordered_json::array();
  for (auto s : adversary.evaluator_strategies) {
    adv["evaluator_strategies"].push_back(Name(s));
  }
  adv["collusion_roster"] = adversary.collusion_roster;
  j["adversary"] = adv;
  j["workers"] = ordered_json::array();
  for (const auto& w : workers) {
    j["workers"].push_back({{"skill", w.skill},
                            {"quality_sd", w.quality_sd},
                            {"latency_mean_ms", w.latency_mean_ms},
                            {"latency_jitter_ms", w.latency_jitter_ms}});
  }
  j["evaluators"] = ordered_json::array();
  for (const auto& e : evaluators) {
    j["evaluators"].push_back({{"noise_sd", e.noise_sd}, {"bias", e.bias}});
  }
  j["latency"] = {{"generation_mean_ms", latency.generation_mean_ms},
                  {"generation_jitter_ms", latency.generation_jitter_ms},
                  {"generation_timeout_ms", latency.generation_timeout_ms},
                  {"evaluation_ms", latency.evaluation_ms},
                  {"network_round_ms", latency.network_round_ms},
                  {"debate_round_ms", latency.debate_round_ms},
                  {"quality_round_ms", latency.quality_round_ms}};
  j["gm"] = {{"max_iterations", gm.max_iterations},
             {"tolerance", gm.tolerance},
             {"coincidence_epsilon", gm.coincidence_epsilon}};
  j["latency_sweep"] = {{"max_f", latency_sweep.max_f},
                        {"strategy", Name(latency_sweep.strategy)}};
  j["threshold"] = {
      {"honest_evaluators", threshold.honest_evaluators},
      {"max_colluders", threshold.max_colluders},
      {"variant", threshold.variant == ThresholdVariant::kUnanimous ? "unanimous"
                  : threshold.variant == ThresholdVariant::kSpread  ? "spread"
                                                                    : "both"}};
  j["snapshot"] = {{"mode", snapshot == SnapshotMode::kReference ? "reference" : "simulated"}};
  return j.dump(2);
}

void ScenarioConfig::Validate() const {
  ValidateConfig(group);
  latency.Validate();
  gm.Validate();
  if (repetitions == 0) throw ConfigError("repetitions must be >= 1");
  if (workers.size() < group.n_workers) throw ConfigError("one worker profile per worker");
  for (const auto& w : workers) w.Validate();
  for (const auto& e : evaluators) e.Validate();
  switch (kind) {
    case ExperimentKind::kLatency:
      if (latency_sweep.max_f >= group.n_evaluators) {
        throw ConfigError("latency sweep needs max_f < n_evaluators");
      }
      if (evaluators.size() < group.n_evaluators) {
        throw ConfigError("one evaluator profile per evaluator");
      }
      break;
    case ExperimentKind::kThreshold:
      if (group.n_workers < 2 || threshold.honest_evaluators == 0) {
        throw ConfigError("threshold sweep needs >= 2 workers and >= 1 honest evaluator");
      }
      if (evaluators.size() < threshold.honest_evaluators + threshold.max_colluders) {
        throw ConfigError("one evaluator profile per evaluator in the widest sweep step");
      }
      if (adversary.collusion_roster.empty()) {
        throw ConfigError("threshold sweep needs a colluding roster");
      }
      break;
    case ExperimentKind::kSnapshot:
      if (snapshot == SnapshotMode::kReference &&
          (group.n_workers != 10 || group.n_evaluators != 9)) {
        throw ConfigError("reference snapshot needs 10 workers and 9 evaluators");
      }
      [[fallthrough]];
    case ExperimentKind::kAccuracy:
      if (evaluators.size() < group.n_evaluators) {
        throw ConfigError("one evaluator profile per evaluator");
      }
      adversary.Validate(group);
      break;
  }
}

double ScenarioConfig::GenerationTimeoutMs() const {
  if (latency.generation_timeout_ms > 0.0) return latency.generation_timeout_ms;
  double t = 0.0;
  for (std::uint32_t i = 0; i < group.n_workers && i < workers.size(); ++i) {
    t = std::max(t, workers[i].latency_mean_ms + workers[i].latency_jitter_ms);
  }
  return t > 0.0 ? t : 1.0;
}

protocol::Scenario BuildScenario(const ScenarioConfig& config, const GroupConfig& group,
                                 const adversary::AdversaryStrategy& adversary) {
  if (config.workers.size() < group.n_workers ||
      config.evaluators.size() < group.n_evaluators) {
    throw ConfigError("not enough agent profiles for the group");
  }
  protocol::Scenario s;
  s.group = group;
  s.adversary = adversary;
  for (std::uint32_t i = 0; i < group.n_workers; ++i) {
    s.workers.push_back(std::make_shared<agents::MockWorker>(config.workers[i]));
  }
  for (std::uint32_t j = 0; j < group.n_evaluators; ++j) {
    s.evaluators.push_back(std::make_shared<agents::MockEvaluator>(config.evaluators[j]));
  }
  s.latency = config.latency;
  s.generation_timeout_ms = config.GenerationTimeoutMs();
  s.gm = config.gm;
  s.seed = config.seed;
  return s;
}

}  // namespace decentllms::experiments
