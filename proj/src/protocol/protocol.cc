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

#include "protocol/protocol.h"

#include <algorithm>
#include <numeric>

#include "core/error.h"
#include "core/rng.h"
#include "core/serialize.h"

namespace decentllms::protocol {

using adversary::EvaluatorStrategy;
using adversary::WorkerStrategy;

void Scenario::Validate() const {
  ValidateConfig(group);
  adversary.Validate(group);
  if (workers.size() != group.n_workers) throw ConfigError("one worker backend per worker");
  if (evaluators.size() != group.n_evaluators) {
    throw ConfigError("one evaluator backend per evaluator");
  }
  for (const auto& w : workers) {
    if (!w) throw ConfigError("null worker backend");
  }
  for (const auto& e : evaluators) {
    if (!e) throw ConfigError("null evaluator backend");
  }
  if (group.f_evaluators >= group.n_evaluators) {
    throw ConfigError("at least one honest evaluator is required");
  }
  latency.Validate();
  if (!(generation_timeout_ms > 0.0)) throw ConfigError("generation timeout must be > 0");
  gm.Validate();
}

bool Scenario::IsByzantine(const AgentId& id) const {
  return id.role == Role::kWorker ? adversary.ForWorker(group, id.index).has_value()
                                  : adversary.ForEvaluator(group, id.index).has_value();
}

std::vector<AgentId> Scenario::EvaluatorIds() const {
  std::vector<AgentId> out;
  for (std::uint32_t j = 0; j < group.n_evaluators; ++j) out.push_back(Evaluator(j));
  return out;
}

std::vector<std::uint32_t> Scenario::HonestEvaluators() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < group.n_evaluators; ++j) {
    if (!adversary.ForEvaluator(group, j)) out.push_back(j);
  }
  return out;
}

bool GenerationPhase::Agreement() const {
  return std::all_of(views.begin(), views.end(),
                     [&](const auto& kv) { return kv.second == views.begin()->second; });
}

bool EvaluationPhase::Agreement() const {
  return std::all_of(matrices.begin(), matrices.end(), [&](const auto& kv) {
    return kv.second == matrices.begin()->second;
  });
}

namespace {

simnet::BrbGroup EvaluatorGroup(const Scenario& s) {
  simnet::BrbGroup g;
  g.members = s.EvaluatorIds();
  for (std::uint32_t j = 0; j < s.group.n_evaluators; ++j) {
    auto strat = s.adversary.ForEvaluator(s.group, j);
    if (!strat) continue;
    g.byzantine.insert(Evaluator(j));
    if (*strat == EvaluatorStrategy::kSilence) {
      g.echo.emplace(Evaluator(j), simnet::EchoBehavior::kWithhold);
    }
  }
  return g;
}

Answer MakeAnswer(const AgentId& worker, const Prompt& prompt, std::string content,
                  std::optional<agents::LatentTruth> latent, const simnet::Keyring& keys) {
  Answer a;
  a.worker = worker;
  a.prompt_id = prompt.id;
  a.content = std::move(content);
  a.latent = latent;
  a.signature = keys.key(worker).Sign(a.SigningBytes());
  return a;
}

std::optional<agents::LatentTruth> Degrade(const std::optional<agents::LatentTruth>& t,
                                           double penalty, bool force_incorrect) {
  if (!t) return std::nullopt;
  auto out = agents::LatentTruth::FromQuality(t->true_quality - penalty);
  if (force_incorrect) out.is_correct = false;
  return out;
}

Bytes EncodeRow(const std::map<std::uint32_t, ScoreVector>& row) {
  ByteWriter w;
  w.U32(static_cast<std::uint32_t>(row.size()));
  for (const auto& [worker, v] : row) {
    w.U32(worker);
    w.Scores(v);
  }
  return std::move(w).bytes();
}

std::optional<std::map<std::uint32_t, ScoreVector>> DecodeRow(const Bytes& bytes) {
  try {
    ByteReader r(bytes);
    const auto n = r.U32();
    if (n > bytes.size()) return std::nullopt;
    std::map<std::uint32_t, ScoreVector> row;
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto worker = r.U32();
      if (!row.emplace(worker, r.Scores()).second) return std::nullopt;
    }
    r.ExpectDone();
    return row;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::map<std::uint32_t, ScoreVector> HonestRow(const Prompt& prompt, const AnswerView& view,
                                               agents::EvaluatorBackend& backend, Rng& rng) {
  std::map<std::uint32_t, ScoreVector> row;
  for (const auto& [w, answer] : view) {
    agents::EvaluationRequest req{&prompt, answer.worker, answer.content, answer.latent};
    row.emplace(w, backend.Evaluate(req, rng));
  }
  return row;
}

}  // namespace

GenerationPhase PhaseGenerate(const Prompt& prompt, const Scenario& scenario,
                              const simnet::Keyring& keys, simnet::Network& net) {
  const auto evaluators = scenario.EvaluatorIds();
  const auto group = EvaluatorGroup(scenario);

  GenerationPhase out;
  out.produced.resize(scenario.group.n_workers);
  std::vector<simnet::BrbInstance> instances;
  double slowest_honest = 0.0;
  for (std::uint32_t i = 0; i < scenario.group.n_workers; ++i) {
    const AgentId id = Worker(i);
    Rng rng = DeriveRng(scenario.seed, "generate/" + prompt.id, id);
    auto gen = scenario.workers[i]->Generate(prompt, rng);
    const auto strategy = scenario.adversary.ForWorker(scenario.group, i);
    if (gen.latency_ms > scenario.generation_timeout_ms) continue;

    if (!strategy) {
      slowest_honest = std::max(slowest_honest, gen.latency_ms);
      auto a = MakeAnswer(id, prompt, gen.content, gen.latent, keys);
      instances.push_back(simnet::BrbInstance::Honest(id, evaluators, a.Encode()));
      out.produced[i] = std::move(a);
      continue;
    }
    switch (*strategy) {
      case WorkerStrategy::kSilence:
        break;
      case WorkerStrategy::kAdInjection:
      case WorkerStrategy::kNumericCorruption: {
        const bool ad = *strategy == WorkerStrategy::kAdInjection;
        auto latent = Degrade(gen.latent,
                              ad ? adversary::kAdInjectionQualityPenalty
                                 : adversary::kNumericCorruptionQualityPenalty,
                              !ad);
        auto a = MakeAnswer(id, prompt, adversary::CorruptAnswer(gen.content, *strategy, rng),
                            latent, keys);
        instances.push_back(simnet::BrbInstance::Honest(id, evaluators, a.Encode()));
        out.produced[i] = std::move(a);
        break;
      }
      case WorkerStrategy::kEquivocate: {
        auto p = MakeAnswer(id, prompt, gen.content, gen.latent, keys);
        auto q = MakeAnswer(
            id, prompt,
            adversary::CorruptAnswer(gen.content, WorkerStrategy::kAdInjection, rng),
            Degrade(gen.latent, adversary::kAdInjectionQualityPenalty, false), keys);
        instances.push_back({id, adversary::Equivocate(p.Encode(), q.Encode(), evaluators,
                                                       adversary::HalfPartition(evaluators))});
        out.produced[i] = std::move(p);
        break;
      }
    }
  }

  const double before = net.clock().wall_time_ms;
  net.Charge("generation", slowest_honest);
  const auto brb = simnet::BroadcastReliable(net, keys, instances, group, "answers/" + prompt.id);
  out.phase_ms = net.clock().wall_time_ms - before;
  out.faulty = brb.faulty_senders;

  for (const auto& [member, deliveries] : brb.deliveries) {
    AnswerView view;
    for (const auto& [sender, d] : deliveries) {
      if (!d.payload) continue;
      try {
        auto a = Answer::Decode(*d.payload);
        if (a.worker != sender || a.prompt_id != prompt.id) continue;
        if (!keys.VerifyCached(sender, a.SigningBytes(), a.signature)) continue;
        view.emplace(sender.index, std::move(a));
      } catch (const Error&) {
      }
    }
    out.views.emplace(member.index, std::move(view));
  }
  const bool any = std::any_of(out.views.begin(), out.views.end(),
                               [](const auto& kv) { return !kv.second.empty(); });
  if (!any) throw Error(ErrorCode::kNoAnswer, "no worker answer was delivered");
  return out;
}

EvaluationPhase PhaseEvaluate(const Prompt& prompt, const GenerationPhase& generation,
                              const Scenario& scenario, const simnet::Keyring& keys,
                              simnet::Network& net) {
  if (generation.views.empty()) throw PreconditionError("no honest evaluator views");
  // Byzantine evaluators score what the first honest evaluator holds.
  const AnswerView& reference = generation.views.begin()->second;
  std::size_t max_answers = 0;
  for (const auto& [j, v] : generation.views) max_answers = std::max(max_answers, v.size());
  if (max_answers == 0) throw PreconditionError("no delivered answers to evaluate");

  const auto evaluators = scenario.EvaluatorIds();
  const auto group = EvaluatorGroup(scenario);
  std::vector<simnet::BrbInstance> instances;
  for (std::uint32_t j = 0; j < scenario.group.n_evaluators; ++j) {
    const AgentId id = Evaluator(j);
    Rng rng = DeriveRng(scenario.seed, "evaluate/" + prompt.id, id);
    const auto strategy = scenario.adversary.ForEvaluator(scenario.group, j);
    auto& backend = *scenario.evaluators[j];
    try {
      if (!strategy) {
        auto row = HonestRow(prompt, generation.view_of(j), backend, rng);
        instances.push_back(simnet::BrbInstance::Honest(id, evaluators, EncodeRow(row)));
        continue;
      }
      std::vector<std::uint32_t> answered;
      for (const auto& [w, a] : reference) answered.push_back(w);
      switch (*strategy) {
        case EvaluatorStrategy::kSilence:
          break;
        case EvaluatorStrategy::kCollude:
          instances.push_back(simnet::BrbInstance::Honest(
              id, evaluators,
              EncodeRow(adversary::CollusiveScores(answered, scenario.adversary.collusion_roster))));
          break;
        case EvaluatorStrategy::kInvert: {
          auto row = HonestRow(prompt, reference, backend, rng);
          for (auto& [w, v] : row) v = adversary::InvertScore(v);
          instances.push_back(simnet::BrbInstance::Honest(id, evaluators, EncodeRow(row)));
          break;
        }
        case EvaluatorStrategy::kEquivocate: {
          auto honest = HonestRow(prompt, reference, backend, rng);
          auto inverted = honest;
          for (auto& [w, v] : inverted) v = adversary::InvertScore(v);
          instances.push_back({id, adversary::Equivocate(EncodeRow(honest), EncodeRow(inverted),
                                                         evaluators,
                                                         adversary::HalfPartition(evaluators))});
          break;
        }
      }
    } catch (const Error&) {
      // Backend failure: this evaluator contributes no row.
    }
  }

  EvaluationPhase out;
  out.evaluation_ms = scenario.latency.evaluation_ms * static_cast<double>(max_answers);
  net.Charge("evaluation", out.evaluation_ms);
  const double before = net.clock().wall_time_ms;
  const auto brb = simnet::BroadcastReliable(net, keys, instances, group, "rows/" + prompt.id);
  out.consensus_ms = net.clock().wall_time_ms - before;
  out.exchanges = 1;
  out.faulty = brb.faulty_senders;

  for (const auto& [member, deliveries] : brb.deliveries) {
    const auto& view = generation.view_of(member.index);
    EvaluationMatrix m;
    for (const auto& [sender, d] : deliveries) {
      if (!d.payload) continue;
      auto row = DecodeRow(*d.payload);
      if (!row) continue;
      for (const auto& [w, v] : *row) {
        if (view.count(w)) m.Set(w, sender.index, v);
      }
    }
    out.matrices.emplace(member.index, std::move(m));
  }
  return out;
}

Digest TieBreakDigest(std::string_view content, const Digest& ledger_head) {
  ByteWriter w;
  w.String(content);
  w.Fixed(ledger_head);
  return Hash(w.bytes());
}

std::uint32_t TieBreak(std::span<const TieCandidate> tied, const Digest& ledger_head) {
  if (tied.empty()) throw PreconditionError("tie-break needs at least one candidate");
  const TieCandidate* best = &tied.front();
  Digest best_digest = TieBreakDigest(best->content, ledger_head);
  for (const auto& c : tied.subspan(1)) {
    const Digest d = TieBreakDigest(c.content, ledger_head);
    if (d > best_digest || (d == best_digest && c.worker < best->worker)) {
      best = &c;
      best_digest = d;
    }
  }
  return best->worker;
}

Decision PhaseDecide(const EvaluationMatrix& matrix, const AnswerView& answers,
                     const Digest& ledger_head, const aggregation::WeiszfeldParams& params) {
  Decision d;
  for (const auto& [w, answer] : answers) {
    auto column = matrix.Column(w);
    if (column.empty()) continue;
    d.robust_scores.emplace(w, aggregation::AggregateScores(column, params));
  }
  if (d.robust_scores.empty()) {
    throw PreconditionError("no answer has an evaluator row");
  }
  std::map<std::uint32_t, Digest> tie_digest;
  for (const auto& [w, s] : d.robust_scores) {
    tie_digest.emplace(w, TieBreakDigest(answers.at(w).content, ledger_head));
    d.ranking.push_back(w);
  }
  // Same order TieBreak() yields within any group of equal scalars.
  std::sort(d.ranking.begin(), d.ranking.end(), [&](std::uint32_t a, std::uint32_t b) {
    const double sa = d.robust_scores.at(a).scalar;
    const double sb = d.robust_scores.at(b).scalar;
    if (sa != sb) return sa > sb;
    if (tie_digest.at(a) != tie_digest.at(b)) return tie_digest.at(a) > tie_digest.at(b);
    return a < b;
  });
  d.selected = d.ranking.front();
  return d;
}

ConsensusRound RunRound(const Prompt& prompt, const Scenario& scenario,
                        const simnet::Keyring& keys, simnet::Network& net,
                        ledger::Chain& chain) {
  scenario.Validate();
  ConsensusRound round;
  round.prompt = prompt;
  round.ledger_head_before = chain.head();
  const double start = net.clock().wall_time_ms;

  auto gen = PhaseGenerate(prompt, scenario, keys, net);
  auto eval = PhaseEvaluate(prompt, gen, scenario, keys, net);

  for (const auto& [j, matrix] : eval.matrices) {
    round.decisions.emplace(j, PhaseDecide(matrix, gen.view_of(j), round.ledger_head_before,
                                           scenario.gm));
  }
  round.honest_agreement =
      gen.Agreement() && eval.Agreement() &&
      std::all_of(round.decisions.begin(), round.decisions.end(), [&](const auto& kv) {
        return kv.second == round.decisions.begin()->second;
      });

  const std::uint32_t reporter = round.decisions.begin()->first;
  const auto& view = gen.view_of(reporter);
  const auto& decision = round.decisions.at(reporter);
  round.answers.resize(scenario.group.n_workers);
  for (const auto& [w, a] : view) round.answers[w] = a;
  round.matrix = eval.matrices.at(reporter);
  round.robust_scores = decision.robust_scores;
  round.ranking = decision.ranking;
  round.selected = decision.selected;
  round.faulty = gen.faulty;
  round.faulty.insert(eval.faulty.begin(), eval.faulty.end());
  round.score_consensus_rounds = eval.exchanges;
  round.phase_times = {gen.phase_ms, eval.evaluation_ms, eval.consensus_ms};
  round.latency_ms = net.clock().wall_time_ms - start;

  // User reply: each evaluator reports an answer; the user takes the content
  // a majority agrees on.
  std::map<std::string, std::size_t> replies;
  for (std::uint32_t j = 0; j < scenario.group.n_evaluators; ++j) {
    auto strategy = scenario.adversary.ForEvaluator(scenario.group, j);
    if (!strategy) {
      const auto& dj = round.decisions.at(j);
      ++replies[gen.view_of(j).at(dj.selected).content];
    } else if (*strategy == EvaluatorStrategy::kCollude) {
      for (auto w : scenario.adversary.collusion_roster) {
        if (view.count(w)) {
          ++replies[view.at(w).content];
          break;
        }
      }
    } else if (*strategy != EvaluatorStrategy::kSilence) {
      ++replies[view.at(decision.ranking.back()).content];
    }
  }
  const std::string& chosen = view.at(round.selected).content;
  round.user_matching_replies = replies[chosen];
  if (round.user_matching_replies >= ledger::SignatureQuorum(scenario.group.n_evaluators)) {
    round.user_accepted_worker = round.selected;
  }

  ledger::Block block;
  block.height = chain.next_height();
  block.prev_hash = chain.head();
  block.evaluator_set = ledger::EvaluatorSetDigest(chain.evaluator_keys());
  block.prompt_id = prompt.id;
  block.answer_digests.resize(scenario.group.n_workers);
  block.robust_scores.resize(scenario.group.n_workers);
  for (const auto& [w, a] : view) block.answer_digests[w] = chain.StoreContent(a.content);
  block.matrix_digest = round.matrix.digest();
  for (const auto& [w, s] : round.robust_scores) {
    std::array<double, kNumCriteria> v{};
    std::copy_n(s.vector.begin(), std::min(s.vector.size(), kNumCriteria), v.begin());
    block.robust_scores[w] = v;
  }
  block.selected = round.selected;
  const auto signing = block.SigningBytes();
  for (std::uint32_t j = 0; j < scenario.group.n_evaluators; ++j) {
    auto strategy = scenario.adversary.ForEvaluator(scenario.group, j);
    if (strategy && (*strategy == EvaluatorStrategy::kSilence ||
                     *strategy == EvaluatorStrategy::kEquivocate)) {
      continue;
    }
    if (!strategy && !(round.decisions.at(j) == decision)) continue;
    block.signatures.push_back({j, keys.key(Evaluator(j)).Sign(signing)});
  }
  block.block_hash = block.ComputeHash();
  try {
    round.block_hash = chain.Append(std::move(block)).block_hash;
  } catch (const Error& e) {
    round.ledger_error = e.what();
  }
  return round;
}

}  // namespace decentllms::protocol
