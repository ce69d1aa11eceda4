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

#include <algorithm>

#include "core/error.h"
#include "experiments/reference_snapshot.h"
#include "protocol/protocol.h"
#include "support/gen.h"

namespace decentllms::protocol {
namespace {

using adversary::EvaluatorStrategy;
using adversary::WorkerStrategy;
namespace snap = experiments::reference_snapshot;

struct Setup {
  Scenario scenario;
  simnet::Keyring keys;
  ledger::Chain chain;
};

std::vector<PublicKey> EvaluatorKeys(const simnet::Keyring& keys, std::uint32_t n) {
  std::vector<PublicKey> out;
  for (std::uint32_t j = 0; j < n; ++j) out.push_back(keys.public_key(Evaluator(j)));
  return out;
}

Setup Make(GroupConfig g, std::vector<WorkerStrategy> ws, std::vector<EvaluatorStrategy> es,
           std::set<std::uint32_t> roster = {}, std::uint64_t seed = 1,
           double noise = 2.0) {
  Scenario s;
  s.group = g;
  s.adversary = {std::move(ws), std::move(es), std::move(roster)};
  for (std::uint32_t i = 0; i < g.n_workers; ++i) {
    agents::WorkerProfile p;
    p.skill = 0.4 + 0.5 * i / std::max<std::uint32_t>(1, g.n_workers);
    s.workers.push_back(std::make_shared<agents::MockWorker>(p));
  }
  for (std::uint32_t j = 0; j < g.n_evaluators; ++j) {
    s.evaluators.push_back(std::make_shared<agents::MockEvaluator>(agents::EvaluatorProfile{noise, 0.0}));
  }
  s.generation_timeout_ms = s.latency.generation_mean_ms + s.latency.generation_jitter_ms;
  s.seed = seed;
  auto keys = simnet::Keyring::Generate(seed, g);
  ledger::Chain chain(EvaluatorKeys(keys, g.n_evaluators));
  return {std::move(s), std::move(keys), std::move(chain)};
}

Prompt Task(int k) {
  return {"task-" + std::to_string(k), "Compute the value of task " + std::to_string(k),
          std::to_string(100 + k)};
}

ConsensusRound Play(Setup& st, const Prompt& p) {
  simnet::Network net(st.scenario.latency.network_round_ms);
  return RunRound(p, st.scenario, st.keys, net, st.chain);
}

void ExpectRoundInvariants(const ConsensusRound& r, const Setup& st) {
  EXPECT_TRUE(r.honest_agreement);
  EXPECT_EQ(r.score_consensus_rounds, 1u);
  ASSERT_TRUE(r.block_hash.has_value()) << r.ledger_error;
  EXPECT_EQ(*r.block_hash, st.chain.head());
  EXPECT_NEAR(r.latency_ms, r.phase_times.total(), 1e-9 * r.latency_ms);
  ASSERT_FALSE(r.ranking.empty());
  EXPECT_EQ(r.selected, r.ranking.front());
  ASSERT_TRUE(r.answers.at(r.selected).has_value());
  const double best = r.robust_scores.at(r.selected).scalar;
  for (const auto& [w, s] : r.robust_scores) EXPECT_LE(s.scalar, best);
}

TEST(TieBreak, DigestKnownValues) {
  EXPECT_EQ(TieBreakDigest("alpha", Digest::Zero()).Hex(),
            "bffb1b89e3f6cc15bc26bdd2e0228fc1a2af4bc0ea3c34b6866ca526cf65ee61");
  const Digest head = Hash("block-1");
  EXPECT_EQ(head.Hex(), "89a1a98e709fa672374b463bbd8d5946ff4f530c5e65be07bf17ef8473ec96e9");
  EXPECT_EQ(TieBreakDigest("beta", head).Hex(),
            "9116aa59e4ead6559f23c450f8f0ffe9e38a5238fb0f44d70385fd3bb96104c8");
}

TEST(TieBreak, WinnerDependsOnLedgerHead) {
  const std::vector<TieCandidate> c = {{0, "alpha"}, {1, "beta"}};
  EXPECT_EQ(TieBreak(c, Digest::Zero()), 0u);
  EXPECT_EQ(TieBreak(c, Hash("block-1")), 1u);
  const std::vector<TieCandidate> n = {{3, "Final answer: 42"}, {5, "Final answer: 41"}};
  EXPECT_EQ(TieBreak(n, Digest::Zero()), 3u);
  EXPECT_EQ(TieBreak(n, Hash("block-1")), 5u);
}

TEST(TieBreak, IdenticalContentFallsBackToLowerIndex) {
  const std::vector<TieCandidate> c = {{4, "same"}, {2, "same"}, {7, "same"}};
  EXPECT_EQ(TieBreak(c, Hash("x")), 2u);
  EXPECT_THROW(TieBreak(std::vector<TieCandidate>{}, Digest::Zero()), Error);
}

TEST(TieBreak, OrderOfCandidatesIrrelevant) {
  testgen::ForAll(100, 8, [](testgen::Gen& g, int) {
    std::vector<TieCandidate> c;
    const int n = g.Int(1, 6);
    for (int i = 0; i < n; ++i) c.push_back({static_cast<std::uint32_t>(i), g.Text(12)});
    const Digest head = Hash(g.Text(8));
    const auto w = TieBreak(c, head);
    g.Shuffle(c);
    EXPECT_EQ(TieBreak(c, head), w);
  });
}

AnswerView ViewOf(std::uint32_t n) {
  AnswerView v;
  for (std::uint32_t i = 0; i < n; ++i) v[i] = Answer{Worker(i), "p", "answer " + std::to_string(i), {}, {}};
  return v;
}

TEST(PhaseDecide, ReferenceSnapshotRanking) {
  EvaluationMatrix m;
  for (std::uint32_t j = 0; j < snap::kEvaluators; ++j) {
    for (std::uint32_t w = 0; w < snap::kWorkers; ++w) {
      m.Set(w, j, ScoreVector::FromTotal(snap::kTotals[j][w]));
    }
  }
  const auto view = ViewOf(snap::kWorkers);
  const auto d = PhaseDecide(m, view, Digest::Zero());
  // Split evenly, w6 and w7 tie exactly at the top; the tie-break orders them
  // and everything below follows the reference ranking.
  EXPECT_EQ(d.robust_scores.at(6).scalar, d.robust_scores.at(7).scalar);
  const std::vector<TieCandidate> tied = {{6, view.at(6).content}, {7, view.at(7).content}};
  const auto first = TieBreak(tied, Digest::Zero());
  EXPECT_EQ(d.selected, first);
  EXPECT_EQ(d.ranking[1], first == 6 ? 7u : 6u);
  EXPECT_TRUE(std::equal(d.ranking.begin() + 2, d.ranking.end(), snap::kRanking.begin() + 2,
                         snap::kRanking.end()));
  EXPECT_LT(d.robust_scores.at(snap::kByzantineWorker).scalar,
            d.robust_scores.at(d.selected).scalar);
}

TEST(PhaseDecide, ReferenceRobustRowUnanimous) {
  EvaluationMatrix m;
  for (std::uint32_t j = 0; j < snap::kEvaluators; ++j) {
    for (std::uint32_t w = 0; w < snap::kWorkers; ++w) {
      m.Set(w, j, ScoreVector::FromTotal(snap::kRobustScores[w]));
    }
  }
  const auto d = PhaseDecide(m, ViewOf(snap::kWorkers), Digest::Zero());
  EXPECT_EQ(d.selected, 7u);
  EXPECT_TRUE(std::equal(d.ranking.begin(), d.ranking.end(), snap::kRanking.begin(),
                         snap::kRanking.end()));
  for (std::uint32_t w = 0; w < snap::kWorkers; ++w) {
    EXPECT_NEAR(d.robust_scores.at(w).scalar, snap::kRobustScores[w], 1e-9);
  }
}

TEST(PhaseDecide, UnansweredWorkersAreNotRanked) {
  EvaluationMatrix m;
  for (std::uint32_t j = 0; j < 3; ++j) {
    m.Set(0, j, ScoreVector::FromTotal(50));
    m.Set(2, j, ScoreVector::FromTotal(60));
  }
  auto view = ViewOf(3);
  view.erase(1);
  const auto d = PhaseDecide(m, view, Digest::Zero());
  EXPECT_EQ(d.ranking, (std::vector<std::uint32_t>{2, 0}));
  EXPECT_EQ(d.robust_scores.count(1), 0u);
}

// With an honest majority of identical rows, colluders cannot move the
// robust score, so the honest choice always wins.
TEST(PhaseDecide, UnanimousHonestMajorityDecides) {
  testgen::ForAll(60, 12, [](testgen::Gen& g, int) {
    const std::uint32_t nw = static_cast<std::uint32_t>(g.Int(2, 8));
    const std::uint32_t ne = static_cast<std::uint32_t>(g.Int(3, 15));
    const std::uint32_t fe = (ne - 1) / 2;
    std::vector<ScoreVector> honest;
    for (std::uint32_t w = 0; w < nw; ++w) honest.push_back(g.Score());
    const std::uint32_t target = static_cast<std::uint32_t>(g.Int(0, static_cast<int>(nw) - 1));
    EvaluationMatrix m;
    for (std::uint32_t j = 0; j < ne; ++j) {
      for (std::uint32_t w = 0; w < nw; ++w) {
        m.Set(w, j, j < ne - fe ? honest[w] : ScoreVector::Uniform(w == target ? 20.0 : 0.0));
      }
    }
    const auto d = PhaseDecide(m, ViewOf(nw), Hash("h"));
    for (std::uint32_t w = 0; w < nw; ++w) {
      EXPECT_NEAR(d.robust_scores.at(w).scalar, honest[w].total(), 1e-6);
    }
    const auto best = std::max_element(honest.begin(), honest.end(), [](auto& a, auto& b) {
      return a.total() < b.total();
    });
    EXPECT_EQ(d.selected, static_cast<std::uint32_t>(best - honest.begin()));
  });
}

TEST(RunRound, AllHonest) {
  auto st = Make({5, 5, 0, 0}, {}, {});
  const auto r = Play(st, Task(1));
  ExpectRoundInvariants(r, st);
  EXPECT_TRUE(r.faulty.empty());
  EXPECT_EQ(r.matrix.size(), 25u);
  EXPECT_EQ(r.decisions.size(), 5u);
  EXPECT_EQ(r.user_accepted_worker, r.selected);
  EXPECT_GE(r.user_matching_replies, ledger::SignatureQuorum(5));
  EXPECT_EQ(st.chain.blocks().size(), 1u);
  EXPECT_EQ(st.chain.blocks()[0].selected, r.selected);
}

TEST(RunRound, Deterministic) {
  auto a = Make({7, 9, 1, 2}, {WorkerStrategy::kAdInjection},
                {EvaluatorStrategy::kCollude, EvaluatorStrategy::kInvert}, {6}, 42);
  auto b = Make({7, 9, 1, 2}, {WorkerStrategy::kAdInjection},
                {EvaluatorStrategy::kCollude, EvaluatorStrategy::kInvert}, {6}, 42);
  for (int k = 0; k < 3; ++k) {
    const auto ra = Play(a, Task(k));
    const auto rb = Play(b, Task(k));
    EXPECT_EQ(ra.ToJson(), rb.ToJson());
  }
  EXPECT_EQ(a.chain.head(), b.chain.head());
}

TEST(RunRound, ChainLinksAcrossRounds) {
  auto st = Make({4, 5, 0, 0}, {}, {});
  Digest prev = Digest::Zero();
  for (int k = 0; k < 4; ++k) {
    const auto r = Play(st, Task(k));
    EXPECT_EQ(r.ledger_head_before, prev);
    prev = *r.block_hash;
  }
  EXPECT_TRUE(ledger::VerifyChain(st.chain.blocks(), st.chain.evaluator_keys()).ok);
}

TEST(RunRound, EquivocatingWorkerGetsFailureMarker) {
  auto st = Make({5, 7, 1, 0}, {WorkerStrategy::kEquivocate}, {});
  const auto r = Play(st, Task(2));
  ExpectRoundInvariants(r, st);
  EXPECT_FALSE(r.answers[4].has_value());
  EXPECT_EQ(r.faulty.count(Worker(4)), 1u);
  EXPECT_NE(r.selected, 4u);
  EXPECT_FALSE(r.matrix.Get(4, 0).has_value());
}

TEST(RunRound, SilentWorkerIsAbsent) {
  auto st = Make({5, 5, 1, 0}, {WorkerStrategy::kSilence}, {});
  const auto r = Play(st, Task(3));
  ExpectRoundInvariants(r, st);
  EXPECT_FALSE(r.answers[4].has_value());
  EXPECT_TRUE(r.faulty.empty());
  EXPECT_EQ(r.robust_scores.count(4), 0u);
}

TEST(RunRound, SilentEvaluatorsLeaveRowsMissing) {
  auto st = Make({5, 9, 0, 3}, {},
                 {EvaluatorStrategy::kSilence, EvaluatorStrategy::kSilence,
                  EvaluatorStrategy::kSilence});
  const auto r = Play(st, Task(4));
  ExpectRoundInvariants(r, st);
  EXPECT_EQ(r.matrix.evaluators(), (std::set<std::uint32_t>{0, 1, 2, 3, 4, 5}));
  AnswerView view;
  for (std::uint32_t i = 0; i < 5; ++i) view[i] = *r.answers[i];
  EXPECT_EQ(PhaseDecide(r.matrix, view, r.ledger_head_before, st.scenario.gm).selected,
            r.selected);
}

TEST(RunRound, EquivocatingEvaluatorConvicted) {
  auto st = Make({4, 7, 0, 1}, {}, {EvaluatorStrategy::kEquivocate});
  const auto r = Play(st, Task(5));
  ExpectRoundInvariants(r, st);
  EXPECT_EQ(r.faulty.count(Evaluator(6)), 1u);
  EXPECT_EQ(r.matrix.evaluators().count(6), 0u);
}

TEST(RunRound, CollusionAgainstUnanimousHonestMajorityFails) {
  // 15 evaluators, 6 colluding for an ad-injecting worker; honest evaluators
  // are noiseless and therefore unanimous.
  auto st = Make({6, 15, 1, 6}, {WorkerStrategy::kAdInjection},
                 std::vector<EvaluatorStrategy>(6, EvaluatorStrategy::kCollude), {5}, 3, 0.0);
  for (int k = 0; k < 5; ++k) {
    const auto r = Play(st, Task(k));
    ExpectRoundInvariants(r, st);
    EXPECT_NE(r.selected, 5u);
    EXPECT_NE(r.selected_answer().content.find("Final answer"), std::string::npos);
    EXPECT_EQ(r.selected_answer().content.find("Sponsored"), std::string::npos);
  }
}

TEST(RunRound, RandomFaultsWithinBoundKeepInvariants) {
  testgen::ForAll(25, 31, [](testgen::Gen& g, int run) {
    GroupConfig cfg;
    cfg.n_workers = static_cast<std::uint32_t>(g.Int(3, 8));
    cfg.n_evaluators = static_cast<std::uint32_t>(g.Int(3, 11));
    const int bw = static_cast<int>((cfg.n_workers - 1) / 2) - 1;
    const int be = static_cast<int>((cfg.n_evaluators - 1) / 2) - 1;
    cfg.f_workers = static_cast<std::uint32_t>(bw > 0 ? g.Int(0, bw) : 0);
    cfg.f_evaluators = static_cast<std::uint32_t>(be > 0 ? g.Int(0, be) : 0);
    std::vector<WorkerStrategy> ws;
    for (std::uint32_t i = 0; i < cfg.f_workers; ++i) {
      ws.push_back(static_cast<WorkerStrategy>(g.Int(0, 3)));
    }
    std::vector<EvaluatorStrategy> es;
    for (std::uint32_t i = 0; i < cfg.f_evaluators; ++i) {
      es.push_back(static_cast<EvaluatorStrategy>(g.Int(0, 3)));
    }
    std::set<std::uint32_t> roster;
    for (std::uint32_t i = cfg.n_workers - cfg.f_workers; i < cfg.n_workers; ++i) roster.insert(i);
    auto st = Make(cfg, ws, es, roster, static_cast<std::uint64_t>(run) + 100);
    const auto r = Play(st, Task(run));
    ExpectRoundInvariants(r, st);
    EXPECT_EQ(r.decisions.size(), cfg.n_evaluators - cfg.f_evaluators);
  });
}

TEST(Scenario, ValidateRejectsInconsistentSetups) {
  auto st = Make({3, 3, 0, 0}, {}, {});
  EXPECT_NO_THROW(st.scenario.Validate());
  auto bad = st.scenario;
  bad.workers.pop_back();
  EXPECT_THROW(bad.Validate(), Error);
  bad = st.scenario;
  bad.group.f_workers = 1;
  EXPECT_THROW(bad.Validate(), Error);
  bad = st.scenario;
  bad.generation_timeout_ms = 0.0;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(Answer, EncodeDecodeRoundTrip) {
  Answer a{Worker(3), "task-1", "Final answer: 5", {}, agents::LatentTruth::FromQuality(70)};
  a.signature[0] = 9;
  EXPECT_EQ(Answer::Decode(a.Encode()), a);
  a.latent.reset();
  EXPECT_EQ(Answer::Decode(a.Encode()), a);
}

TEST(EvaluationMatrix, SetGetDropAndDigest) {
  EvaluationMatrix m;
  m.Set(0, 1, ScoreVector::FromTotal(40));
  EXPECT_THROW(m.Set(0, 1, ScoreVector::FromTotal(40)), Error);
  m.Set(1, 2, ScoreVector::FromTotal(60));
  const auto d = m.digest();
  EXPECT_EQ(m.Column(0).size(), 1u);
  m.DropEvaluator(2);
  EXPECT_FALSE(m.Get(1, 2).has_value());
  EXPECT_NE(m.digest(), d);
}

}  // namespace
}  // namespace decentllms::protocol
