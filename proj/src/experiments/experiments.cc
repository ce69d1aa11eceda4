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

#include "experiments/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "aggregation/oracle.h"
#include "agents/backend.h"
#include "baselines/baselines.h"
#include "core/error.h"
#include "experiments/reference_snapshot.h"
#include "protocol/protocol.h"
#include "simnet/keyring.h"

namespace decentllms::experiments {

using protocol::ConsensusRound;

namespace {

namespace ref = reference_snapshot;

std::string Padded(std::string_view prefix, std::uint32_t r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04u", r);
  return std::string(prefix) + buf;
}

Prompt SyntheticTask(std::string_view prefix, std::uint32_t r) {
  Prompt p;
  p.id = Padded(prefix, r);
  p.text = "Synthetic task " + std::to_string(r) +
           ": work through the problem and state the final answer.";
  p.ground_truth_label = std::to_string(100 + r);
  return p;
}

Report NewReport(const ScenarioConfig& c, std::vector<std::string> columns) {
  Report r;
  r.scenario = std::string(Name(c.kind));
  r.config_json = c.ToJson();
  r.columns = std::move(columns);
  return r;
}

ledger::Chain MakeChain(const simnet::Keyring& keys, std::uint32_t n_evaluators) {
  std::vector<PublicKey> pks;
  for (std::uint32_t j = 0; j < n_evaluators; ++j) pks.push_back(keys.public_key(Evaluator(j)));
  return ledger::Chain(std::move(pks));
}

ledger::Chain& ChainNamed(Report& report, const std::string& name,
                          const simnet::Keyring& keys, std::uint32_t n_evaluators) {
  for (auto& [n, chain] : report.chains) {
    if (n == name) return chain;
  }
  report.chains.emplace_back(name, MakeChain(keys, n_evaluators));
  return report.chains.back().second;
}

double Scalar(const ConsensusRound& r, std::uint32_t w) { return r.robust_scores.at(w).scalar; }

// Per-round properties shared by every experiment.
void CheckRound(Report& report, const protocol::Scenario& s, const ConsensusRound& r) {
  report.Invariant("honest_agreement", r.honest_agreement);
  report.Invariant("latency_equals_phase_sum",
                   std::abs(r.latency_ms - r.phase_times.total()) <=
                       1e-9 * std::max(1.0, r.latency_ms));
  report.Invariant("single_score_consensus_round", r.score_consensus_rounds == 1);
  report.Invariant("ledger_appended", r.block_hash.has_value());
  bool optimal = true;
  for (const auto& [w, score] : r.robust_scores) optimal = optimal && Scalar(r, r.selected) >= score.scalar;
  report.Invariant("selection_optimal", optimal);
  const auto honest = s.HonestEvaluators().size();
  if (2 * honest > s.group.n_evaluators) {
    report.Invariant("user_accepts_selected", r.user_accepted_worker == r.selected);
  }
}

ConsensusRound Play(const Prompt& prompt, const protocol::Scenario& scenario,
                    const simnet::Keyring& keys, ledger::Chain& chain, Report& report,
                    const std::string& label) {
  simnet::Network net(scenario.latency.network_round_ms);
  auto round = protocol::RunRound(prompt, scenario, keys, net, chain);
  report.AppendTranscript(label, net);
  CheckRound(report, scenario, round);
  return round;
}

void VerifyChains(Report& report) {
  for (const auto& [name, chain] : report.chains) {
    const auto v = ledger::VerifyChain(chain.blocks(), chain.evaluator_keys());
    report.Invariant("ledger_verifies", v.ok);
  }
}

std::string Bool(bool b) { return b ? "1" : "0"; }

std::uint32_t LatentRank(const std::vector<double>& q, std::size_t who) {
  return 1 + static_cast<std::uint32_t>(
                 std::count_if(q.begin(), q.end(), [&](double x) { return x > q[who]; }));
}

adversary::AdversaryStrategy WithColluders(adversary::AdversaryStrategy a, std::uint32_t k,
                                           adversary::EvaluatorStrategy s) {
  a.evaluator_strategies.assign(k, s);
  return a;
}

}  // namespace

Report RunAccuracy(const ScenarioConfig& c) {
  c.Validate();
  Report report = NewReport(
      c, {"task", "selected", "selected_quality", "selected_correct", "selected_latent_rank",
          "two_thirds_worker", "two_thirds_rank", "two_thirds_correct", "majority_worker",
          "majority_rank", "majority_correct", "latency_ms"});
  const auto scenario = BuildScenario(c, c.group, c.adversary);
  const auto keys = simnet::Keyring::Generate(c.seed, c.group);
  auto& chain = ChainNamed(report, "main", keys, c.group.n_evaluators);

  std::uint32_t ok_d = 0, ok_t = 0, ok_m = 0;
  double rank_sum = 0.0;
  for (std::uint32_t r = 0; r < c.repetitions; ++r) {
    const auto prompt = SyntheticTask("task-", r);
    const auto round = Play(prompt, scenario, keys, chain, report, prompt.id);

    std::vector<std::uint32_t> ids;
    std::vector<double> q;
    std::vector<bool> correct;
    std::size_t sel = 0;
    for (std::uint32_t w = 0; w < round.answers.size(); ++w) {
      const auto& a = round.answers[w];
      if (!a || !a->latent) continue;
      if (w == round.selected) sel = ids.size();
      ids.push_back(w);
      q.push_back(a->latent->true_quality);
      correct.push_back(a->latent->is_correct);
    }
    if (q.empty()) throw Error(ErrorCode::kInvariant, "accuracy run needs latent truth");

    // The leader proposes the quorum-rank answer by latent quality.
    baselines::BaselineInput in;
    in.qualities = q;
    in.schedule = baselines::LeaderSchedule::Sequential(static_cast<std::uint32_t>(q.size()), 0);
    in.policy = baselines::ProposalPolicy::kQuorumRank;
    const auto two = baselines::RunRotatingLeaderQuality(in, c.latency);
    const auto maj = baselines::RunFixedLeaderDebate(in, c.latency);
    report.Invariant("baselines_reach_consensus", two.consensus_reached && maj.consensus_reached);
    const auto t = static_cast<std::size_t>(two.selected_agent);
    const auto m = static_cast<std::size_t>(maj.selected_agent);

    ok_d += correct[sel];
    ok_t += correct[t];
    ok_m += correct[m];
    rank_sum += LatentRank(q, sel);
    report.AddRow({prompt.id, std::to_string(round.selected), Num(q[sel]), Bool(correct[sel]),
                   std::to_string(LatentRank(q, sel)), std::to_string(ids[t]),
                   std::to_string(two.selected_rank), Bool(correct[t]), std::to_string(ids[m]),
                   std::to_string(maj.selected_rank), Bool(correct[m]), Num(round.latency_ms)});
  }
  VerifyChains(report);

  const double n = c.repetitions;
  const double acc_d = ok_d / n, acc_t = ok_t / n, acc_m = ok_m / n;
  report.aggregates["tasks"] = c.repetitions;
  report.aggregates["accuracy_decentllms"] = acc_d;
  report.aggregates["accuracy_two_thirds"] = acc_t;
  report.aggregates["accuracy_majority"] = acc_m;
  report.aggregates["gap_vs_majority_pp"] = 100.0 * (ok_d - static_cast<double>(ok_m)) / n;
  report.aggregates["mean_selected_latent_rank"] = rank_sum / n;
  report.aggregates["two_thirds_rank"] =
      baselines::QuorumRankSelection(c.group.n_workers, baselines::Quorum::kTwoThirds);
  report.aggregates["majority_rank"] =
      baselines::QuorumRankSelection(c.group.n_workers, baselines::Quorum::kMajority);
  report.Check("accuracy_ordering", ok_d >= ok_t && ok_t >= ok_m);
  report.Check("gap_vs_majority_at_least_5pp", 100 * (ok_d - static_cast<double>(ok_m)) >= 5 * n);
  return report;
}

Report RunLatency(const ScenarioConfig& c) {
  c.Validate();
  Report report = NewReport(
      c, {"rep", "f", "decentllms_ms", "generation_ms", "evaluation_ms", "consensus_ms",
          "score_consensus_rounds", "fixed_leader_ms", "fixed_leader_rounds",
          "fixed_leader_leaders", "fixed_leader_ok", "rotating_leader_ms",
          "rotating_leader_rounds", "rotating_leader_leaders", "rotating_leader_ok"});
  const std::uint32_t n_e = c.group.n_evaluators;
  std::vector<double> d_sum(c.latency_sweep.max_f + 1, 0.0), fl_sum = d_sum, rl_sum = d_sum;

  for (std::uint32_t r = 0; r < c.repetitions; ++r) {
    const auto prompt = SyntheticTask("latency-", r);
    double d0 = 0.0;
    std::optional<baselines::BaselineOutcome> prev_fixed, prev_rot;
    for (std::uint32_t f = 0; f <= c.latency_sweep.max_f; ++f) {
      GroupConfig g = c.group;
      g.f_evaluators = f;
      const auto adv = WithColluders(c.adversary, f, c.latency_sweep.strategy);
      const auto scenario = BuildScenario(c, g, adv);
      const auto keys = simnet::Keyring::Generate(c.seed, g);
      auto& chain = ChainNamed(report, "f" + std::to_string(f), keys, n_e);
      const auto round =
          Play(prompt, scenario, keys, chain, report, prompt.id + "/f" + std::to_string(f));

      // Baseline agents hold their own answers; k = f Byzantine leaders go
      // first.
      baselines::BaselineInput in;
      for (std::uint32_t j = 0; j < n_e; ++j) {
        Rng rng = DeriveRng(c.seed, "baseline/" + prompt.id, Evaluator(j));
        in.qualities.push_back(
            agents::MockGenerate(prompt, c.workers[j % c.group.n_workers], rng)
                .latent->true_quality);
      }
      in.schedule = baselines::LeaderSchedule::Sequential(n_e, f);
      in.policy = baselines::ProposalPolicy::kQuorumRank;
      in.base_ms = round.phase_times.generation_ms + round.phase_times.evaluation_ms;
      const auto fixed = baselines::RunFixedLeaderDebate(in, c.latency);
      const auto rot = baselines::RunRotatingLeaderQuality(in, c.latency);

      if (f == 0) d0 = round.latency_ms;
      report.Invariant("decentllms_constant_in_f", round.latency_ms == d0);
      report.Invariant("baselines_reach_consensus",
                       fixed.consensus_reached && rot.consensus_reached);
      auto near = [](double a, double b) { return std::abs(a - b) <= 1e-6; };
      if (prev_fixed) {
        report.Invariant("fixed_leader_step_three_debate_rounds",
                         fixed.rounds_used == prev_fixed->rounds_used + 3 &&
                             near(fixed.latency_ms - prev_fixed->latency_ms,
                                  3 * c.latency.debate_round_ms));
        report.Invariant("rotating_leader_step_one_round",
                         rot.rounds_used == prev_rot->rounds_used + 1 &&
                             near(rot.latency_ms - prev_rot->latency_ms,
                                  c.latency.quality_round_ms));
      }
      prev_fixed = fixed;
      prev_rot = rot;
      d_sum[f] += round.latency_ms;
      fl_sum[f] += fixed.latency_ms;
      rl_sum[f] += rot.latency_ms;
      report.AddRow({std::to_string(r), std::to_string(f), Num(round.latency_ms),
                     Num(round.phase_times.generation_ms), Num(round.phase_times.evaluation_ms),
                     Num(round.phase_times.consensus_ms),
                     std::to_string(round.score_consensus_rounds), Num(fixed.latency_ms),
                     std::to_string(fixed.rounds_used), std::to_string(fixed.leaders_tried),
                     Bool(fixed.consensus_reached), Num(rot.latency_ms),
                     std::to_string(rot.rounds_used), std::to_string(rot.leaders_tried),
                     Bool(rot.consensus_reached)});
    }
  }
  VerifyChains(report);

  auto curve = nlohmann::ordered_json::array();
  for (std::uint32_t f = 0; f <= c.latency_sweep.max_f; ++f) {
    curve.push_back({{"f", f},
                     {"decentllms_ms", d_sum[f] / c.repetitions},
                     {"fixed_leader_ms", fl_sum[f] / c.repetitions},
                     {"rotating_leader_ms", rl_sum[f] / c.repetitions}});
  }
  report.aggregates["mean_latency_by_f"] = curve;
  const double at0 = d_sum[0] / c.repetitions;
  report.aggregates["decentllms_ms_at_f0"] = at0;
  report.Check("calibration_near_221s", std::abs(at0 - 221'000.0) <= 0.05 * 221'000.0);
  return report;
}

Report RunSnapshot(const ScenarioConfig& c) {
  c.Validate();
  const bool table = c.snapshot == SnapshotMode::kReference;
  std::vector<std::string> cols = {"rep", "worker", "byzantine"};
  for (std::uint32_t j = 0; j < c.group.n_evaluators; ++j) {
    cols.push_back("e" + std::to_string(j) + "_total");
  }
  for (const char* s : {"robust_scalar", "reference_robust", "rank", "selected", "correct"}) {
    cols.push_back(s);
  }
  Report report = NewReport(c, cols);
  report.aggregates["mode"] = table ? "reference" : "simulated";
  if (table) report.aggregates["note"] = "reference totals split evenly across criteria";

  auto scenario = BuildScenario(c, c.group, c.adversary);
  if (table) {
    for (std::uint32_t j = 0; j < ref::kEvaluators; ++j) {
      Row row;
      for (std::uint32_t w = 0; w < ref::kWorkers; ++w) {
        row.emplace(w, ScoreVector::FromTotal(ref::kTotals[j][w]));
      }
      scenario.evaluators[j] = std::make_shared<agents::ScriptedEvaluator>(row);
    }
  }
  const auto keys = simnet::Keyring::Generate(c.seed, c.group);
  auto& chain = ChainNamed(report, "main", keys, c.group.n_evaluators);

  auto selections = nlohmann::ordered_json::array();
  for (std::uint32_t r = 0; r < c.repetitions; ++r) {
    const auto prompt = SyntheticTask("snapshot-", r);
    const auto round = Play(prompt, scenario, keys, chain, report, prompt.id);

    double top_honest = -1.0, top_byz = -1.0;
    for (const auto& [w, s] : round.robust_scores) {
      const bool byz = scenario.IsByzantine(Worker(w));
      (byz ? top_byz : top_honest) = std::max(byz ? top_byz : top_honest, s.scalar);
    }
    const bool below = top_byz < top_honest;
    if (table) report.Invariant("byzantine_below_top_honest", below);
    else report.Check("byzantine_below_top_honest", below);
    if (table) {
      report.Check("ranking_matches_reference",
                   std::equal(round.ranking.begin(), round.ranking.end(),
                              ref::kRanking.begin(), ref::kRanking.end()));
    }

    for (std::uint32_t w = 0; w < c.group.n_workers; ++w) {
      std::vector<std::string> row = {std::to_string(r), "w" + std::to_string(w),
                                      Bool(scenario.IsByzantine(Worker(w)))};
      for (std::uint32_t j = 0; j < c.group.n_evaluators; ++j) {
        const auto v = round.matrix.Get(w, j);
        row.push_back(v ? Num(v->total()) : "");
      }
      const auto it = round.robust_scores.find(w);
      row.push_back(it == round.robust_scores.end() ? "" : Num(it->second.scalar));
      row.push_back(table ? Num(ref::kRobustScores[w]) : "");
      const auto pos = std::find(round.ranking.begin(), round.ranking.end(), w);
      row.push_back(pos == round.ranking.end()
                        ? ""
                        : std::to_string(pos - round.ranking.begin() + 1));
      row.push_back(Bool(w == round.selected));
      const auto& a = round.answers[w];
      row.push_back(table ? Bool(ref::kCorrect[w])
                          : (a && a->latent ? Bool(a->latent->is_correct) : ""));
      report.AddRow(std::move(row));
    }
    nlohmann::ordered_json s = {{"rep", r}, {"selected", round.selected}};
    s["ranking"] = round.ranking;
    selections.push_back(s);
  }
  VerifyChains(report);
  report.aggregates["rounds"] = selections;
  return report;
}

ScoreVector RandomSplit(double total, Rng& rng) {
  if (!(total >= 0.0 && total <= kNumCriteria * kCriterionMax)) {
    throw InvalidArgument("split total must be in [0, 100]");
  }
  std::exponential_distribution<double> exp(1.0);
  std::array<double, kNumCriteria> w{};
  for (auto& x : w) x = exp(rng) + 1e-9;
  std::array<double, kNumCriteria> out{};
  std::array<bool, kNumCriteria> capped{};
  double remaining = total;
  for (std::size_t pass = 0; pass < kNumCriteria; ++pass) {
    double weight = 0.0;
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
      if (!capped[i]) weight += w[i];
    }
    bool changed = false;
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
      if (capped[i]) continue;
      out[i] = remaining * w[i] / weight;
    }
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
      if (!capped[i] && out[i] > kCriterionMax) {
        capped[i] = true;
        out[i] = kCriterionMax;
        remaining -= kCriterionMax;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return ScoreVector::Clamped(out);
}

std::vector<Row> UnanimousRows(std::uint32_t honest) {
  Row row;
  for (std::uint32_t w = 0; w < ref::kWorkers; ++w) {
    row.emplace(w, ScoreVector::FromTotal(ref::HonestMean(w)));
  }
  return std::vector<Row>(honest, row);
}

std::vector<Row> SpreadRows(std::uint32_t honest, std::uint64_t seed, std::uint32_t rep) {
  std::vector<Row> rows;
  for (std::uint32_t j = 0; j < honest; ++j) {
    Rng rng = DeriveRng(seed, "spread/" + std::to_string(rep), Evaluator(j));
    Row row;
    for (std::uint32_t w = 0; w < ref::kWorkers; ++w) {
      row.emplace(w, RandomSplit(ref::kTotals[j % ref::kHonestEvaluators][w], rng));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<std::uint32_t> FlipPoint(const std::vector<ThresholdStep>& steps, bool oracle) {
  for (const auto& s : steps) {
    if (oracle ? s.oracle_byzantine_wins : s.byzantine_wins) return s.colluders;
  }
  return std::nullopt;
}

Report RunThreshold(const ScenarioConfig& c) {
  c.Validate();
  if (c.group.n_workers != ref::kWorkers) {
    throw ConfigError("threshold sweep replays the 10-worker snapshot totals");
  }
  Report report = NewReport(
      c, {"variant", "rep", "colluders", "n_evaluators", "bound_valid", "selected",
          "byzantine_wins", "byzantine_scalar", "top_honest_scalar", "oracle_byzantine_wins",
          "oracle_byzantine_scalar", "oracle_top_honest_scalar"});
  const auto h = c.threshold.honest_evaluators;
  const auto& roster = c.adversary.collusion_roster;

  std::vector<std::pair<std::string, bool>> variants;
  if (c.threshold.variant != ThresholdVariant::kSpread) variants.emplace_back("unanimous", false);
  if (c.threshold.variant != ThresholdVariant::kUnanimous) variants.emplace_back("spread", true);

  auto flips = nlohmann::ordered_json::array();
  for (const auto& [variant, spread] : variants) {
    for (std::uint32_t r = 0; r < c.repetitions; ++r) {
      const auto rows = spread ? SpreadRows(h, c.seed, r) : UnanimousRows(h);
      const auto prompt = SyntheticTask("threshold-", r);
      std::vector<ThresholdStep> steps;
      for (std::uint32_t k = 0; k <= c.threshold.max_colluders; ++k) {
        GroupConfig g = c.group;
        g.n_evaluators = h + k;
        g.f_evaluators = k;
        auto scenario =
            BuildScenario(c, g, WithColluders(c.adversary, k, adversary::EvaluatorStrategy::kCollude));
        for (std::uint32_t j = 0; j < h; ++j) {
          scenario.evaluators[j] = std::make_shared<agents::ScriptedEvaluator>(rows[j]);
        }
        const auto keys = simnet::Keyring::Generate(c.seed, g);
        auto& chain = ChainNamed(report, variant + "-k" + std::to_string(k), keys, g.n_evaluators);
        const auto round = Play(prompt, scenario, keys, chain, report,
                                variant + "/" + prompt.id + "/k" + std::to_string(k));

        ThresholdStep s;
        s.colluders = k;
        s.selected = round.selected;
        s.byzantine_wins = roster.count(round.selected) != 0;
        s.byzantine_scalar = s.top_honest_scalar = s.oracle_byzantine_scalar =
            s.oracle_top_honest_scalar = -1.0;
        for (const auto& [w, score] : round.robust_scores) {
          const auto column = round.matrix.Column(w);
          const auto o = aggregation::GeometricMedianOracle(column);
          double os = 0.0;
          for (double x : o) os += x;
          const bool byz = roster.count(w) != 0;
          auto& a = byz ? s.byzantine_scalar : s.top_honest_scalar;
          auto& b = byz ? s.oracle_byzantine_scalar : s.oracle_top_honest_scalar;
          a = std::max(a, score.scalar);
          b = std::max(b, os);
        }
        s.oracle_byzantine_wins = s.oracle_byzantine_scalar > s.oracle_top_honest_scalar;
        if (!spread && k < h) report.Invariant("unanimous_honest_majority_holds", !s.byzantine_wins);
        report.AddRow({variant, std::to_string(r), std::to_string(k),
                       std::to_string(g.n_evaluators), Bool(ValidateConfig(g).evaluators.valid),
                       std::to_string(s.selected), Bool(s.byzantine_wins),
                       Num(s.byzantine_scalar), Num(s.top_honest_scalar),
                       Bool(s.oracle_byzantine_wins), Num(s.oracle_byzantine_scalar),
                       Num(s.oracle_top_honest_scalar)});
        steps.push_back(s);
      }
      const auto kstar = FlipPoint(steps, false);
      const auto kstar_oracle = FlipPoint(steps, true);
      report.Invariant("flip_point_matches_oracle", kstar == kstar_oracle);
      if (spread) report.Check("spread_flip_within_sweep", kstar.has_value());
      nlohmann::ordered_json f = {{"variant", variant}, {"rep", r}};
      f["k_star"] = kstar ? nlohmann::ordered_json(*kstar) : nlohmann::ordered_json();
      f["k_star_oracle"] =
          kstar_oracle ? nlohmann::ordered_json(*kstar_oracle) : nlohmann::ordered_json();
      flips.push_back(f);
    }
  }
  VerifyChains(report);
  report.aggregates["flip_points"] = flips;
  return report;
}

Report RunExperiment(const ScenarioConfig& config) {
  switch (config.kind) {
    case ExperimentKind::kAccuracy: return RunAccuracy(config);
    case ExperimentKind::kLatency: return RunLatency(config);
    case ExperimentKind::kSnapshot: return RunSnapshot(config);
    case ExperimentKind::kThreshold: return RunThreshold(config);
  }
  throw Error(ErrorCode::kInternal, "unhandled experiment");
}

}  // namespace decentllms::experiments
