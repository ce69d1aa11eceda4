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

#include "protocol/types.h"

#include "core/error.h"
#include "core/serialize.h"
#include "json.hpp"

namespace decentllms::protocol {

Bytes Answer::SigningBytes() const {
  ByteWriter w;
  w.String("decentllms/answer");
  w.String(prompt_id);
  w.String(content);
  return std::move(w).bytes();
}

Bytes Answer::Encode() const {
  ByteWriter w;
  w.Agent(worker);
  w.String(prompt_id);
  w.String(content);
  w.Bytes(signature);
  w.Bool(latent.has_value());
  if (latent) {
    w.F64(latent->true_quality);
    w.Bool(latent->is_correct);
  }
  return std::move(w).bytes();
}

Answer Answer::Decode(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Answer a;
  a.worker = r.Agent();
  a.prompt_id = r.String();
  a.content = r.String();
  auto sig = r.Bytes();
  if (sig.size() != kSignatureSize) throw Error(ErrorCode::kParse, "bad answer signature");
  std::copy(sig.begin(), sig.end(), a.signature.begin());
  if (r.Bool()) {
    agents::LatentTruth t;
    t.true_quality = r.F64();
    t.is_correct = r.Bool();
    a.latent = t;
  }
  r.ExpectDone();
  return a;
}

void EvaluationMatrix::Set(std::uint32_t worker, std::uint32_t evaluator,
                           const ScoreVector& v) {
  if (!entries_.emplace(std::pair{worker, evaluator}, v).second) {
    throw InvalidArgument("duplicate matrix entry for (w" + std::to_string(worker) +
                          ", e" + std::to_string(evaluator) + ")");
  }
}

std::optional<ScoreVector> EvaluationMatrix::Get(std::uint32_t worker,
                                                 std::uint32_t evaluator) const {
  auto it = entries_.find({worker, evaluator});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<aggregation::Point> EvaluationMatrix::Column(std::uint32_t worker) const {
  std::vector<aggregation::Point> out;
  for (auto it = entries_.lower_bound({worker, 0});
       it != entries_.end() && it->first.first == worker; ++it) {
    const auto& c = it->second.components();
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

std::set<std::uint32_t> EvaluationMatrix::workers() const {
  std::set<std::uint32_t> out;
  for (const auto& [k, v] : entries_) out.insert(k.first);
  return out;
}

std::set<std::uint32_t> EvaluationMatrix::evaluators() const {
  std::set<std::uint32_t> out;
  for (const auto& [k, v] : entries_) out.insert(k.second);
  return out;
}

void EvaluationMatrix::DropEvaluator(std::uint32_t evaluator) {
  std::erase_if(entries_, [&](const auto& kv) { return kv.first.second == evaluator; });
}

Bytes EvaluationMatrix::Encode() const {
  ByteWriter w;
  w.U32(static_cast<std::uint32_t>(entries_.size()));
  for (const auto& [k, v] : entries_) {
    w.U32(k.first);
    w.U32(k.second);
    w.Scores(v);
  }
  return std::move(w).bytes();
}

Digest EvaluationMatrix::digest() const { return Hash(Encode()); }

bool Decision::operator==(const Decision& o) const {
  if (ranking != o.ranking || selected != o.selected) return false;
  if (robust_scores.size() != o.robust_scores.size()) return false;
  for (const auto& [w, s] : robust_scores) {
    auto it = o.robust_scores.find(w);
    if (it == o.robust_scores.end()) return false;
    if (it->second.vector != s.vector || it->second.scalar != s.scalar) return false;
  }
  return true;
}

std::string ConsensusRound::ToJson() const {
  nlohmann::ordered_json j;
  j["prompt"] = {{"id", prompt.id}, {"text", prompt.text}};
  j["ledger_head_before"] = ledger_head_before.Hex();
  auto& ans = j["answers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < answers.size(); ++i) {
    nlohmann::ordered_json a;
    a["worker"] = i;
    a["delivered"] = answers[i].has_value();
    if (answers[i]) {
      a["content"] = answers[i]->content;
      a["content_digest"] = Hash(answers[i]->content).Hex();
      if (answers[i]->latent) {
        a["true_quality"] = answers[i]->latent->true_quality;
        a["is_correct"] = answers[i]->latent->is_correct;
      }
    }
    ans.push_back(std::move(a));
  }
  auto& m = j["matrix"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : matrix.entries()) {
    m.push_back({{"worker", k.first},
                 {"evaluator", k.second},
                 {"scores", v.components()}});
  }
  j["matrix_digest"] = matrix.digest().Hex();
  auto& rs = j["robust_scores"] = nlohmann::ordered_json::array();
  for (const auto& [w, s] : robust_scores) {
    rs.push_back({{"worker", w}, {"vector", s.vector}, {"scalar", s.scalar}});
  }
  j["ranking"] = ranking;
  j["selected"] = selected;
  j["phase_times_ms"] = {{"generation", phase_times.generation_ms},
                         {"evaluation", phase_times.evaluation_ms},
                         {"consensus", phase_times.consensus_ms}};
  j["latency_ms"] = latency_ms;
  auto& f = j["faulty"] = nlohmann::ordered_json::array();
  for (const auto& a : faulty) f.push_back(a.ToString());
  j["score_consensus_rounds"] = score_consensus_rounds;
  j["honest_agreement"] = honest_agreement;
  j["user_matching_replies"] = user_matching_replies;
  j["user_accepted_worker"] = user_accepted_worker
                                  ? nlohmann::ordered_json(*user_accepted_worker)
                                  : nlohmann::ordered_json(nullptr);
  j["block_hash"] = block_hash ? nlohmann::ordered_json(block_hash->Hex())
                               : nlohmann::ordered_json(nullptr);
  if (!ledger_error.empty()) j["ledger_error"] = ledger_error;
  return j.dump();
}

}  // namespace decentllms::protocol
