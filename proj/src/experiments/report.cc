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

#include "experiments/report.h"

#include <charconv>
#include <fstream>

#include "core/error.h"

namespace decentllms::experiments {

namespace {

void Upsert(std::vector<std::pair<std::string, bool>>& list, const std::string& name,
            bool ok) {
  for (auto& [n, v] : list) {
    if (n == name) {
      v = v && ok;
      return;
    }
  }
  list.emplace_back(name, ok);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void WriteText(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
}

}  // namespace

std::string Num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::kInternal, "number formatting failed");
  return std::string(buf, end);
}

void Report::AddRow(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::kInternal, "report row width does not match its columns");
  }
  rows.push_back(std::move(row));
}

void Report::Invariant(const std::string& name, bool ok) { Upsert(invariants, name, ok); }
void Report::Check(const std::string& name, bool ok) { Upsert(checks, name, ok); }

void Report::AppendTranscript(const std::string& label, const simnet::Network& net) {
  transcript += nlohmann::json({{"round", label}}).dump() + "\n";
  transcript += net.TranscriptNdjson();
}

bool Report::invariants_ok() const {
  for (const auto& [n, ok] : invariants) {
    if (!ok) return false;
  }
  return true;
}

std::string Report::Csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + CsvField(columns[i]);
  }
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + CsvField(r[i]);
    out += "\n";
  }
  return out;
}

std::string Report::Json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["rows"] = rows.size();
  j["aggregates"] = aggregates;
  auto flags = [](const auto& list) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [n, ok] : list) o[n] = ok;
    return o;
  };
  j["invariants"] = flags(invariants);
  j["invariants_ok"] = invariants_ok();
  j["checks"] = flags(checks);
  nlohmann::ordered_json heads = nlohmann::ordered_json::object();
  for (const auto& [name, chain] : chains) {
    heads[name] = {{"height", chain.blocks().size()}, {"head", chain.head().Hex()}};
  }
  j["ledgers"] = heads;
  j["transcript_digest"] = TranscriptDigest().Hex();
  return j.dump(2) + "\n";
}

void Report::Write(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  WriteText(dir / "report.csv", Csv());
  WriteText(dir / "report.json", Json());
  WriteText(dir / "transcript.ndjson", transcript);
  WriteText(dir / "config.json", config_json + "\n");
  for (const auto& [name, chain] : chains) chain.Save(dir / "chain" / name);
}

}  // namespace decentllms::experiments
