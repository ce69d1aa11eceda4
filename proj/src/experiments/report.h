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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core/crypto.h"
#include "ledger/chain.h"
#include "simnet/network.h"

namespace decentllms::experiments {

// Shortest decimal that reads back to the same double.
std::string Num(double v);

struct Report {
  std::string scenario;
  std::string config_json;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json aggregates = nlohmann::ordered_json::object();
  // Hard properties; any false one makes the run fail.
  std::vector<std::pair<std::string, bool>> invariants;
  // Statistical or calibration expectations; reported, never fatal.
  std::vector<std::pair<std::string, bool>> checks;
  // NDJSON: a {"round": label} header line, then that round's deliveries.
  std::string transcript;
  std::vector<std::pair<std::string, ledger::Chain>> chains;

  // Throws if the row width differs from columns.
  void AddRow(std::vector<std::string> row);
  // Repeated names are AND-ed together.
  void Invariant(const std::string& name, bool ok);
  void Check(const std::string& name, bool ok);
  void AppendTranscript(const std::string& label, const simnet::Network& net);

  bool invariants_ok() const;
  Digest TranscriptDigest() const { return Hash(transcript); }

  std::string Csv() const;
  std::string Json() const;
  // report.csv, report.json, transcript.ndjson, config.json, and one chain
  // directory per ledger under chain/.
  void Write(const std::filesystem::path& dir) const;
};

}  // namespace decentllms::experiments
