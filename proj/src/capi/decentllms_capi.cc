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

#include "decentllms/decentllms.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "aggregation/geometric_median.h"
#include "core/crypto.h"
#include "core/error.h"
#include "experiments/config.h"
#include "experiments/experiments.h"
#include "ledger/chain.h"

using namespace decentllms;

struct dllm_scenario {
  experiments::ScenarioConfig config;
  std::string json;
};

struct dllm_report {
  experiments::Report report;
  std::string csv;
  std::string json;
  std::string digest;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
dllm_status Guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return DLLM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<dllm_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DLLM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DLLM_ERR_INTERNAL;
  }
}

void Require(bool cond, const char* what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace

extern "C" {

const char* dllm_version(void) { return "0.1.0"; }

const char* dllm_status_string(dllm_status s) {
  switch (s) {
    case DLLM_OK: return "ok";
    case DLLM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DLLM_ERR_CONFIG: return "configuration error";
    case DLLM_ERR_PRECONDITION: return "precondition failed";
    case DLLM_ERR_IO: return "i/o error";
    case DLLM_ERR_PARSE: return "parse error";
    case DLLM_ERR_INVARIANT: return "invariant violated";
    case DLLM_ERR_NO_ANSWER: return "no answer delivered";
    case DLLM_ERR_REJECTED: return "rejected";
    case DLLM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dllm_last_error(void) { return g_last_error.c_str(); }

dllm_status dllm_scenario_create_default(const char* name, dllm_scenario** out) {
  return Guard([&] {
    Require(name && out, "null argument");
    auto c = experiments::ScenarioConfig::Default(experiments::ParseExperimentKind(name));
    *out = new dllm_scenario{std::move(c), {}};
  });
}

dllm_status dllm_scenario_create_from_json(const char* json, dllm_scenario** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new dllm_scenario{experiments::ScenarioConfig::FromJson(json), {}};
  });
}

dllm_status dllm_scenario_load(const char* path, dllm_scenario** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new dllm_scenario{experiments::ScenarioConfig::Load(path), {}};
  });
}

void dllm_scenario_destroy(dllm_scenario* scenario) { delete scenario; }

dllm_status dllm_scenario_set_seed(dllm_scenario* s, uint64_t seed) {
  return Guard([&] {
    Require(s, "null scenario");
    s->config.seed = seed;
  });
}

dllm_status dllm_scenario_set_repetitions(dllm_scenario* s, uint32_t reps) {
  return Guard([&] {
    Require(s, "null scenario");
    if (reps == 0) throw ConfigError("repetitions must be >= 1");
    s->config.repetitions = reps;
  });
}

dllm_status dllm_scenario_to_json(dllm_scenario* s, const char** out) {
  return Guard([&] {
    Require(s && out, "null argument");
    s->json = s->config.ToJson();
    *out = s->json.c_str();
  });
}

dllm_status dllm_run_experiment(const dllm_scenario* s, dllm_report** out) {
  return Guard([&] {
    Require(s && out, "null argument");
    auto r = std::make_unique<dllm_report>();
    r->report = experiments::RunExperiment(s->config);
    r->csv = r->report.Csv();
    r->json = r->report.Json();
    r->digest = r->report.TranscriptDigest().Hex();
    *out = r.release();
  });
}

void dllm_report_destroy(dllm_report* report) { delete report; }

dllm_status dllm_report_csv(const dllm_report* r, const char** out) {
  return Guard([&] {
    Require(r && out, "null argument");
    *out = r->csv.c_str();
  });
}

dllm_status dllm_report_json(const dllm_report* r, const char** out) {
  return Guard([&] {
    Require(r && out, "null argument");
    *out = r->json.c_str();
  });
}

dllm_status dllm_report_transcript_digest(const dllm_report* r, const char** out) {
  return Guard([&] {
    Require(r && out, "null argument");
    *out = r->digest.c_str();
  });
}

int dllm_report_invariants_ok(const dllm_report* r) {
  return r && r->report.invariants_ok() ? 1 : 0;
}

dllm_status dllm_report_write(const dllm_report* r, const char* dir) {
  return Guard([&] {
    Require(r && dir, "null argument");
    r->report.Write(dir);
  });
}

dllm_status dllm_verify_chain_dir(const char* dir, int* ok, int64_t* fault_height) {
  return Guard([&] {
    Require(dir && ok && fault_height, "null argument");
    const auto v = ledger::VerifyChainDirectory(dir);
    *ok = v.ok ? 1 : 0;
    *fault_height = v.fault_height ? static_cast<int64_t>(*v.fault_height) : -1;
    if (!v.ok) g_last_error = v.reason;
  });
}

dllm_status dllm_geometric_median(const double* points, size_t n, size_t dim, double* out) {
  return Guard([&] {
    Require(points && out, "null argument");
    Require(n > 0 && dim > 0, "need at least one point of dimension >= 1");
    std::vector<aggregation::Point> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i].assign(points + i * dim, points + (i + 1) * dim);
    const auto r = aggregation::GeometricMedian(pts);
    std::memcpy(out, r.point.data(), dim * sizeof(double));
  });
}

dllm_status dllm_sha256(const uint8_t* data, size_t len, char out_hex[65]) {
  return Guard([&] {
    Require(out_hex && (data || len == 0), "null argument");
    const auto hex = Hash(std::span<const std::uint8_t>(data, len)).Hex();
    std::memcpy(out_hex, hex.c_str(), 65);
  });
}

}  // extern "C"
