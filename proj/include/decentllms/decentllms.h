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

#ifndef DECENTLLMS_DECENTLLMS_H_
#define DECENTLLMS_DECENTLLMS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DLLM_API __declspec(dllexport)
#else
#define DLLM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dllm_status {
  DLLM_OK = 0,
  DLLM_ERR_INVALID_ARGUMENT = 1,
  DLLM_ERR_CONFIG = 2,
  DLLM_ERR_PRECONDITION = 3,
  DLLM_ERR_IO = 4,
  DLLM_ERR_PARSE = 5,
  DLLM_ERR_INVARIANT = 6,
  DLLM_ERR_NO_ANSWER = 7,
  DLLM_ERR_REJECTED = 8,
  DLLM_ERR_INTERNAL = 9
} dllm_status;

typedef struct dllm_scenario dllm_scenario;
typedef struct dllm_report dllm_report;

/* Library version, e.g. "0.1.0". */
DLLM_API const char* dllm_version(void);
DLLM_API const char* dllm_status_string(dllm_status status);
/* Message of the last failing call on this thread; empty if none. */
DLLM_API const char* dllm_last_error(void);

/* Scenario configuration. `name` is accuracy, latency, snapshot or
   threshold; the JSON document may be NULL for the shipped defaults. */
DLLM_API dllm_status dllm_scenario_create_default(const char* name, dllm_scenario** out);
DLLM_API dllm_status dllm_scenario_create_from_json(const char* json, dllm_scenario** out);
DLLM_API dllm_status dllm_scenario_load(const char* path, dllm_scenario** out);
DLLM_API void dllm_scenario_destroy(dllm_scenario* scenario);
DLLM_API dllm_status dllm_scenario_set_seed(dllm_scenario* scenario, uint64_t seed);
DLLM_API dllm_status dllm_scenario_set_repetitions(dllm_scenario* scenario, uint32_t reps);
/* Effective configuration as JSON. The string is owned by the scenario and
   valid until the next call on it. */
DLLM_API dllm_status dllm_scenario_to_json(dllm_scenario* scenario, const char** out);

/* Runs the scenario's experiment. */
DLLM_API dllm_status dllm_run_experiment(const dllm_scenario* scenario, dllm_report** out);
DLLM_API void dllm_report_destroy(dllm_report* report);
/* Strings are owned by the report. */
DLLM_API dllm_status dllm_report_csv(const dllm_report* report, const char** out);
DLLM_API dllm_status dllm_report_json(const dllm_report* report, const char** out);
DLLM_API dllm_status dllm_report_transcript_digest(const dllm_report* report, const char** out);
/* 1 when every invariant held. */
DLLM_API int dllm_report_invariants_ok(const dllm_report* report);
DLLM_API dllm_status dllm_report_write(const dllm_report* report, const char* dir);

/* Verifies a saved chain directory. *ok is 1 when it verifies; otherwise
   *fault_height is the first bad block, or -1 when the directory itself is
   unreadable. */
DLLM_API dllm_status dllm_verify_chain_dir(const char* dir, int* ok, int64_t* fault_height);

/* Geometric median of n points of dimension dim, row-major in `points`;
   writes dim values to `out`. */
DLLM_API dllm_status dllm_geometric_median(const double* points, size_t n, size_t dim,
                                           double* out);

/* SHA-256 of `len` bytes; writes 65 bytes of lowercase hex plus NUL. */
DLLM_API dllm_status dllm_sha256(const uint8_t* data, size_t len, char out_hex[65]);

#ifdef __cplusplus
}
#endif

#endif
