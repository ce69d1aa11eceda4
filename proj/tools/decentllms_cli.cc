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

// Command-line front end; talks to the library only through the C API.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "decentllms/decentllms.h"

namespace {

int Fail(dllm_status s) {
  std::fprintf(stderr, "error: %s: %s\n", dllm_status_string(s), dllm_last_error());
  return 2;
}

struct RunOptions {
  std::string config;
  std::uint64_t seed = 0;
  std::uint32_t reps = 0;
  std::string out;
};

int RunScenario(const std::string& name, const RunOptions& o, bool seed_set, bool reps_set) {
  dllm_scenario* sc = nullptr;
  dllm_status s = o.config.empty() ? dllm_scenario_create_default(name.c_str(), &sc)
                                   : dllm_scenario_load(o.config.c_str(), &sc);
  if (s != DLLM_OK) return Fail(s);
  const char* cfg = nullptr;
  if (dllm_scenario_to_json(sc, &cfg) == DLLM_OK &&
      std::string(cfg).find("\"scenario\": \"" + name + "\"") == std::string::npos) {
    std::fprintf(stderr, "error: config is not a %s scenario\n", name.c_str());
    dllm_scenario_destroy(sc);
    return 2;
  }
  if (seed_set && (s = dllm_scenario_set_seed(sc, o.seed)) != DLLM_OK) return Fail(s);
  if (reps_set && (s = dllm_scenario_set_repetitions(sc, o.reps)) != DLLM_OK) return Fail(s);

  dllm_report* rep = nullptr;
  s = dllm_run_experiment(sc, &rep);
  dllm_scenario_destroy(sc);
  if (s != DLLM_OK) return Fail(s);
  if (!o.out.empty() && (s = dllm_report_write(rep, o.out.c_str())) != DLLM_OK) {
    dllm_report_destroy(rep);
    return Fail(s);
  }
  const char* json = nullptr;
  dllm_report_json(rep, &json);
  std::fputs(json, stdout);
  const bool ok = dllm_report_invariants_ok(rep) == 1;
  dllm_report_destroy(rep);
  if (!ok) std::fprintf(stderr, "invariant violated; see report.json\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine-robust multi-agent consensus simulator"};
  app.set_version_flag("--version", dllm_version());
  app.require_subcommand(1);

  RunOptions opts;
  bool seed_set = false, reps_set = false;
  std::string ran;
  for (const char* name : {"accuracy", "latency", "snapshot", "threshold"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", opts.config, "scenario JSON; defaults if omitted")
        ->check(CLI::ExistingFile);
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { opts.seed = v; seed_set = true; }, "override seed");
    sub->add_option_function<std::uint32_t>(
        "--reps", [&](std::uint32_t v) { opts.reps = v; reps_set = true; },
        "override repetitions");
    sub->add_option("--out", opts.out, "output directory");
    sub->callback([&ran, name] { ran = name; });
  }

  std::string chain_dir;
  auto* verify = app.add_subcommand("verify-chain", "verify a saved ledger directory");
  verify->add_option("dir", chain_dir, "chain directory")->required();
  verify->callback([&ran] { ran = "verify-chain"; });

  std::string config_name;
  auto* print = app.add_subcommand("print-config", "print a scenario's default configuration");
  print->add_option("scenario", config_name, "accuracy, latency, snapshot or threshold")
      ->required()
      ->check(CLI::IsMember({"accuracy", "latency", "snapshot", "threshold"}));
  print->callback([&ran] { ran = "print-config"; });

  CLI11_PARSE(app, argc, argv);

  if (ran == "print-config") {
    dllm_scenario* sc = nullptr;
    dllm_status s = dllm_scenario_create_default(config_name.c_str(), &sc);
    if (s != DLLM_OK) return Fail(s);
    const char* json = nullptr;
    s = dllm_scenario_to_json(sc, &json);
    if (s == DLLM_OK) std::printf("%s\n", json);
    dllm_scenario_destroy(sc);
    return s == DLLM_OK ? 0 : Fail(s);
  }

  if (ran == "verify-chain") {
    int ok = 0;
    std::int64_t height = -1;
    dllm_status s = dllm_verify_chain_dir(chain_dir.c_str(), &ok, &height);
    if (s != DLLM_OK) return Fail(s);
    if (ok) {
      std::printf("ok\n");
      return 0;
    }
    std::printf("fault at height %lld: %s\n", static_cast<long long>(height),
                dllm_last_error());
    return 1;
  }
  return RunScenario(ran, opts, seed_set, reps_set);
}
