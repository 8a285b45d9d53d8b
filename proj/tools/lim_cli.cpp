// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the C interface.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "lim/lim.h"

namespace {

int Report(lim_status status) {
  if (status == LIM_OK) return 0;
  std::fprintf(stderr, "lim: %s: %s\n", lim_status_name(status), lim_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice influence maximization experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lim_version());

  std::string config_path;
  std::string output;
  uint64_t seed = 0;
  uint64_t eval_runs = 0;
  uint32_t time_reps = 0;
  bool no_timing = false;
  auto* run = app.add_subcommand("run", "Run every (algorithm, budget) cell of a config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("-o,--output", output, "CSV path (overrides the config)");
  auto* seed_opt = run->add_option("--seed", seed, "Master seed");
  run->add_option("--eval-runs", eval_runs, "Simulations per spread estimate");
  run->add_option("--time-reps", time_reps, "Timed repetitions per cell");
  run->add_flag("--no-timing", no_timing, "Write NA runtimes and time a single repetition");

  std::string graph_model;
  uint32_t nodes = 0;
  uint64_t edges = 0;
  uint64_t graph_seed = 0;
  std::string graph_out;
  auto* gen = app.add_subcommand("gen-graph", "Write a synthetic edge list");
  gen->add_option("model", graph_model, "Graph model (er)")->required();
  gen->add_option("-n,--nodes", nodes, "Node count")->required();
  gen->add_option("-m,--edges", edges, "Edge count")->required();
  gen->add_option("--seed", graph_seed, "Generator seed");
  gen->add_option("-o,--output", graph_out, "Edge list path")->required();

  std::string instance_path;
  auto* oracle = app.add_subcommand("oracle", "Exact spread / optimum of a small JSON instance");
  oracle->add_option("instance", instance_path, "Instance file")->required();

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", config_path, "JSON experiment config")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    lim_experiment_overrides o{};
    o.output = output.empty() ? nullptr : output.c_str();
    o.has_seed = seed_opt->count() > 0;
    o.seed = seed;
    o.eval_runs = eval_runs;
    o.time_reps = time_reps;
    o.disable_timing = no_timing;
    uint32_t failed = 0;
    int rc = Report(lim_run_experiment(config_path.c_str(), &o, &failed));
    if (rc == 0 && failed > 0) {
      std::fprintf(stderr, "lim: %u cell(s) failed; see the .meta.json file\n", failed);
      return 1;
    }
    return rc;
  }
  if (*gen) {
    return Report(lim_generate_graph(graph_model.c_str(), nodes, edges, graph_seed, graph_out.c_str()));
  }
  if (*oracle) {
    char* out = nullptr;
    int rc = Report(lim_oracle(instance_path.c_str(), &out));
    if (out) std::fputs(out, stdout);
    lim_free_string(out);
    return rc;
  }
  if (*validate) {
    char* report = nullptr;
    lim_status status = lim_validate_config(config_path.c_str(), &report);
    if (report) std::fputs(report, stderr);
    lim_free_string(report);
    if (status == LIM_OK) std::puts("config ok");
    return Report(status);
  }
  return 0;
}
