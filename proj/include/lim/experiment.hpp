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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/strategy.hpp"

namespace lim {

struct DatasetSpec {
  std::string name;
  std::string path;  // edge list; empty when `generate` is used
  // Synthetic Erdős–Rényi graph instead of a file.
  bool generate = false;
  NodeId gen_nodes = 0;
  uint64_t gen_edges = 0;
  uint64_t gen_seed = 0;
  std::string params = "weighted_cascade";  // weighted_cascade | file | uniform
  Diffusion model = Diffusion::kIC;
  double uniform_value = 0.1;
};

struct ScenarioSpec {
  std::string family = "segmented_event";  // personalized | segmented_event
  SegmentedEventSpec segmented;
  double delta = 1.0;
};

struct AlgorithmSpec {
  std::string name;  // immprr | immvsn | mclg | ud | cd | hd
  double epsilon = 0.5;
  double ell = 1.0;
  uint64_t sims = 10000;
  NodeId m_nodes = 50;
  bool force = false;
};

struct ConstraintSpec {
  std::vector<std::vector<uint32_t>> groups;
  std::vector<double> caps;  // budget units
};

struct ExperimentConfig {
  DatasetSpec dataset;
  ScenarioSpec scenario;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<double> budgets;
  std::optional<ConstraintSpec> constraint;
  uint64_t eval_runs = 10000;
  uint32_t time_reps = 5;
  uint64_t seed = 1;
  bool record_timing = true;
  std::string output;
  std::string source_text;  // raw config, hashed for provenance
};

// JSON config; relative paths resolve against `base_dir`. Throws kConfig.
ExperimentConfig ParseConfig(const std::string& text, const std::string& base_dir = ".");
ExperimentConfig LoadConfig(const std::string& path);

// Problems that would make a run fail; empty when the config is usable.
std::vector<std::string> ValidateConfig(const ExperimentConfig& config);

struct LoadedDataset {
  DirectedGraph graph;
  TriggeringParams params;
  uint64_t self_loops_dropped = 0;
};

LoadedDataset LoadDataset(const DatasetSpec& spec);

// The activation model for a scenario. Personalized gives d = n; segmented
// event gives d = spec.segmented.d. Throws kConfig for unknown families.
ActivationModel BuildScenario(const DirectedGraph& graph, const ScenarioSpec& spec,
                              const LatticeConfig& lattice, RandomStream& rng);
uint32_t ScenarioDimension(const DirectedGraph& graph, const ScenarioSpec& spec);

inline constexpr const char* kCsvHeader =
    "dataset,scenario,algorithm,epsilon,k,delta,spread,spread_se,runtime_s,theta,seed";

struct ExperimentReport {
  std::string csv;
  std::string meta_json;
  uint32_t failed_cells = 0;
};

// Runs every (algorithm, budget) cell; a failing cell yields an NA row and
// an entry in the metadata, and the run continues.
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Writes csv to `path` and the metadata to `path`.meta.json.
void WriteReport(const ExperimentReport& report, const std::string& path);

// FNV-1a 64 of the text, as 16 hex digits.
std::string ConfigHash(const std::string& text);

// Evaluates a small instance exactly. The instance JSON has `nodes`,
// `edges` ([u, v, p] triples), `model` (ic|lt), `d`, `delta`,
// `budget_steps`, `arms` ([{node, strategy, q: [...]}]) and optionally `x`
// and `constraint` ({groups, caps} in steps). Returns a JSON object with
// `g` when x is given and `opt` ({x, spread, points}) otherwise or when
// `opt: true`.
std::string RunOracle(const std::string& instance_json);

// Writes a synthetic graph as an edge list. Only `er` is supported.
void GenerateGraphFile(const std::string& model, NodeId n, uint64_t m, uint64_t seed,
                       const std::string& path);

}  // namespace lim
