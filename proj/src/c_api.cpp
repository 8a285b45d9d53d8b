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

#include "lim/lim.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "lim/baselines.hpp"
#include "lim/error.hpp"
#include "lim/eval.hpp"
#include "lim/experiment.hpp"
#include "lim/immprr.hpp"
#include "lim/immvsn.hpp"

struct lim_graph {
  lim::DirectedGraph graph;
  lim::TriggeringParams params;
  bool has_params = false;
};

struct lim_model {
  lim::ActivationModel model;
  lim::LatticeConfig lattice;
};

namespace {

thread_local std::string last_error;

lim_status Record(lim_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
lim_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return LIM_OK;
  } catch (const lim::Error& e) {
    return Record(static_cast<lim_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Record(LIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Record(LIM_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) lim::Fail(lim::ErrorCode::kInvalidArgument, what);
}

const lim::TriggeringParams& ParamsOf(const lim_graph* g) {
  if (!g->has_params) {
    lim::Fail(lim::ErrorCode::kInvalidArgument, "graph has no edge parameters; call lim_graph_set_params");
  }
  return g->params;
}

lim::StrategyMix MixFrom(const lim_model* m, const int32_t* steps) {
  lim::StrategyMix x(m->lattice.d);
  for (uint32_t j = 0; j < m->lattice.d; ++j) {
    if (steps[j] < 0) lim::Fail(lim::ErrorCode::kInvalidArgument, "negative step count");
    x.steps[j] = steps[j];
  }
  return x;
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* lim_version(void) { return "1.0.0"; }

const char* lim_last_error(void) { return last_error.c_str(); }

const char* lim_status_name(lim_status status) {
  switch (status) {
    case LIM_OK: return "ok";
    case LIM_ERR_PARSE: return "parse error";
    case LIM_ERR_RANGE: return "range error";
    case LIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LIM_ERR_DOMAIN: return "domain error";
    case LIM_ERR_NOT_APPLICABLE: return "not applicable";
    case LIM_ERR_UNSUPPORTED: return "unsupported";
    case LIM_ERR_UNDEFINED_ESTIMATE: return "undefined estimate";
    case LIM_ERR_SIZE_GUARD: return "size guard";
    case LIM_ERR_CONTRACT_VIOLATION: return "contract violation";
    case LIM_ERR_CONFIG: return "config error";
    case LIM_ERR_IO: return "io error";
    case LIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void lim_solve_options_init(lim_solve_options* options) {
  if (!options) return;
  *options = lim_solve_options{};
  options->algorithm = LIM_ALG_IMMPRR;
  options->epsilon = 0.5;
  options->ell = 1.0;
  options->sims = 10000;
  options->m_nodes = 50;
}

lim_status lim_graph_load(const char* path, lim_graph** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto* g = new lim_graph{lim::LoadEdgeListFile(path), {}, false};
    *out = g;
  });
}

lim_status lim_graph_from_edges(uint32_t num_nodes, size_t num_edges, const uint32_t* sources,
                                const uint32_t* targets, const double* values, lim_graph** out) {
  return Guard([&] {
    Require(out && (num_edges == 0 || (sources && targets)), "null argument");
    std::vector<lim::DirectedGraph::Edge> edges(num_edges);
    for (size_t e = 0; e < num_edges; ++e) {
      edges[e] = {sources[e], targets[e], values ? values[e] : std::nan("")};
    }
    *out = new lim_graph{lim::DirectedGraph(num_nodes, edges), {}, false};
  });
}

lim_status lim_graph_set_params(lim_graph* graph, lim_edge_params kind, lim_diffusion diffusion,
                                double value) {
  return Guard([&] {
    Require(graph, "null graph");
    auto d = diffusion == LIM_LT ? lim::Diffusion::kLT : lim::Diffusion::kIC;
    lim::TriggeringParams p;
    switch (kind) {
      case LIM_PARAMS_WEIGHTED_CASCADE: p = lim::AssignWeightedCascade(graph->graph); break;
      case LIM_PARAMS_FILE: p = lim::ParamsFromFile(graph->graph, d); break;
      case LIM_PARAMS_UNIFORM: p = lim::AssignUniform(graph->graph, d, value); break;
      default: lim::Fail(lim::ErrorCode::kInvalidArgument, "unknown parameterization");
    }
    lim::ValidateParams(graph->graph, p);
    graph->params = std::move(p);
    graph->has_params = true;
  });
}

void lim_graph_free(lim_graph* graph) { delete graph; }

uint32_t lim_graph_num_nodes(const lim_graph* graph) {
  return graph ? graph->graph.num_nodes() : 0;
}

uint64_t lim_graph_num_edges(const lim_graph* graph) {
  return graph ? graph->graph.num_edges() : 0;
}

lim_status lim_model_personalized(const lim_graph* graph, double delta, double max_budget,
                                  lim_model** out) {
  return Guard([&] {
    Require(graph && out, "null argument");
    const uint32_t n = graph->graph.num_nodes();
    auto lattice = lim::MakeLattice(n, delta, max_budget);
    *out = new lim_model{lim::MakePersonalizedModel(n, lattice), lattice};
  });
}

lim_status lim_model_segmented(const lim_graph* graph, uint32_t d, uint32_t top_nodes,
                               double r_max, double delta, double max_budget, uint64_t seed,
                               lim_model** out) {
  return Guard([&] {
    Require(graph && out, "null argument");
    auto lattice = lim::MakeLattice(d, delta, max_budget);
    lim::RandomStream rng(seed);
    lim::SegmentedEventSpec spec{d, top_nodes, r_max};
    *out = new lim_model{lim::MakeSegmentedEventModel(graph->graph, spec, lattice, rng), lattice};
  });
}

lim_status lim_model_tabulated(uint32_t num_nodes, uint32_t d, double delta, int32_t max_steps,
                               size_t num_arms, const uint32_t* nodes, const uint32_t* strategies,
                               const double* tables, size_t table_len, lim_model** out) {
  return Guard([&] {
    Require(out && (num_arms == 0 || (nodes && strategies && tables)), "null argument");
    Require(delta > 0.0 && max_steps >= 0, "need delta > 0 and max_steps >= 0");
    std::vector<lim::QCurve> curves;
    std::vector<std::vector<lim::StrategyArm>> arms(num_nodes);
    for (size_t a = 0; a < num_arms; ++a) {
      if (nodes[a] >= num_nodes) lim::Fail(lim::ErrorCode::kRange, "arm node outside [0, n)");
      arms[nodes[a]].push_back({strategies[a], static_cast<uint32_t>(curves.size())});
      curves.push_back(lim::QCurve::Tabulated(
          std::vector<double>(tables + a * table_len, tables + (a + 1) * table_len)));
    }
    lim::LatticeConfig lattice{d, delta, max_steps};
    *out = new lim_model{
        lim::ActivationModel::Independent(num_nodes, d, std::move(curves), std::move(arms)),
        lattice};
  });
}

void lim_model_free(lim_model* model) { delete model; }

uint32_t lim_model_num_strategies(const lim_model* model) {
  return model ? model->model.num_strategies() : 0;
}

lim_status lim_model_validate(const lim_model* model, size_t* violations) {
  return Guard([&] {
    Require(model && violations, "null argument");
    *violations = lim::ValidateModel(model->model, model->lattice).size();
  });
}

lim_status lim_solve(const lim_graph* graph, const lim_model* model, double budget,
                     const lim_solve_options* options, int32_t* steps_out, lim_solve_info* info) {
  return Guard([&] {
    Require(graph && model && steps_out, "null argument");
    lim_solve_options opts;
    lim_solve_options_init(&opts);
    if (options) opts = *options;
    if (budget > model->lattice.budget()) {
      lim::Fail(lim::ErrorCode::kInvalidArgument, "budget exceeds the model's maximum budget");
    }
    const auto& params = ParamsOf(graph);
    auto lattice = lim::MakeLattice(model->lattice.d, model->lattice.delta, budget);
    auto constraint = lim::BudgetConstraint::Total(lattice.budget_steps);
    lim::RandomStream rng(opts.seed);
    lim::SolveOptions solve{{opts.epsilon, opts.ell}, opts.force != 0};
    lim::SolveResult result;
    result.x = lim::StrategyMix(lattice.d);
    switch (opts.algorithm) {
      case LIM_ALG_IMMPRR:
        result = lim::ImmPrr(graph->graph, params, model->model, lattice, constraint, solve, rng);
        break;
      case LIM_ALG_IMMVSN:
        result = lim::ImmVsn(graph->graph, params, model->model, lattice, constraint, solve, rng);
        break;
      case LIM_ALG_MCLG:
        lim::RequireValidModel(model->model, lattice, solve.force);
        result.x = lim::Mclg(graph->graph, params, model->model, lattice, constraint, opts.sims, rng);
        break;
      case LIM_ALG_HD:
        result.x = lim::Hd(graph->graph, lattice,
                           std::min<uint32_t>(opts.m_nodes, graph->graph.num_nodes()),
                           lim::CoordinateCaps(model->model, lattice, 1.0));
        break;
      case LIM_ALG_UD:
      case LIM_ALG_CD: {
        if (lattice.budget_steps == 0) break;
        lim::RRCollection collection = lim::Sampling(graph->graph, params, model->model, lattice,
                                                     constraint, solve.imm, rng, &result.sampling);
        result.x = lim::Ud(collection, model->model, lattice);
        if (opts.algorithm == LIM_ALG_CD) result.x = lim::Cd(collection, model->model, lattice, result.x);
        result.theta = collection.theta();
        result.estimate = lim::GHat(collection, model->model, result.x);
        break;
      }
      default:
        lim::Fail(lim::ErrorCode::kInvalidArgument, "unknown algorithm");
    }
    std::copy(result.x.steps.begin(), result.x.steps.end(), steps_out);
    if (info) {
      info->theta = result.theta;
      info->estimate = result.estimate;
      info->gamma = result.sampling.gamma;
      info->lower_bound = result.sampling.lower_bound;
    }
  });
}

lim_status lim_evaluate(const lim_graph* graph, const lim_model* model, const int32_t* steps,
                        uint64_t runs, uint64_t seed, double* mean, double* se) {
  return Guard([&] {
    Require(graph && model && steps && mean, "null argument");
    auto est = lim::SimulateSpreadMix(graph->graph, ParamsOf(graph), model->model,
                                      MixFrom(model, steps), runs, lim::RandomStream(seed));
    *mean = est.mean;
    if (se) *se = est.se;
  });
}

lim_status lim_exact_spread(const lim_graph* graph, const lim_model* model, const int32_t* steps,
                            double* spread) {
  return Guard([&] {
    Require(graph && model && steps && spread, "null argument");
    *spread = lim::ExactG(graph->graph, ParamsOf(graph), model->model, MixFrom(model, steps));
  });
}

lim_status lim_run_experiment(const char* config_path, const lim_experiment_overrides* overrides,
                              uint32_t* failed_cells) {
  return Guard([&] {
    Require(config_path, "null config path");
    lim::ExperimentConfig config = lim::LoadConfig(config_path);
    if (overrides) {
      if (overrides->output) config.output = overrides->output;
      if (overrides->has_seed) config.seed = overrides->seed;
      if (overrides->eval_runs) config.eval_runs = overrides->eval_runs;
      if (overrides->time_reps) config.time_reps = overrides->time_reps;
      if (overrides->disable_timing) config.record_timing = false;
    }
    if (config.output.empty()) lim::Fail(lim::ErrorCode::kConfig, "no output path given");
    lim::ExperimentReport report = lim::RunExperiment(config);
    lim::WriteReport(report, config.output);
    if (failed_cells) *failed_cells = report.failed_cells;
  });
}

lim_status lim_validate_config(const char* config_path, char** report) {
  std::vector<std::string> problems;
  lim_status status = Guard([&] {
    Require(config_path && report, "null argument");
    *report = nullptr;
    problems = lim::ValidateConfig(lim::LoadConfig(config_path));
    std::string text;
    for (const auto& p : problems) text += p + "\n";
    *report = CopyString(text);
  });
  if (status == LIM_OK && !problems.empty()) {
    return Record(LIM_ERR_CONFIG, problems.front().c_str());
  }
  return status;
}

lim_status lim_generate_graph(const char* model, uint32_t num_nodes, uint64_t num_edges,
                              uint64_t seed, const char* path) {
  return Guard([&] {
    Require(model && path, "null argument");
    lim::GenerateGraphFile(model, num_nodes, num_edges, seed, path);
  });
}

lim_status lim_oracle(const char* instance_path, char** json_out) {
  return Guard([&] {
    Require(instance_path && json_out, "null argument");
    std::ifstream in(instance_path);
    if (!in) lim::Fail(lim::ErrorCode::kIo, std::string("cannot open ") + instance_path);
    std::stringstream ss;
    ss << in.rdbuf();
    *json_out = CopyString(lim::RunOracle(ss.str()));
  });
}

void lim_free_string(char* s) { std::free(s); }

}  // extern "C"
