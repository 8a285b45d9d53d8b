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

/* C interface to the lattice influence maximization library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a lim_status; on
 * failure lim_last_error() describes the problem for the calling thread.
 */
#ifndef LIM_LIM_H_
#define LIM_LIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LIM_BUILDING_LIBRARY)
#define LIM_API __declspec(dllexport)
#else
#define LIM_API __declspec(dllimport)
#endif
#else
#define LIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lim_status {
  LIM_OK = 0,
  LIM_ERR_PARSE = 1,
  LIM_ERR_RANGE = 2,
  LIM_ERR_INVALID_ARGUMENT = 3,
  LIM_ERR_DOMAIN = 4,
  LIM_ERR_NOT_APPLICABLE = 5,
  LIM_ERR_UNSUPPORTED = 6,
  LIM_ERR_UNDEFINED_ESTIMATE = 7,
  LIM_ERR_SIZE_GUARD = 8,
  LIM_ERR_CONTRACT_VIOLATION = 9,
  LIM_ERR_CONFIG = 10,
  LIM_ERR_IO = 11,
  LIM_ERR_INTERNAL = 100
} lim_status;

typedef enum lim_diffusion { LIM_IC = 0, LIM_LT = 1 } lim_diffusion;

typedef enum lim_edge_params {
  LIM_PARAMS_WEIGHTED_CASCADE = 0, /* IC, p(u,v) = 1 / in-degree(v) */
  LIM_PARAMS_FILE = 1,             /* values from the edge list */
  LIM_PARAMS_UNIFORM = 2           /* every edge gets `value` */
} lim_edge_params;

typedef enum lim_algorithm {
  LIM_ALG_IMMPRR = 0,
  LIM_ALG_IMMVSN = 1,
  LIM_ALG_MCLG = 2,
  LIM_ALG_UD = 3,
  LIM_ALG_CD = 4,
  LIM_ALG_HD = 5
} lim_algorithm;

typedef struct lim_graph lim_graph;
typedef struct lim_model lim_model;

typedef struct lim_solve_options {
  lim_algorithm algorithm;
  double epsilon;    /* default 0.5 */
  double ell;        /* default 1 */
  uint64_t seed;
  uint64_t sims;     /* MC-LGreedy simulations per estimate */
  uint32_t m_nodes;  /* HD node count */
  int force;         /* accept curves that fail validation */
} lim_solve_options;

typedef struct lim_solve_info {
  uint64_t theta;    /* RR sets used, 0 if none */
  double estimate;   /* sample estimate of the spread, 0 if none */
  double gamma;
  double lower_bound;
} lim_solve_info;

LIM_API const char* lim_version(void);
LIM_API const char* lim_last_error(void);
LIM_API const char* lim_status_name(lim_status status);
LIM_API void lim_solve_options_init(lim_solve_options* options);

/* Graphs. */
LIM_API lim_status lim_graph_load(const char* path, lim_graph** out);
/* `values` may be NULL for bare edges. */
LIM_API lim_status lim_graph_from_edges(uint32_t num_nodes, size_t num_edges,
                                        const uint32_t* sources, const uint32_t* targets,
                                        const double* values, lim_graph** out);
LIM_API lim_status lim_graph_set_params(lim_graph* graph, lim_edge_params kind,
                                        lim_diffusion diffusion, double value);
LIM_API void lim_graph_free(lim_graph* graph);
LIM_API uint32_t lim_graph_num_nodes(const lim_graph* graph);
LIM_API uint64_t lim_graph_num_edges(const lim_graph* graph);

/* Activation models, each bound to a lattice of step delta and a maximum
 * budget. */
LIM_API lim_status lim_model_personalized(const lim_graph* graph, double delta, double max_budget,
                                          lim_model** out);
LIM_API lim_status lim_model_segmented(const lim_graph* graph, uint32_t d, uint32_t top_nodes,
                                       double r_max, double delta, double max_budget,
                                       uint64_t seed, lim_model** out);
/* Arm a in [0, num_arms) gives node nodes[a] strategy strategies[a] with the
 * curve tables[a * table_len .. a * table_len + table_len). */
LIM_API lim_status lim_model_tabulated(uint32_t num_nodes, uint32_t d, double delta,
                                       int32_t max_steps, size_t num_arms, const uint32_t* nodes,
                                       const uint32_t* strategies, const double* tables,
                                       size_t table_len, lim_model** out);
LIM_API void lim_model_free(lim_model* model);
LIM_API uint32_t lim_model_num_strategies(const lim_model* model);
/* Number of validation problems in the model's curves. */
LIM_API lim_status lim_model_validate(const lim_model* model, size_t* violations);

/* Runs an algorithm at total budget `budget`; writes d step counts. */
LIM_API lim_status lim_solve(const lim_graph* graph, const lim_model* model, double budget,
                             const lim_solve_options* options, int32_t* steps_out,
                             lim_solve_info* info);
/* Monte-Carlo spread of a mix; `se` may be NULL. */
LIM_API lim_status lim_evaluate(const lim_graph* graph, const lim_model* model,
                                const int32_t* steps, uint64_t runs, uint64_t seed, double* mean,
                                double* se);
/* Exact spread of a mix on small graphs. */
LIM_API lim_status lim_exact_spread(const lim_graph* graph, const lim_model* model,
                                    const int32_t* steps, double* spread);

/* Command-line overrides for an experiment config; zero/NULL fields keep
 * the config's value. */
typedef struct lim_experiment_overrides {
  const char* output;
  int has_seed;
  uint64_t seed;
  uint64_t eval_runs;
  uint32_t time_reps;
  int disable_timing;
} lim_experiment_overrides;

/* Runs a JSON experiment config and writes the CSV plus `<output>.meta.json`.
 * `overrides` may be NULL. */
LIM_API lim_status lim_run_experiment(const char* config_path,
                                      const lim_experiment_overrides* overrides,
                                      uint32_t* failed_cells);
/* `report` receives a newline-separated list of problems (empty if none);
 * release with lim_free_string. */
LIM_API lim_status lim_validate_config(const char* config_path, char** report);
LIM_API lim_status lim_generate_graph(const char* model, uint32_t num_nodes, uint64_t num_edges,
                                      uint64_t seed, const char* path);
/* Exact oracle on a JSON instance file; result JSON via `json_out`. */
LIM_API lim_status lim_oracle(const char* instance_path, char** json_out);
LIM_API void lim_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LIM_LIM_H_ */
