/*
Copyright 2026 The procmap Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/* C interface of the procmap library.
 *
 * Objects are opaque handles created by procmap_*_create/load/parse and
 * released with the matching procmap_*_free. Every fallible call returns a
 * procmap_status and, when `error` is non-NULL, fills it with a message.
 * Handles are immutable after creation and may be shared between threads,
 * except procmap_quality_table which must not be mutated concurrently.
 *
 * Imbalance values are passed as decimal strings ("0.03") so that balance
 * bounds are computed from the exact decimal value. */

#ifndef PROCMAP_PROCMAP_H
#define PROCMAP_PROCMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(PROCMAP_BUILDING_LIBRARY)
#define PROCMAP_API __attribute__((visibility("default")))
#else
#define PROCMAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum procmap_status {
  PROCMAP_OK = 0,
  PROCMAP_ERROR_INVALID_ARGUMENT = 1,
  PROCMAP_ERROR_PARSE = 2,
  PROCMAP_ERROR_IO = 3,
  PROCMAP_ERROR_INFEASIBLE = 4,
  PROCMAP_ERROR_INTERNAL = 5
} procmap_status;

typedef struct procmap_error {
  procmap_status status;
  char message[512];
} procmap_error;

typedef enum procmap_strategy {
  PROCMAP_STRATEGY_NAIVE = 0,
  PROCMAP_STRATEGY_LAYER = 1,
  PROCMAP_STRATEGY_QUEUE = 2,
  PROCMAP_STRATEGY_NB_LAYER = 3
} procmap_strategy;

typedef enum procmap_preset {
  PROCMAP_PRESET_FAST = 0,
  PROCMAP_PRESET_ECO = 1,
  PROCMAP_PRESET_STRONG = 2
} procmap_preset;

typedef struct procmap_graph procmap_graph;
typedef struct procmap_hierarchy procmap_hierarchy;
typedef struct procmap_report procmap_report;
typedef struct procmap_quality_table procmap_quality_table;

PROCMAP_API const char* procmap_version(void);
PROCMAP_API const char* procmap_status_string(procmap_status status);

/* Graphs (METIS ASCII format). */
PROCMAP_API procmap_status procmap_graph_load_file(const char* path, procmap_graph** out, procmap_error* error);
PROCMAP_API procmap_status procmap_graph_load_buffer(const char* text, size_t length, procmap_graph** out,
                                                     procmap_error* error);
PROCMAP_API procmap_status procmap_graph_write_file(const procmap_graph* graph, const char* path,
                                                    procmap_error* error);
PROCMAP_API void procmap_graph_free(procmap_graph* graph);
PROCMAP_API int64_t procmap_graph_num_vertices(const procmap_graph* graph);
PROCMAP_API int64_t procmap_graph_num_edges(const procmap_graph* graph);
PROCMAP_API int64_t procmap_graph_total_weight(const procmap_graph* graph);
PROCMAP_API procmap_status procmap_graph_edge_cut(const procmap_graph* graph, const int32_t* blocks, size_t length,
                                                  int64_t* cut, procmap_error* error);

/* Hierarchies: colon-separated arities ("4:8:6") and distances ("1:10:100"). */
PROCMAP_API procmap_status procmap_hierarchy_parse(const char* arities, const char* distances,
                                                   procmap_hierarchy** out, procmap_error* error);
PROCMAP_API void procmap_hierarchy_free(procmap_hierarchy* hierarchy);
PROCMAP_API int64_t procmap_hierarchy_num_pes(const procmap_hierarchy* hierarchy);
PROCMAP_API int32_t procmap_hierarchy_num_levels(const procmap_hierarchy* hierarchy);
PROCMAP_API procmap_status procmap_pe_distance(const procmap_hierarchy* hierarchy, int64_t x, int64_t y,
                                               int64_t* distance, procmap_error* error);

PROCMAP_API procmap_status procmap_strategy_parse(const char* name, procmap_strategy* out);
PROCMAP_API const char* procmap_strategy_name(procmap_strategy strategy);
PROCMAP_API procmap_status procmap_preset_parse(const char* name, procmap_preset* out);
PROCMAP_API const char* procmap_preset_name(procmap_preset preset);

typedef struct procmap_map_options {
  const char* imbalance; /* decimal, default "0.03" */
  int32_t threads;
  procmap_strategy strategy;
  procmap_preset preset;
  uint64_t seed;
} procmap_map_options;

/* Defaults: imbalance 0.03, 1 thread, nb-layer, eco, seed 1. */
PROCMAP_API void procmap_map_options_init(procmap_map_options* options);

typedef struct procmap_run_stats {
  double wall_time_ms;
  int64_t comm_cost; /* J over ordered pairs */
  int64_t edge_cut;
  int64_t l_max;
  double max_imbalance;
  int32_t balanced;
  int32_t peak_active_threads;
  int64_t balance_risk_calls;
} procmap_run_stats;

/* Maps every vertex to a PE; `mapping` must hold num_vertices entries. */
PROCMAP_API procmap_status procmap_map(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                       const procmap_map_options* options, int32_t* mapping, size_t length,
                                       procmap_run_stats* stats, procmap_error* error);

/* Evaluation of an existing mapping. */
PROCMAP_API procmap_status procmap_evaluate(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                            const int32_t* mapping, size_t length, const char* imbalance,
                                            procmap_report** out, procmap_error* error);
PROCMAP_API void procmap_report_free(procmap_report* report);
PROCMAP_API int64_t procmap_report_comm_cost(const procmap_report* report);
PROCMAP_API int64_t procmap_report_edge_cut(const procmap_report* report);
PROCMAP_API int64_t procmap_report_l_max(const procmap_report* report);
PROCMAP_API double procmap_report_max_imbalance(const procmap_report* report);
PROCMAP_API int32_t procmap_report_balanced(const procmap_report* report);
PROCMAP_API int64_t procmap_report_num_blocks(const procmap_report* report);
PROCMAP_API int64_t procmap_report_block_weight(const procmap_report* report, int64_t block);

/* Mapping files: one PE id per line. With mapping == NULL only *count is set. */
PROCMAP_API procmap_status procmap_mapping_read_file(const char* path, int32_t* mapping, size_t capacity,
                                                     size_t* count, procmap_error* error);
PROCMAP_API procmap_status procmap_mapping_write_file(const char* path, const int32_t* mapping, size_t length,
                                                      procmap_error* error);

/* Exhaustive optimum for tiny instances (n <= 14, k <= 8). */
PROCMAP_API procmap_status procmap_oracle(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                          const char* imbalance, int32_t* mapping, size_t length,
                                          int64_t* comm_cost, procmap_error* error);

/* Performance profiles over a dense (algorithm, instance, quality) table. */
PROCMAP_API procmap_quality_table* procmap_quality_table_create(void);
PROCMAP_API void procmap_quality_table_free(procmap_quality_table* table);
PROCMAP_API procmap_status procmap_quality_table_add(procmap_quality_table* table, const char* algorithm,
                                                     const char* instance, double quality, procmap_error* error);
PROCMAP_API size_t procmap_quality_table_num_algorithms(const procmap_quality_table* table);
PROCMAP_API const char* procmap_quality_table_algorithm(const procmap_quality_table* table, size_t index);
/* Writes num_algorithms * num_taus fractions, row-major by algorithm, and the
 * number of instances dropped because some quality was 0. */
PROCMAP_API procmap_status procmap_performance_profile(const procmap_quality_table* table, const double* taus,
                                                       size_t num_taus, double* fractions, size_t* excluded,
                                                       procmap_error* error);

#ifdef __cplusplus
}
#endif

#endif /* PROCMAP_PROCMAP_H */
