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

#include "procmap/procmap.h"

#include <cstring>
#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "procmap/error.hpp"
#include "procmap/eval.hpp"
#include "procmap/graph.hpp"
#include "procmap/multisection.hpp"
#include "procmap/topology.hpp"

struct procmap_graph {
  procmap::Graph graph;
};

struct procmap_hierarchy {
  procmap::Hierarchy hierarchy;
};

struct procmap_report {
  procmap::Weight comm_cost;
  procmap::Weight edge_cut;
  procmap::BalanceReport balance;
};

struct procmap_quality_table {
  procmap::QualityTable table;
};

namespace {

procmap_status to_status(procmap::ErrorCode code) {
  switch (code) {
    case procmap::ErrorCode::kInvalidArgument:
      return PROCMAP_ERROR_INVALID_ARGUMENT;
    case procmap::ErrorCode::kParse:
      return PROCMAP_ERROR_PARSE;
    case procmap::ErrorCode::kIo:
      return PROCMAP_ERROR_IO;
    case procmap::ErrorCode::kInfeasible:
      return PROCMAP_ERROR_INFEASIBLE;
    case procmap::ErrorCode::kInternal:
      return PROCMAP_ERROR_INTERNAL;
  }
  return PROCMAP_ERROR_INTERNAL;
}

procmap_status report(procmap_error* error, procmap_status status, const char* message) {
  if (error) {
    error->status = status;
    std::strncpy(error->message, message, sizeof(error->message) - 1);
    error->message[sizeof(error->message) - 1] = '\0';
  }
  return status;
}

// Runs `body` and converts any exception into a status code.
template <typename Body>
procmap_status guarded(procmap_error* error, Body&& body) {
  try {
    body();
    return report(error, PROCMAP_OK, "");
  } catch (const procmap::Error& e) {
    return report(error, to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return report(error, PROCMAP_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return report(error, PROCMAP_ERROR_INTERNAL, e.what());
  } catch (...) {
    return report(error, PROCMAP_ERROR_INTERNAL, "unknown error");
  }
}

void require(const void* pointer, const char* what) {
  if (!pointer) procmap::fail(procmap::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

procmap::Rational imbalance_or_default(const char* text) {
  return text ? procmap::parse_decimal(text) : procmap::Rational(3, 100);
}

}  // namespace

extern "C" {

PROCMAP_API const char* procmap_version(void) { return "0.1.0"; }

PROCMAP_API const char* procmap_status_string(procmap_status status) {
  switch (status) {
    case PROCMAP_OK:
      return "ok";
    case PROCMAP_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case PROCMAP_ERROR_PARSE:
      return "parse error";
    case PROCMAP_ERROR_IO:
      return "i/o error";
    case PROCMAP_ERROR_INFEASIBLE:
      return "infeasible";
    case PROCMAP_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

PROCMAP_API procmap_status procmap_graph_load_file(const char* path, procmap_graph** out, procmap_error* error) {
  return guarded(error, [&] {
    require(path, "path");
    require(out, "out");
    *out = new procmap_graph{procmap::load_metis_file(path)};
  });
}

PROCMAP_API procmap_status procmap_graph_load_buffer(const char* text, size_t length, procmap_graph** out,
                                                     procmap_error* error) {
  return guarded(error, [&] {
    require(text, "text");
    require(out, "out");
    *out = new procmap_graph{procmap::load_metis(std::string(text, length))};
  });
}

PROCMAP_API procmap_status procmap_graph_write_file(const procmap_graph* graph, const char* path,
                                                    procmap_error* error) {
  return guarded(error, [&] {
    require(graph, "graph");
    require(path, "path");
    procmap::write_metis_file(graph->graph, path);
  });
}

PROCMAP_API void procmap_graph_free(procmap_graph* graph) { delete graph; }

PROCMAP_API int64_t procmap_graph_num_vertices(const procmap_graph* graph) {
  return graph ? graph->graph.num_vertices() : 0;
}

PROCMAP_API int64_t procmap_graph_num_edges(const procmap_graph* graph) { return graph ? graph->graph.num_edges() : 0; }

PROCMAP_API int64_t procmap_graph_total_weight(const procmap_graph* graph) {
  return graph ? graph->graph.total_weight() : 0;
}

PROCMAP_API procmap_status procmap_graph_edge_cut(const procmap_graph* graph, const int32_t* blocks, size_t length,
                                                  int64_t* cut, procmap_error* error) {
  return guarded(error, [&] {
    require(graph, "graph");
    require(blocks, "blocks");
    require(cut, "cut");
    *cut = procmap::edge_cut(graph->graph, std::span<const int32_t>(blocks, length));
  });
}

PROCMAP_API procmap_status procmap_hierarchy_parse(const char* arities, const char* distances,
                                                   procmap_hierarchy** out, procmap_error* error) {
  return guarded(error, [&] {
    require(arities, "arities");
    require(distances, "distances");
    require(out, "out");
    *out = new procmap_hierarchy{procmap::parse_hierarchy(arities, distances)};
  });
}

PROCMAP_API void procmap_hierarchy_free(procmap_hierarchy* hierarchy) { delete hierarchy; }

PROCMAP_API int64_t procmap_hierarchy_num_pes(const procmap_hierarchy* hierarchy) {
  return hierarchy ? hierarchy->hierarchy.num_pes() : 0;
}

PROCMAP_API int32_t procmap_hierarchy_num_levels(const procmap_hierarchy* hierarchy) {
  return hierarchy ? hierarchy->hierarchy.levels() : 0;
}

PROCMAP_API procmap_status procmap_pe_distance(const procmap_hierarchy* hierarchy, int64_t x, int64_t y,
                                               int64_t* distance, procmap_error* error) {
  return guarded(error, [&] {
    require(hierarchy, "hierarchy");
    require(distance, "distance");
    *distance = procmap::pe_distance(hierarchy->hierarchy, x, y);
  });
}

PROCMAP_API procmap_status procmap_strategy_parse(const char* name, procmap_strategy* out) {
  return guarded(nullptr, [&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<procmap_strategy>(procmap::parse_strategy(name));
  });
}

PROCMAP_API const char* procmap_strategy_name(procmap_strategy strategy) {
  return procmap::to_string(static_cast<procmap::Strategy>(strategy)).data();
}

PROCMAP_API procmap_status procmap_preset_parse(const char* name, procmap_preset* out) {
  return guarded(nullptr, [&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<procmap_preset>(procmap::parse_preset(name));
  });
}

PROCMAP_API const char* procmap_preset_name(procmap_preset preset) {
  return procmap::to_string(static_cast<procmap::Preset>(preset)).data();
}

PROCMAP_API void procmap_map_options_init(procmap_map_options* options) {
  if (!options) return;
  options->imbalance = "0.03";
  options->threads = 1;
  options->strategy = PROCMAP_STRATEGY_NB_LAYER;
  options->preset = PROCMAP_PRESET_ECO;
  options->seed = 1;
}

PROCMAP_API procmap_status procmap_map(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                       const procmap_map_options* options, int32_t* mapping, size_t length,
                                       procmap_run_stats* stats, procmap_error* error) {
  return guarded(error, [&] {
    require(graph, "graph");
    require(hierarchy, "hierarchy");
    require(mapping, "mapping");
    procmap_map_options defaults;
    procmap_map_options_init(&defaults);
    const procmap_map_options& o = options ? *options : defaults;
    if (length != static_cast<size_t>(graph->graph.num_vertices())) {
      procmap::fail(procmap::ErrorCode::kInvalidArgument, "mapping buffer length differs from vertex count");
    }
    if (o.strategy < PROCMAP_STRATEGY_NAIVE || o.strategy > PROCMAP_STRATEGY_NB_LAYER ||
        o.preset < PROCMAP_PRESET_FAST || o.preset > PROCMAP_PRESET_STRONG) {
      procmap::fail(procmap::ErrorCode::kInvalidArgument, "unknown strategy or preset");
    }
    if (graph->graph.num_vertices() < hierarchy->hierarchy.num_pes()) {
      procmap::fail(procmap::ErrorCode::kInvalidArgument,
                    "graph has " + std::to_string(graph->graph.num_vertices()) + " vertices but the hierarchy has " +
                        std::to_string(hierarchy->hierarchy.num_pes()) + " PEs");
    }
    procmap::MultisectionOptions mo;
    mo.epsilon = imbalance_or_default(o.imbalance);
    mo.threads = o.threads;
    mo.strategy = static_cast<procmap::Strategy>(o.strategy);
    mo.config = procmap::PartitionConfig::from_preset(static_cast<procmap::Preset>(o.preset));
    mo.seed = o.seed;
    const auto result = procmap::map_hierarchical(graph->graph, hierarchy->hierarchy, mo);
    std::copy(result.mapping.assignment.begin(), result.mapping.assignment.end(), mapping);
    if (stats) {
      stats->wall_time_ms = result.stats.wall_time_ms;
      stats->comm_cost = result.stats.comm_cost;
      stats->edge_cut = result.stats.edge_cut;
      stats->l_max = result.stats.balance.l_max;
      stats->max_imbalance = result.stats.balance.max_imbalance_value();
      stats->balanced = result.stats.balance.is_balanced ? 1 : 0;
      stats->peak_active_threads = result.stats.peak_active_threads;
      stats->balance_risk_calls = result.stats.balance_risk_calls;
    }
  });
}

PROCMAP_API procmap_status procmap_evaluate(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                            const int32_t* mapping, size_t length, const char* imbalance,
                                            procmap_report** out, procmap_error* error) {
  return guarded(error, [&] {
    require(graph, "graph");
    require(hierarchy, "hierarchy");
    require(mapping, "mapping");
    require(out, "out");
    const std::span<const int32_t> pes(mapping, length);
    const auto& g = graph->graph;
    const auto& h = hierarchy->hierarchy;
    auto result = std::make_unique<procmap_report>();
    result->comm_cost = procmap::comm_cost(g, h, pes);
    result->edge_cut = procmap::edge_cut(g, pes);
    result->balance = procmap::check_balance(g, pes, h.num_pes(), imbalance_or_default(imbalance));
    *out = result.release();
  });
}

PROCMAP_API void procmap_report_free(procmap_report* report) { delete report; }
PROCMAP_API int64_t procmap_report_comm_cost(const procmap_report* report) { return report ? report->comm_cost : 0; }
PROCMAP_API int64_t procmap_report_edge_cut(const procmap_report* report) { return report ? report->edge_cut : 0; }
PROCMAP_API int64_t procmap_report_l_max(const procmap_report* report) { return report ? report->balance.l_max : 0; }

PROCMAP_API double procmap_report_max_imbalance(const procmap_report* report) {
  return report ? report->balance.max_imbalance_value() : 0.0;
}

PROCMAP_API int32_t procmap_report_balanced(const procmap_report* report) {
  return report && report->balance.is_balanced ? 1 : 0;
}

PROCMAP_API int64_t procmap_report_num_blocks(const procmap_report* report) {
  return report ? static_cast<int64_t>(report->balance.block_weights.size()) : 0;
}

PROCMAP_API int64_t procmap_report_block_weight(const procmap_report* report, int64_t block) {
  if (!report || block < 0 || block >= static_cast<int64_t>(report->balance.block_weights.size())) return -1;
  return report->balance.block_weights[block];
}

PROCMAP_API procmap_status procmap_mapping_read_file(const char* path, int32_t* mapping, size_t capacity,
                                                     size_t* count, procmap_error* error) {
  return guarded(error, [&] {
    require(path, "path");
    require(count, "count");
    const auto pes = procmap::read_mapping_file(path);
    *count = pes.size();
    if (!mapping) return;
    if (capacity < pes.size()) procmap::fail(procmap::ErrorCode::kInvalidArgument, "mapping buffer too small");
    std::copy(pes.begin(), pes.end(), mapping);
  });
}

PROCMAP_API procmap_status procmap_mapping_write_file(const char* path, const int32_t* mapping, size_t length,
                                                      procmap_error* error) {
  return guarded(error, [&] {
    require(path, "path");
    require(mapping, "mapping");
    procmap::write_mapping_file(std::span<const int32_t>(mapping, length), path);
  });
}

PROCMAP_API procmap_status procmap_oracle(const procmap_graph* graph, const procmap_hierarchy* hierarchy,
                                          const char* imbalance, int32_t* mapping, size_t length,
                                          int64_t* comm_cost, procmap_error* error) {
  return guarded(error, [&] {
    require(graph, "graph");
    require(hierarchy, "hierarchy");
    require(comm_cost, "comm_cost");
    const auto result = procmap::optimal_mapping(graph->graph, hierarchy->hierarchy, imbalance_or_default(imbalance));
    *comm_cost = result.cost;
    if (!mapping) return;
    if (length != result.mapping.size()) {
      procmap::fail(procmap::ErrorCode::kInvalidArgument, "mapping buffer length differs from vertex count");
    }
    std::copy(result.mapping.begin(), result.mapping.end(), mapping);
  });
}

PROCMAP_API procmap_quality_table* procmap_quality_table_create(void) {
  return new (std::nothrow) procmap_quality_table{};
}

PROCMAP_API void procmap_quality_table_free(procmap_quality_table* table) { delete table; }

PROCMAP_API procmap_status procmap_quality_table_add(procmap_quality_table* table, const char* algorithm,
                                                     const char* instance, double quality, procmap_error* error) {
  return guarded(error, [&] {
    require(table, "table");
    require(algorithm, "algorithm");
    require(instance, "instance");
    table->table.add(algorithm, instance, quality);
  });
}

PROCMAP_API size_t procmap_quality_table_num_algorithms(const procmap_quality_table* table) {
  return table ? table->table.algorithms().size() : 0;
}

PROCMAP_API const char* procmap_quality_table_algorithm(const procmap_quality_table* table, size_t index) {
  if (!table || index >= table->table.algorithms().size()) return nullptr;
  return table->table.algorithms()[index].c_str();
}

PROCMAP_API procmap_status procmap_performance_profile(const procmap_quality_table* table, const double* taus,
                                                       size_t num_taus, double* fractions, size_t* excluded,
                                                       procmap_error* error) {
  return guarded(error, [&] {
    require(table, "table");
    require(taus, "taus");
    require(fractions, "fractions");
    const auto profile = procmap::performance_profile(table->table, std::span<const double>(taus, num_taus));
    for (std::size_t a = 0; a < profile.algorithms.size(); ++a) {
      std::copy(profile.fractions[a].begin(), profile.fractions[a].end(), fractions + a * num_taus);
    }
    if (excluded) *excluded = profile.excluded_instances.size();
  });
}

}  // extern "C"
