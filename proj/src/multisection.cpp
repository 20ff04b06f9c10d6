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

#include "procmap/multisection.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "procmap/error.hpp"
#include "procmap/random.hpp"

namespace procmap {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kNaive:
      return "naive";
    case Strategy::kLayer:
      return "layer";
    case Strategy::kQueue:
      return "queue";
    case Strategy::kNonBlockingLayer:
      return "nb-layer";
  }
  return "nb-layer";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::kNaive;
  if (name == "layer") return Strategy::kLayer;
  if (name == "queue") return Strategy::kQueue;
  if (name == "nb-layer" || name == "nb_layer") return Strategy::kNonBlockingLayer;
  fail(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "' (naive|layer|queue|nb-layer)");
}

int distribute_threads(int p, int m, int j) {
  if (p < 1 || m < 1) fail(ErrorCode::kInvalidArgument, "distribute_threads: p and m must be >= 1");
  if (j < 1 || j > m) fail(ErrorCode::kInvalidArgument, "distribute_threads: j must lie in [1, m]");
  if (p < m) return 1;
  const int base = p / m;
  return base + ((j - 1) < (p - base * m) ? 1 : 0);
}

SchedulerCounters::SchedulerCounters(int levels)
    : calls_per_depth(std::make_unique<std::atomic<std::int64_t>[]>(levels + 1)), levels(levels) {
  for (int d = 0; d <= levels; ++d) calls_per_depth[d] = 0;
}

namespace {

void raise_peak(std::atomic<int>& peak, int value) {
  int seen = peak.load();
  while (value > seen && !peak.compare_exchange_weak(seen, value)) {
  }
}

}  // namespace

TaskExpander::TaskExpander(const Hierarchy& h, Weight total_weight, const MultisectionOptions& options)
    : hierarchy_(h), total_weight_(total_weight), options_(options), counters_(h.levels()) {}

std::vector<PartitionTask> TaskExpander::expand(const PartitionTask& task, int budget) const {
  if (task.depth < 1 || task.depth > hierarchy_.levels()) {
    fail(ErrorCode::kInternal, "expand: task depth out of range");
  }
  const auto a = static_cast<BlockId>(hierarchy_.arity(task.depth));
  const PeId child_span = hierarchy_.prefix(task.depth - 1);
  std::vector<PartitionTask> children(a);
  for (BlockId b = 0; b < a; ++b) {
    children[b].depth = task.depth - 1;
    children[b].block_offset = task.block_offset + b * child_span;
    children[b].seed = split_seed(task.seed, static_cast<std::uint64_t>(b));
  }
  const Graph& g = *task.graph;
  if (g.empty()) {
    for (auto& c : children) c.graph = task.graph;
    return children;
  }

  std::vector<BlockId> ids(g.num_vertices());
  if (g.num_vertices() < a || g.total_weight() == 0) {
    // Too small to partition: spread vertices over the first blocks.
    for (VertexId v = 0; v < g.num_vertices(); ++v) ids[v] = v % a;
  } else {
    const auto eps = adaptive_epsilon(options_.epsilon, hierarchy_.num_pes(), total_weight_,
                                      hierarchy_.prefix(task.depth), g.total_weight(), task.depth);
    if (eps.balance_risk) counters_.balance_risk_calls.fetch_add(1);
    counters_.calls_per_depth[task.depth].fetch_add(1);
    raise_peak(counters_.peak_active_threads, counters_.active_threads.fetch_add(budget) + budget);
    raise_peak(counters_.peak_active_calls, counters_.active_calls.fetch_add(1) + 1);
    struct Leave {
      SchedulerCounters& c;
      int budget;
      ~Leave() {
        c.active_threads.fetch_sub(budget);
        c.active_calls.fetch_sub(1);
      }
    } leave{counters_, budget};
    auto result = options_.partitioner
                      ? options_.partitioner(g, a, eps.value, budget, task.seed)
                      : partition(g, a, eps.value, budget, options_.config, task.seed);
    if (static_cast<VertexId>(result.block_ids.size()) != g.num_vertices()) {
      fail(ErrorCode::kInternal, "expand: partitioner returned a wrong-sized assignment");
    }
    ids = std::move(result.block_ids);
  }

  auto parts = split_into_blocks(g, ids, a);
  for (BlockId b = 0; b < a; ++b) {
    auto& child = children[b];
    child.vertices = std::move(parts[b].local_to_global);
    for (auto& v : child.vertices) v = task.vertices[v];
    // Leaves only need their vertex lists.
    child.graph = child.depth > 0 ? std::make_shared<const Graph>(std::move(parts[b].subgraph))
                                  : std::make_shared<const Graph>();
  }
  return children;
}

MappingResult map_hierarchical(const Graph& g, const Hierarchy& h, const MultisectionOptions& options) {
  if (options.threads < 1) fail(ErrorCode::kInvalidArgument, "map: thread count must be >= 1");
  if (options.epsilon < 0) fail(ErrorCode::kInvalidArgument, "map: imbalance must be non-negative");
  if (g.empty() || g.total_weight() <= 0) fail(ErrorCode::kInvalidArgument, "map: graph has no weight to map");
  options.config.validate();

  const auto start = std::chrono::steady_clock::now();
  TaskExpander expander(h, g.total_weight(), options);
  PartitionTask root;
  root.graph = std::make_shared<const Graph>(g);
  root.vertices.resize(g.num_vertices());
  std::iota(root.vertices.begin(), root.vertices.end(), 0);
  root.depth = h.levels();
  root.block_offset = 0;
  root.seed = options.seed;

  std::vector<PartitionTask> leaves;
  switch (options.strategy) {
    case Strategy::kNaive:
      leaves = run_naive(std::move(root), expander, options.threads);
      break;
    case Strategy::kLayer:
      leaves = run_layer(std::move(root), expander, options.threads);
      break;
    case Strategy::kQueue:
      leaves = run_queue(std::move(root), expander, options.threads);
      break;
    case Strategy::kNonBlockingLayer:
      leaves = run_nb_layer(std::move(root), expander, options.threads);
      break;
  }

  const PeId k = h.num_pes();
  if (static_cast<PeId>(leaves.size()) != k) {
    fail(ErrorCode::kInternal, "map: scheduler produced " + std::to_string(leaves.size()) + " leaves for " +
                                   std::to_string(k) + " PEs");
  }
  MappingResult out;
  out.mapping.assignment.assign(g.num_vertices(), -1);
  std::vector<char> owned(k, 0);
  for (const auto& leaf : leaves) {
    if (leaf.depth != 0 || leaf.block_offset < 0 || leaf.block_offset >= k || owned[leaf.block_offset]) {
      fail(ErrorCode::kInternal, "map: leaf tasks do not cover every PE exactly once");
    }
    owned[leaf.block_offset] = 1;
    for (const auto v : leaf.vertices) out.mapping.assignment[v] = static_cast<BlockId>(leaf.block_offset);
  }
  if (std::find(out.mapping.assignment.begin(), out.mapping.assignment.end(), -1) != out.mapping.assignment.end()) {
    fail(ErrorCode::kInternal, "map: some vertices were never assigned");
  }
  const auto stop = std::chrono::steady_clock::now();

  auto& stats = out.stats;
  stats.wall_time_ms = std::max(1e-6, std::chrono::duration<double, std::milli>(stop - start).count());
  stats.comm_cost = comm_cost(g, h, out.mapping.assignment);
  stats.edge_cut = edge_cut(g, out.mapping.assignment);
  stats.balance = check_balance(g, out.mapping.assignment, k, options.epsilon);
  auto& c = expander.counters();
  for (int d = 0; d <= h.levels(); ++d) stats.partition_calls_per_depth.push_back(c.calls_per_depth[d].load());
  stats.peak_active_threads = c.peak_active_threads.load();
  stats.peak_active_calls = c.peak_active_calls.load();
  stats.cursor_claims = c.cursor_claims.load();
  stats.balance_risk_calls = c.balance_risk_calls.load();
  stats.final_idle_threads = c.final_idle_threads.load();
  stats.final_queue_size = c.final_queue_size.load();
  return out;
}

}  // namespace procmap
