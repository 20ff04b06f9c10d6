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

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "procmap/graph.hpp"
#include "procmap/partitioner.hpp"
#include "procmap/rational.hpp"
#include "procmap/topology.hpp"

namespace procmap {

/// How threads are handed out to the partition calls of the hierarchy.
enum class Strategy {
  kNaive,             // one call at a time with all p threads
  kLayer,             // one hierarchy layer at a time, barrier in between
  kQueue,             // master thread feeding a size-ordered queue
  kNonBlockingLayer,  // thread groups descend independently, idle pool
};

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view name);

/// Threads for graph j (1-based) of m graphs sharing p threads: floor(p/m),
/// plus one for the first p mod m graphs; 1 each when p < m.
int distribute_threads(int p, int m, int j);

/// A subgraph waiting to be split along the hierarchy. `depth` counts the
/// levels still below it (the root has depth l, leaves depth 0) and PEs
/// [block_offset, block_offset + prefix(depth)) belong to it.
struct PartitionTask {
  std::shared_ptr<const Graph> graph;
  std::vector<VertexId> vertices;  // ids in the input graph
  int depth = 0;
  PeId block_offset = 0;
  std::uint64_t seed = 0;
};

using PartitionFunction =
    std::function<PartitionResult(const Graph& g, BlockId a, const Rational& eps_prime, int budget, std::uint64_t seed)>;

struct MultisectionOptions {
  Rational epsilon{3, 100};
  int threads = 1;
  Strategy strategy = Strategy::kNonBlockingLayer;
  PartitionConfig config = PartitionConfig::from_preset(Preset::kEco);
  std::uint64_t seed = 1;
  bool queue_orders_by_edges = false;  // default orders the queue by vertex count
  PartitionFunction partitioner;       // empty: the built-in multilevel engine
};

/// Live counters shared by the schedulers. Every field is atomic.
struct SchedulerCounters {
  explicit SchedulerCounters(int levels);

  std::atomic<int> active_threads{0};  // sum of budgets of running partition calls
  std::atomic<int> peak_active_threads{0};
  std::atomic<int> active_calls{0};
  std::atomic<int> peak_active_calls{0};
  std::atomic<std::int64_t> cursor_claims{0};
  std::atomic<std::int64_t> balance_risk_calls{0};
  std::atomic<std::int64_t> final_idle_threads{-1};
  std::atomic<std::int64_t> final_queue_size{-1};
  std::unique_ptr<std::atomic<std::int64_t>[]> calls_per_depth;
  int levels;
};

/// Splits one task into its a_depth children. Thread-safe; the only shared
/// mutable state it touches are the atomic counters.
class TaskExpander {
 public:
  TaskExpander(const Hierarchy& h, Weight total_weight, const MultisectionOptions& options);

  std::vector<PartitionTask> expand(const PartitionTask& task, int budget) const;

  const Hierarchy& hierarchy() const { return hierarchy_; }
  const MultisectionOptions& options() const { return options_; }
  SchedulerCounters& counters() const { return counters_; }

 private:
  const Hierarchy& hierarchy_;
  Weight total_weight_;
  const MultisectionOptions& options_;
  mutable SchedulerCounters counters_;
};

/// The four schedulers. Each consumes the root task and returns the k leaf
/// tasks (depth 0), ordered by block offset.
std::vector<PartitionTask> run_naive(PartitionTask root, const TaskExpander& expander, int p);
std::vector<PartitionTask> run_layer(PartitionTask root, const TaskExpander& expander, int p);
std::vector<PartitionTask> run_queue(PartitionTask root, const TaskExpander& expander, int p);
std::vector<PartitionTask> run_nb_layer(PartitionTask root, const TaskExpander& expander, int p);

struct RunStats {
  double wall_time_ms = 0;
  std::vector<std::int64_t> partition_calls_per_depth;  // index = depth of the split task
  Weight comm_cost = 0;
  Weight edge_cut = 0;
  BalanceReport balance;
  int peak_active_threads = 0;
  int peak_active_calls = 0;
  std::int64_t cursor_claims = 0;
  std::int64_t balance_risk_calls = 0;
  std::int64_t final_idle_threads = -1;  // queue and nb-layer only
  std::int64_t final_queue_size = -1;    // queue only
};

struct MappingResult {
  Mapping mapping;
  RunStats stats;
};

/// Hierarchical multisection: splits the graph a_l ways, every block a_{l-1}
/// ways, and so on; the leaf reached through child indices b_l, ..., b_1 owns
/// PE sum_i b_i * prefix(i - 1), so the final mapping is the identity.
MappingResult map_hierarchical(const Graph& g, const Hierarchy& h, const MultisectionOptions& options);

}  // namespace procmap
