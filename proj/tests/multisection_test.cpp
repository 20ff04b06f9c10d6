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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

#include "procmap/error.hpp"
#include "procmap/multisection.hpp"
#include "support/generators.hpp"

namespace procmap {
namespace {

using testing::path_graph;
using testing::random_graph;

constexpr Strategy kAllStrategies[] = {Strategy::kNaive, Strategy::kLayer, Strategy::kQueue,
                                       Strategy::kNonBlockingLayer};

struct Call {
  VertexId n;
  BlockId a;
  Rational eps;
  int budget;
  bool met_balance;
};

// Wraps a partition function and records every call.
class Recorder {
 public:
  explicit Recorder(PartitionFunction inner = {}) : inner_(std::move(inner)) {}

  PartitionFunction function() {
    return [this](const Graph& g, BlockId a, const Rational& eps, int budget, std::uint64_t seed) {
      auto result = inner_ ? inner_(g, a, eps, budget, seed)
                           : partition(g, a, eps, budget, PartitionConfig::from_preset(Preset::kFast), seed);
      std::lock_guard lock(mutex_);
      calls_.push_back({g.num_vertices(), a, eps, budget, result.met_balance});
      return result;
    };
  }
  std::vector<Call> calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

 private:
  PartitionFunction inner_;
  mutable std::mutex mutex_;
  std::vector<Call> calls_;
};

// Block 0 takes the first `share` of the vertices (by id), the rest go
// round-robin to the other blocks.
PartitionFunction skewed(double share) {
  return [share](const Graph& g, BlockId a, const Rational&, int, std::uint64_t) {
    PartitionResult r;
    const auto n = g.num_vertices();
    const auto first = std::max<VertexId>(1, static_cast<VertexId>(share * n));
    r.block_ids.resize(n);
    for (VertexId v = 0; v < n; ++v) r.block_ids[v] = v < first || a == 1 ? 0 : 1 + (v - first) % (a - 1);
    return r;
  };
}

// Worst case for a unit-weight graph: block 0 gets exactly the cap
// ceil((1 + eps') * n / a), the rest is spread evenly.
PartitionResult greedy_heavy(const Graph& g, BlockId a, const Rational& eps) {
  const auto n = g.num_vertices();
  const auto cap = std::min<Weight>(n - (a - 1), ceil_to_int((1 + eps) * Rational(n) / Rational(a)));
  PartitionResult r;
  r.block_ids.resize(n);
  for (VertexId v = 0; v < n; ++v) r.block_ids[v] = v < cap ? 0 : 1 + (v - cap) % (a - 1);
  return r;
}

MultisectionOptions options_for(Strategy s, int threads, std::uint64_t seed = 1) {
  MultisectionOptions o;
  o.strategy = s;
  o.threads = threads;
  o.seed = seed;
  o.config = PartitionConfig::from_preset(Preset::kFast);
  return o;
}

TEST(DistributeThreads, Examples) {
  EXPECT_EQ(distribute_threads(80, 3, 1), 27);
  EXPECT_EQ(distribute_threads(80, 3, 2), 27);
  EXPECT_EQ(distribute_threads(80, 3, 3), 26);
  for (int j = 1; j <= 8; ++j) EXPECT_EQ(distribute_threads(4, 8, j), 1);
  for (int j = 1; j <= 6; ++j) EXPECT_EQ(distribute_threads(6, 6, j), 1);
  EXPECT_THROW(distribute_threads(4, 3, 0), Error);
  EXPECT_THROW(distribute_threads(4, 3, 4), Error);
}

TEST(DistributeThreads, SumsToPAndDiffersByAtMostOne) {
  for (int p = 1; p <= 64; ++p) {
    for (int m = 1; m <= 64; ++m) {
      int sum = 0, lo = p, hi = 0;
      for (int j = 1; j <= m; ++j) {
        const int b = distribute_threads(p, m, j);
        ASSERT_GE(b, 1);
        sum += b;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
      if (p >= m) {
        EXPECT_EQ(sum, p);
        EXPECT_LE(hi - lo, 1);
      }
    }
  }
}

TEST(StrategyNames, RoundTrip) {
  for (const auto s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_EQ(parse_strategy("nb_layer"), Strategy::kNonBlockingLayer);
  EXPECT_THROW(parse_strategy("greedy"), Error);
}

Weight brute_force_min_cost(const Graph& g, const Hierarchy& h, Weight l_max) {
  const auto n = g.num_vertices();
  const auto k = h.num_pes();
  const auto c = testing::dense_matrix(g);
  std::vector<BlockId> pi(n, 0);
  std::vector<Weight> load(k, 0);
  Weight best = -1;
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (v == n) {
      const auto j = testing::dense_comm_cost(c, h.arities(), h.distances(), pi);
      if (best < 0 || j < best) best = j;
      return;
    }
    for (BlockId x = 0; x < k; ++x) {
      if (load[x] + g.vertex_weight(v) > l_max) continue;
      load[x] += g.vertex_weight(v);
      pi[v] = x;
      rec(v + 1);
      load[x] -= g.vertex_weight(v);
    }
  };
  rec(0);
  return best;
}

TEST(MapHierarchical, PathOnTwoByTwo) {
  const auto g = path_graph(8);
  const auto h = parse_hierarchy("2:2", "1:10");
  for (const auto s : kAllStrategies) {
    auto o = options_for(s, 1);
    o.epsilon = 0;
    const auto r = map_hierarchical(g, h, o);
    EXPECT_EQ(r.stats.edge_cut, 3) << to_string(s);
    EXPECT_EQ(r.stats.comm_cost, 2 * (1 + 10 + 1));
    EXPECT_EQ(r.stats.comm_cost, brute_force_min_cost(g, h, 2));
    EXPECT_TRUE(r.stats.balance.is_balanced);
    for (const auto x : r.mapping.assignment) EXPECT_LT(x, 4);

    o.epsilon = Rational(3, 100);
    const auto loose = map_hierarchical(g, h, o);
    EXPECT_TRUE(loose.stats.balance.is_balanced);
    EXPECT_GE(loose.stats.comm_cost, brute_force_min_cost(g, h, compute_l_max(8, 4, o.epsilon)));
  }
}

TEST(MapHierarchical, SingleLevelIsOneCallWithEps) {
  const auto g = random_graph(100, 0.05, 3);
  Recorder rec;
  auto o = options_for(Strategy::kNonBlockingLayer, 2);
  o.partitioner = rec.function();
  map_hierarchical(g, parse_hierarchy("8", "1"), o);
  const auto calls = rec.calls();
  ASSERT_EQ(calls.size(), 1u);
  EXPECT_EQ(calls[0].a, 8);
  EXPECT_EQ(calls[0].eps, o.epsilon);
  EXPECT_EQ(calls[0].budget, 2);
}

TEST(MapHierarchical, AdversarialSplitsStayWithinLMax) {
  GraphBuilder b(800);
  const auto g = b.build();
  const auto h = parse_hierarchy("4:2", "1:10");
  for (const auto s : kAllStrategies) {
    auto o = options_for(s, 2);
    o.epsilon = Rational(1, 10);
    o.partitioner = [](const Graph& sub, BlockId a, const Rational& eps, int, std::uint64_t) {
      return greedy_heavy(sub, a, eps);
    };
    const auto r = map_hierarchical(g, h, o);
    EXPECT_EQ(r.stats.balance.l_max, 110);
    const auto& w = r.stats.balance.block_weights;
    EXPECT_LE(*std::max_element(w.begin(), w.end()), 110) << to_string(s);
    EXPECT_TRUE(r.stats.balance.is_balanced);
  }
  // The same adversary fed the unmodified eps reaches 121.
  auto o = options_for(Strategy::kNaive, 1);
  o.epsilon = Rational(1, 10);
  o.partitioner = [](const Graph& sub, BlockId a, const Rational&, int, std::uint64_t) {
    return greedy_heavy(sub, a, Rational(1, 10));
  };
  const auto naive = map_hierarchical(g, h, o);
  const auto& w = naive.stats.balance.block_weights;
  EXPECT_EQ(*std::max_element(w.begin(), w.end()), 121);
  EXPECT_FALSE(naive.stats.balance.is_balanced);
}

TEST(RunNaive, CallCountsAndBudgets) {
  const auto g = random_graph(200, 0.05, 9);
  Recorder rec;
  auto o = options_for(Strategy::kNaive, 8);
  o.partitioner = rec.function();
  const auto r = map_hierarchical(g, parse_hierarchy("2:2", "1:10"), o);
  const auto calls = rec.calls();
  ASSERT_EQ(calls.size(), 3u);
  for (const auto& c : calls) EXPECT_EQ(c.budget, 8);
  EXPECT_EQ(r.stats.partition_calls_per_depth, (std::vector<std::int64_t>{0, 2, 1}));
  EXPECT_EQ(r.stats.peak_active_calls, 1);
}

TEST(RunLayer, LayerSizesBudgetsAndClaims) {
  const auto g = random_graph(600, 0.02, 4);
  const auto h = parse_hierarchy("4:2:3", "1:10:100");
  {
    Recorder rec;
    auto o = options_for(Strategy::kLayer, 8);
    o.partitioner = rec.function();
    const auto r = map_hierarchical(g, h, o);
    EXPECT_EQ(r.stats.partition_calls_per_depth, (std::vector<std::int64_t>{0, 6, 3, 1}));
    std::vector<int> mid, low;
    for (const auto& c : rec.calls()) {
      if (c.a == 2) mid.push_back(c.budget);
      if (c.a == 4) low.push_back(c.budget);
    }
    std::sort(mid.begin(), mid.end());
    std::sort(low.begin(), low.end());
    EXPECT_EQ(mid, (std::vector<int>{2, 3, 3}));
    EXPECT_EQ(low, (std::vector<int>{1, 1, 1, 1, 2, 2}));
    // claims per layer: |S| + min(p, |S|)
    EXPECT_EQ(r.stats.cursor_claims, (1 + 1) + (3 + 3) + (6 + 6));
    EXPECT_LE(r.stats.peak_active_threads, 8);
  }
  {
    auto o = options_for(Strategy::kLayer, 2);
    const auto r = map_hierarchical(g, h, o);
    EXPECT_EQ(r.stats.cursor_claims, (1 + 1) + (3 + 2) + (6 + 2));
    EXPECT_LE(r.stats.peak_active_calls, 2);
  }
}

TEST(RunQueue, PopsLargestFirst) {
  GraphBuilder b(1000);
  const auto g = b.build();
  Recorder rec(skewed(0.75));
  auto o = options_for(Strategy::kQueue, 1);
  o.partitioner = rec.function();
  map_hierarchical(g, parse_hierarchy("2:2:2", "1:2:3"), o);

  // Replay the queue discipline on sizes alone.
  struct Item {
    VertexId n;
    int depth;
    int order;
  };
  std::vector<Item> queue{{1000, 3, 0}};
  std::vector<VertexId> expected;
  int order = 1;
  while (!queue.empty()) {
    const auto top = std::min_element(queue.begin(), queue.end(), [](const Item& x, const Item& y) {
      return x.n != y.n ? x.n > y.n : x.order < y.order;
    });
    const Item item = *top;
    queue.erase(top);
    expected.push_back(item.n);
    if (item.depth == 1) continue;
    const auto first = std::max<VertexId>(1, static_cast<VertexId>(0.75 * item.n));
    queue.push_back({first, item.depth - 1, order++});
    queue.push_back({item.n - first, item.depth - 1, order++});
  }
  std::vector<VertexId> seen;
  for (const auto& c : rec.calls()) seen.push_back(c.n);
  EXPECT_EQ(seen, expected);
}

TEST(RunQueue, BudgetIsCeilOfIdleOverQueue) {
  GraphBuilder b(1000);
  const auto g = b.build();
  Recorder rec(skewed(0.75));
  auto o = options_for(Strategy::kQueue, 5);
  o.partitioner = rec.function();
  const auto r = map_hierarchical(g, parse_hierarchy("2:2", "1:10"), o);
  auto calls = rec.calls();
  ASSERT_EQ(calls.size(), 3u);
  EXPECT_EQ(calls[0].budget, 5);
  std::sort(calls.begin() + 1, calls.end(), [](const Call& x, const Call& y) { return x.n > y.n; });
  EXPECT_EQ(calls[1].n, 750);
  EXPECT_EQ(calls[1].budget, 3);
  EXPECT_EQ(calls[2].budget, 2);
  EXPECT_EQ(r.stats.final_idle_threads, 5);
  EXPECT_EQ(r.stats.final_queue_size, 0);
}

TEST(RunNbLayer, FinishedGroupsLendThreads) {
  GraphBuilder b(1000);
  const auto g = b.build();
  // The 750-vertex subgraph stalls so its sibling group finishes first and
  // returns its thread to the idle pool.
  Recorder rec([](const Graph& sub, BlockId a, const Rational& eps, int budget, std::uint64_t seed) {
    if (sub.num_vertices() == 750) std::this_thread::sleep_for(std::chrono::milliseconds(300));
    return skewed(0.75)(sub, a, eps, budget, seed);
  });
  auto o = options_for(Strategy::kNonBlockingLayer, 2);
  o.partitioner = rec.function();
  const auto r = map_hierarchical(g, parse_hierarchy("2:2:2", "1:2:3"), o);
  int budget_562 = 0;
  int budget_250 = 0;
  for (const auto& c : rec.calls()) {
    if (c.n == 562) budget_562 = c.budget;
    if (c.n == 250) budget_250 = c.budget;
  }
  EXPECT_EQ(budget_250, 1);
  EXPECT_EQ(budget_562, 2);
  EXPECT_EQ(r.stats.final_idle_threads, 2);
}

TEST(Schedulers, LeavesCoverEveryPeOnce) {
  const std::vector<std::pair<std::string, std::string>> hs{
      {"2:2", "1:10"}, {"4:2:3", "1:10:100"}, {"3", "1"}, {"2:3:2:2", "1:2:3:4"}};
  std::uint64_t seed = 1;
  for (const auto& [a, d] : hs) {
    const auto h = parse_hierarchy(a, d);
    for (const VertexId n : {VertexId{3}, VertexId{40}, VertexId{300}}) {
      const auto g = random_graph(n, 0.05, seed++);
      for (const auto s : kAllStrategies) {
        for (const int p : {1, 3, 8}) {
          auto o = options_for(s, p, seed);
          TaskExpander expander(h, g.total_weight(), o);
          PartitionTask root;
          root.graph = std::make_shared<const Graph>(g);
          root.vertices.resize(n);
          std::iota(root.vertices.begin(), root.vertices.end(), 0);
          root.depth = h.levels();
          root.seed = seed;
          std::vector<PartitionTask> leaves;
          switch (s) {
            case Strategy::kNaive:
              leaves = run_naive(root, expander, p);
              break;
            case Strategy::kLayer:
              leaves = run_layer(root, expander, p);
              break;
            case Strategy::kQueue:
              leaves = run_queue(root, expander, p);
              break;
            case Strategy::kNonBlockingLayer:
              leaves = run_nb_layer(root, expander, p);
              break;
          }
          ASSERT_EQ(static_cast<PeId>(leaves.size()), h.num_pes());
          std::vector<int> seen(n, 0);
          for (PeId x = 0; x < h.num_pes(); ++x) {
            EXPECT_EQ(leaves[x].block_offset, x);
            EXPECT_EQ(leaves[x].depth, 0);
            for (const auto v : leaves[x].vertices) ++seen[v];
          }
          EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), n) << a << " " << to_string(s) << " p=" << p;
          EXPECT_LE(expander.counters().peak_active_threads.load(), p);
        }
      }
    }
  }
}

TEST(Schedulers, SerialRunsAreIdentical) {
  const auto h = parse_hierarchy("4:2:3", "1:10:100");
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto g = testing::random_geometric_graph(500, 6, seed);
    const auto reference = map_hierarchical(g, h, options_for(Strategy::kNaive, 1, seed));
    for (const auto s : kAllStrategies) {
      EXPECT_EQ(map_hierarchical(g, h, options_for(s, 1, seed)).mapping.assignment,
                reference.mapping.assignment)
          << to_string(s);
    }
  }
}

TEST(Schedulers, NaiveAndLayerAreDeterministicInParallel) {
  const auto h = parse_hierarchy("2:2:2", "1:10:100");
  const auto g = testing::random_geometric_graph(800, 6, 5);
  for (const auto s : {Strategy::kNaive, Strategy::kLayer}) {
    const auto first = map_hierarchical(g, h, options_for(s, 4, 3));
    for (int rep = 0; rep < 3; ++rep) {
      EXPECT_EQ(map_hierarchical(g, h, options_for(s, 4, 3)).mapping.assignment, first.mapping.assignment);
    }
  }
}

TEST(Schedulers, BalancedWhenEveryCallMeetsBalance) {
  const auto h = parse_hierarchy("4:2:3", "1:10:100");
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto g = random_graph(700, 0.01, seed, 5, seed % 2 ? 1 : 4);
    for (const auto s : kAllStrategies) {
      for (const int p : {1, 4}) {
        Recorder rec;
        auto o = options_for(s, p, seed);
        o.partitioner = rec.function();
        const auto r = map_hierarchical(g, h, o);
        const auto calls = rec.calls();
        const bool all_met = std::all_of(calls.begin(), calls.end(), [](const Call& c) { return c.met_balance; });
        if (all_met) {
          EXPECT_TRUE(r.stats.balance.is_balanced) << to_string(s) << " p=" << p << " seed " << seed;
        }
        EXPECT_LE(r.stats.peak_active_threads, p);
      }
    }
  }
}

TEST(MapHierarchical, FewerVerticesThanPes) {
  const auto g = path_graph(3);
  for (const auto s : kAllStrategies) {
    const auto r = map_hierarchical(g, parse_hierarchy("2:2", "1:10"), options_for(s, 2));
    std::vector<BlockId> sorted = r.mapping.assignment;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::unique(sorted.begin(), sorted.end()) - sorted.begin(), 3);
  }
}

TEST(MapHierarchical, Errors) {
  const auto g = path_graph(8);
  const auto h = parse_hierarchy("2:2", "1:10");
  auto o = options_for(Strategy::kNaive, 0);
  EXPECT_THROW(map_hierarchical(g, h, o), Error);
  o.threads = 1;
  o.epsilon = -1;
  EXPECT_THROW(map_hierarchical(g, h, o), Error);
  o.epsilon = 0;
  EXPECT_THROW(map_hierarchical(Graph(), h, o), Error);
  o.partitioner = [](const Graph&, BlockId, const Rational&, int, std::uint64_t) { return PartitionResult{}; };
  for (const auto s : kAllStrategies) {
    o.strategy = s;
    o.threads = 3;
    EXPECT_THROW(map_hierarchical(g, h, o), Error) << to_string(s);
  }
}

}  // namespace
}  // namespace procmap
