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

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "procmap/error.hpp"
#include "procmap/eval.hpp"
#include "procmap/multisection.hpp"
#include "support/generators.hpp"

namespace procmap {
namespace {

using testing::path_graph;
using testing::random_graph;

// Plain enumeration of every balanced mapping, no pruning.
Weight enumerate_min_cost(const Graph& g, const Hierarchy& h, const Rational& eps) {
  const auto n = g.num_vertices();
  const auto k = h.num_pes();
  const auto c = testing::dense_matrix(g);
  std::vector<BlockId> pi(n, 0);
  Weight best = -1;
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (v == n) {
      if (!check_balance(g, pi, k, eps).is_balanced) return;
      const auto j = testing::dense_comm_cost(c, h.arities(), h.distances(), pi);
      if (best < 0 || j < best) best = j;
      return;
    }
    for (BlockId x = 0; x < k; ++x) {
      pi[v] = x;
      rec(v + 1);
    }
  };
  rec(0);
  return best;
}

TEST(Oracle, Examples) {
  const auto p4 = optimal_mapping(path_graph(4), parse_hierarchy("2", "1"), 0);
  EXPECT_EQ(p4.cost, 2);
  EXPECT_EQ(comm_cost(path_graph(4), parse_hierarchy("2", "1"), p4.mapping), 2);

  const auto single = optimal_mapping(path_graph(1), parse_hierarchy("1", "1"), 0);
  EXPECT_EQ(single.cost, 0);
  EXPECT_EQ(single.mapping, std::vector<BlockId>{0});

  // n = k: every PE gets exactly one task
  const auto h = parse_hierarchy("2:2", "1:10");
  const auto g = testing::complete_graph(4);
  const auto qap = optimal_mapping(g, h, 0);
  EXPECT_EQ(qap.cost, enumerate_min_cost(g, h, 0));
  std::vector<BlockId> sorted = qap.mapping;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<BlockId>{0, 1, 2, 3}));
}

TEST(Oracle, EnforcesCaps) {
  EXPECT_THROW(optimal_mapping(path_graph(15), parse_hierarchy("2", "1"), 0), Error);
  EXPECT_THROW(optimal_mapping(path_graph(10), parse_hierarchy("3:3", "1:2"), 0), Error);
  GraphBuilder heavy(2);
  heavy.set_vertex_weight(0, 10);
  try {
    optimal_mapping(heavy.build(), parse_hierarchy("2", "1"), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(Oracle, MatchesPlainEnumeration) {
  std::mt19937_64 rng(31);
  const std::vector<std::pair<std::string, std::string>> hs{
      {"2", "3"}, {"2:2", "1:10"}, {"3", "1"}, {"4", "2"}, {"2:2", "7:1"}, {"2:3", "1:5"}, {"2:2:2", "1:10:100"}};
  for (int trial = 0; trial < 35; ++trial) {
    const auto& [a, d] = hs[trial % hs.size()];
    const auto h = parse_hierarchy(a, d);
    const VertexId max_n = h.num_pes() >= 6 ? 7 : 8;
    const auto n = 1 + static_cast<VertexId>(rng() % max_n);
    const auto g = random_graph(n, 0.5, rng(), 9, trial % 3 == 0 ? 3 : 1);
    const Rational eps(static_cast<std::int64_t>(rng() % 4) * 10, 100);
    const auto expected = enumerate_min_cost(g, h, eps);
    if (expected < 0) {
      EXPECT_THROW(optimal_mapping(g, h, eps), Error);
      continue;
    }
    const auto got = optimal_mapping(g, h, eps);
    EXPECT_EQ(got.cost, expected) << a << " n=" << n << " trial " << trial;
    EXPECT_EQ(comm_cost(g, h, got.mapping), got.cost);
    EXPECT_TRUE(check_balance(g, got.mapping, h.num_pes(), eps).is_balanced);
  }
}

TEST(Oracle, BoundsTheHeuristic) {
  std::mt19937_64 rng(37);
  const auto h = parse_hierarchy("2:2", "1:10");
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_graph(6 + static_cast<VertexId>(rng() % 5), 0.4, rng(), 5);
    MultisectionOptions o;
    o.seed = rng();
    const auto mapped = map_hierarchical(g, h, o);
    if (!mapped.stats.balance.is_balanced) continue;
    EXPECT_GE(mapped.stats.comm_cost, optimal_mapping(g, h, o.epsilon).cost);
  }
}

TEST(QualityTable, RejectsBadRows) {
  QualityTable t;
  t.add("a", "i", 1);
  EXPECT_THROW(t.add("a", "i", 2), Error);
  EXPECT_THROW(t.add("a", "j", -1), Error);
  EXPECT_THROW(t.add("a", "j", std::numeric_limits<double>::quiet_NaN()), Error);
  t.add("b", "j", 1);
  EXPECT_THROW(t.validate_dense(), Error);
  const std::vector<double> taus{1.0};
  EXPECT_THROW(performance_profile(t, taus), Error);
}

TEST(PerformanceProfile, TwoAlgorithmsOneInstance) {
  QualityTable t;
  t.add("A", "i", 10);
  t.add("B", "i", 20);
  const std::vector<double> taus{1.0, 1.5, 1.999, 2.0, 3.0};
  const auto p = performance_profile(t, taus);
  ASSERT_EQ(p.algorithms, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(p.fractions[0], (std::vector<double>{1, 1, 1, 1, 1}));
  EXPECT_EQ(p.fractions[1], (std::vector<double>{0, 0, 0, 1, 1}));
}

TEST(PerformanceProfile, SingleAlgorithmIsOne) {
  QualityTable t;
  t.add("only", "x", 4);
  t.add("only", "y", 9);
  const std::vector<double> taus{1.0, 2.0};
  EXPECT_EQ(performance_profile(t, taus).fractions[0], (std::vector<double>{1, 1}));
}

TEST(PerformanceProfile, ExcludesZeroQualityInstances) {
  QualityTable t;
  t.add("A", "x", 0);
  t.add("B", "x", 5);
  t.add("A", "y", 3);
  t.add("B", "y", 6);
  const std::vector<double> taus{1.0};
  const auto p = performance_profile(t, taus);
  EXPECT_EQ(p.excluded_instances, std::vector<std::string>{"x"});
  EXPECT_EQ(p.fractions[0][0], 1.0);
  EXPECT_EQ(p.fractions[1][0], 0.0);
}

TEST(PerformanceProfile, MonotoneAndReachesOne) {
  std::mt19937_64 rng(41);
  QualityTable t;
  for (int a = 0; a < 4; ++a) {
    for (int i = 0; i < 20; ++i) t.add("alg" + std::to_string(a), "inst" + std::to_string(i), 1 + rng() % 100);
  }
  std::vector<double> taus;
  for (double tau = 1.0; tau <= 101.0; tau += 0.25) taus.push_back(tau);
  const auto p = performance_profile(t, taus);
  for (const auto& row : p.fractions) {
    EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
    EXPECT_EQ(row.back(), 1.0);
  }
  // at tau = 1 every instance is won by someone
  double winners = 0;
  for (const auto& row : p.fractions) winners += row[0];
  EXPECT_GE(winners, 1.0);
}

}  // namespace
}  // namespace procmap
