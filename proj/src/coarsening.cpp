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

#include <algorithm>
#include <numeric>

#include "procmap/error.hpp"
#include "procmap/partitioner.hpp"
#include "procmap/random.hpp"

namespace procmap {

CoarseLevel coarsen_with_order(const Graph& g, std::span<const VertexId> visit_order, Weight max_vertex_weight) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(visit_order.size()) != n) {
    fail(ErrorCode::kInvalidArgument, "coarsen: visit order must list every vertex once");
  }
  constexpr VertexId kUnmatched = -1;
  std::vector<VertexId> mate(n, kUnmatched);
  for (const VertexId v : visit_order) {
    if (mate[v] != kUnmatched) continue;
    VertexId best = kUnmatched;
    Weight best_weight = -1;
    const auto nbrs = g.neighbors(v);
    const auto ws = g.incident_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId u = nbrs[i];
      if (mate[u] != kUnmatched || g.vertex_weight(u) + g.vertex_weight(v) > max_vertex_weight) continue;
      if (ws[i] > best_weight || (ws[i] == best_weight && u < best)) {
        best = u;
        best_weight = ws[i];
      }
    }
    if (best == kUnmatched) {
      mate[v] = v;
    } else {
      mate[v] = best;
      mate[best] = v;
    }
  }

  CoarseLevel level;
  level.coarse_map.assign(n, kUnmatched);
  std::vector<VertexId> first_member;
  for (VertexId v = 0; v < n; ++v) {
    if (level.coarse_map[v] != kUnmatched) continue;
    const auto id = static_cast<VertexId>(first_member.size());
    level.coarse_map[v] = id;
    level.coarse_map[mate[v]] = id;
    first_member.push_back(v);
  }

  const auto coarse_n = static_cast<VertexId>(first_member.size());
  std::vector<EdgeIndex> offsets{0};
  offsets.reserve(coarse_n + 1);
  std::vector<VertexId> targets;
  std::vector<Weight> edge_weights;
  std::vector<Weight> vertex_weights(coarse_n, 0);
  targets.reserve(g.num_directed_edges());
  edge_weights.reserve(g.num_directed_edges());
  std::vector<EdgeIndex> slot(coarse_n, -1);
  for (VertexId c = 0; c < coarse_n; ++c) {
    const VertexId a = first_member[c];
    const VertexId b = mate[a];
    const auto row_begin = static_cast<EdgeIndex>(targets.size());
    const int members = a == b ? 1 : 2;
    for (int m = 0; m < members; ++m) {
      const VertexId member = m == 0 ? a : b;
      vertex_weights[c] += g.vertex_weight(member);
      const auto nbrs = g.neighbors(member);
      const auto ws = g.incident_weights(member);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const VertexId target = level.coarse_map[nbrs[i]];
        if (target == c) continue;
        if (slot[target] >= row_begin) {
          edge_weights[slot[target]] += ws[i];
        } else {
          slot[target] = static_cast<EdgeIndex>(targets.size());
          targets.push_back(target);
          edge_weights.push_back(ws[i]);
        }
      }
    }
    offsets.push_back(static_cast<EdgeIndex>(targets.size()));
  }
  level.graph = Graph(std::move(offsets), std::move(targets), std::move(vertex_weights), std::move(edge_weights));
  return level;
}

CoarseLevel coarsen_once(const Graph& g, std::uint64_t seed, Weight max_vertex_weight) {
  std::vector<VertexId> order(g.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return coarsen_with_order(g, order, max_vertex_weight);
}

}  // namespace procmap
