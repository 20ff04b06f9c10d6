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
#include <queue>

#include "procmap/error.hpp"
#include "procmap/partitioner.hpp"
#include "procmap/random.hpp"

namespace procmap {

namespace {

// Max-heap entry ordered by gain, then by lower vertex id. Entries go stale
// when the vertex's gain changes; consumers re-validate on pop.
struct GainEntry {
  Weight gain;
  VertexId vertex;
};

struct GainOrder {
  bool operator()(const GainEntry& a, const GainEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.vertex > b.vertex;
  }
};

using GainHeap = std::priority_queue<GainEntry, std::vector<GainEntry>, GainOrder>;

class TwoWayState {
 public:
  TwoWayState(const Graph& g, std::vector<BlockId>& part) : g_(g), part_(part), to_(2 * g.num_vertices(), 0) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      weight_[part_[v]] += g.vertex_weight(v);
      const auto nbrs = g.neighbors(v);
      const auto ws = g.incident_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        to_[2 * v + part_[nbrs[i]]] += ws[i];
        if (part_[nbrs[i]] != part_[v]) cut_ += ws[i];
      }
    }
    cut_ /= 2;
  }

  Weight gain(VertexId v) const { return to_[2 * v + 1 - part_[v]] - to_[2 * v + part_[v]]; }
  bool on_boundary(VertexId v) const { return to_[2 * v + 1 - part_[v]] > 0; }
  BlockId side(VertexId v) const { return part_[v]; }
  Weight weight(BlockId b) const { return weight_[b]; }
  Weight cut() const { return cut_; }

  // Moves v to the other side and reports each neighbor, whose gain changed.
  template <typename OnNeighbor>
  void move(VertexId v, OnNeighbor&& on_neighbor) {
    const BlockId from = part_[v];
    const BlockId to = 1 - from;
    cut_ -= gain(v);
    weight_[from] -= g_.vertex_weight(v);
    weight_[to] += g_.vertex_weight(v);
    part_[v] = to;
    const auto nbrs = g_.neighbors(v);
    const auto ws = g_.incident_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      to_[2 * nbrs[i] + from] -= ws[i];
      to_[2 * nbrs[i] + to] += ws[i];
      on_neighbor(nbrs[i]);
    }
  }

 private:
  const Graph& g_;
  std::vector<BlockId>& part_;
  std::vector<Weight> to_;  // to_[2v + b]: edge weight from v into block b
  Weight weight_[2] = {0, 0};
  Weight cut_ = 0;
};

void relieve_overload(const Graph& g, TwoWayState& state, const std::array<Weight, 2>& caps) {
  for (BlockId heavy = 0; heavy < 2; ++heavy) {
    if (state.weight(heavy) <= caps[heavy]) continue;
    const BlockId light = 1 - heavy;
    GainHeap heap;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (state.side(v) == heavy && g.vertex_weight(v) > 0) heap.push({state.gain(v), v});
    }
    while (state.weight(heavy) > caps[heavy] && !heap.empty()) {
      const auto [gain, v] = heap.top();
      heap.pop();
      if (state.side(v) != heavy || gain != state.gain(v)) continue;
      if (state.weight(light) + g.vertex_weight(v) > caps[light]) continue;
      state.move(v, [&](VertexId u) {
        if (state.side(u) == heavy && g.vertex_weight(u) > 0) heap.push({state.gain(u), u});
      });
    }
  }
}

}  // namespace

Weight fm_refine(const Graph& g, std::vector<BlockId>& block_ids, std::array<Weight, 2> caps, int passes) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(block_ids.size()) != n) {
    fail(ErrorCode::kInvalidArgument, "fm_refine: block id array length differs from vertex count");
  }
  for (const auto b : block_ids) {
    if (b != 0 && b != 1) fail(ErrorCode::kInvalidArgument, "fm_refine: expects a two-way partition");
  }
  TwoWayState state(g, block_ids);
  relieve_overload(g, state, caps);

  // A pass gives up after this many moves without a new best cut.
  const std::size_t patience = std::max<std::size_t>(64, static_cast<std::size_t>(n) / 50);
  std::vector<char> locked(n, 0);
  std::vector<VertexId> moves;
  for (int pass = 0; pass < passes; ++pass) {
    const Weight start_cut = state.cut();
    std::fill(locked.begin(), locked.end(), 0);
    moves.clear();
    GainHeap heap;
    for (VertexId v = 0; v < n; ++v) {
      if (state.on_boundary(v)) heap.push({state.gain(v), v});
    }
    Weight best_cut = start_cut;
    std::size_t best_prefix = 0;
    while (!heap.empty()) {
      const auto [gain, v] = heap.top();
      heap.pop();
      if (locked[v] || gain != state.gain(v)) continue;
      const BlockId to = 1 - state.side(v);
      if (state.weight(to) + g.vertex_weight(v) > caps[to]) continue;
      locked[v] = 1;
      moves.push_back(v);
      state.move(v, [&](VertexId u) {
        if (!locked[u]) heap.push({state.gain(u), u});
      });
      if (state.cut() < best_cut) {
        best_cut = state.cut();
        best_prefix = moves.size();
      } else if (moves.size() - best_prefix > patience) {
        break;
      }
    }
    for (std::size_t i = moves.size(); i > best_prefix; --i) {
      state.move(moves[i - 1], [](VertexId) {});
    }
    if (best_cut >= start_cut) break;
  }
  return state.cut();
}

std::vector<BlockId> initial_bipartition(const Graph& g, Weight target_weight_0, std::uint64_t seed) {
  const VertexId n = g.num_vertices();
  std::vector<BlockId> part(n, 1);
  if (n == 0) return part;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  TwoWayState state(g, part);
  GainHeap heap;
  std::size_t next_seed = 0;
  while (state.weight(0) < target_weight_0) {
    VertexId pick = -1;
    while (!heap.empty()) {
      const auto [gain, v] = heap.top();
      heap.pop();
      if (state.side(v) == 1 && gain == state.gain(v)) {
        pick = v;
        break;
      }
    }
    if (pick < 0) {
      // Frontier exhausted (start or disconnected component): take the next
      // unassigned vertex of the seeded order.
      while (next_seed < order.size() && state.side(order[next_seed]) != 1) ++next_seed;
      if (next_seed == order.size()) break;
      pick = order[next_seed];
    }
    state.move(pick, [&](VertexId u) {
      if (state.side(u) == 1) heap.push({state.gain(u), u});
    });
  }
  return part;
}

}  // namespace procmap
