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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "procmap/graph.hpp"
#include "procmap/rational.hpp"

namespace procmap {

enum class Preset { kFast, kEco, kStrong };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view name);

/// Knobs of the multilevel engine. The three presets trade time for quality.
struct PartitionConfig {
  Preset preset = Preset::kEco;
  int coarsen_stop_threshold = 80;  // coarse vertices per side
  int max_coarsen_rounds = 64;
  int initial_attempts = 8;
  int fm_passes = 4;
  double stagnation_ratio = 0.98;  // stop coarsening if n_coarse > ratio * n
  int portfolio_scaling = 2;       // portfolio size cap = initial_attempts * portfolio_scaling

  static PartitionConfig from_preset(Preset preset);
  void validate() const;
};

struct PartitionResult {
  std::vector<BlockId> block_ids;
  Weight achieved_cut = 0;
  Weight achieved_max_block_weight = 0;
  Weight block_cap = 0;  // ceil((1 + eps') * c(V) / a)
  bool met_balance = true;
  int attempts = 1;
};

/// a-way partition of `g` with every block weight at most
/// ceil((1 + eps_prime) * c(V) / a) where possible. `budget` threads run
/// min(budget, initial_attempts * portfolio_scaling) independently seeded
/// attempts; the best one wins by (met balance, cut, heaviest block, attempt
/// index). The result depends only on the arguments, never on timing.
PartitionResult partition(const Graph& g, BlockId a, const Rational& eps_prime, int budget,
                          const PartitionConfig& cfg, std::uint64_t seed);

struct CoarseLevel {
  Graph graph;
  std::vector<VertexId> coarse_map;  // fine vertex -> coarse vertex
};

/// One round of heavy-edge matching plus contraction. Vertices are visited in
/// a seeded random order and matched to the unmatched neighbor with the
/// heaviest connecting edge (ties: lower id). Pairs whose combined weight
/// would exceed max_vertex_weight are not matched.
CoarseLevel coarsen_once(const Graph& g, std::uint64_t seed, Weight max_vertex_weight = INT64_MAX);

/// Same as coarsen_once, but with an explicit visit order (a permutation of
/// the vertex ids).
CoarseLevel coarsen_with_order(const Graph& g, std::span<const VertexId> visit_order,
                               Weight max_vertex_weight = INT64_MAX);

/// Greedy graph growing: block 0 starts at a seeded random vertex and absorbs
/// the unassigned vertex with the highest gain (weight into block 0 minus
/// weight to the rest) until its weight reaches target_weight_0.
std::vector<BlockId> initial_bipartition(const Graph& g, Weight target_weight_0, std::uint64_t seed);

/// Two-way Fiduccia-Mattheyses refinement with block weight caps. Overloaded
/// blocks are first relieved by greedy moves; after that every pass moves
/// vertices in gain order, each at most once, and rolls back to the best
/// prefix. A balanced input never gets a larger cut. Returns the final cut.
Weight fm_refine(const Graph& g, std::vector<BlockId>& block_ids, std::array<Weight, 2> caps, int passes);

/// Multilevel recursive bisection into `a` blocks with every block at most
/// `block_cap`. The left half of each split gets ceil(a/2) blocks and ids
/// [0, ceil(a/2)).
std::vector<BlockId> recursive_split(const Graph& g, BlockId a, Weight block_cap, const PartitionConfig& cfg,
                                     std::uint64_t seed);

/// Full multilevel bisection with the given side caps and side-0 target.
std::vector<BlockId> multilevel_bisect(const Graph& g, std::array<Weight, 2> caps, Weight target_weight_0,
                                       const PartitionConfig& cfg, std::uint64_t seed);

}  // namespace procmap
