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

#include "procmap/partitioner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <thread>
#include <tuple>

#include "procmap/error.hpp"
#include "procmap/random.hpp"

namespace procmap {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::kFast:
      return "fast";
    case Preset::kEco:
      return "eco";
    case Preset::kStrong:
      return "strong";
  }
  return "eco";
}

Preset parse_preset(std::string_view name) {
  if (name == "fast") return Preset::kFast;
  if (name == "eco") return Preset::kEco;
  if (name == "strong") return Preset::kStrong;
  fail(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "' (fast|eco|strong)");
}

PartitionConfig PartitionConfig::from_preset(Preset preset) {
  PartitionConfig cfg;
  cfg.preset = preset;
  switch (preset) {
    case Preset::kFast:
      cfg.initial_attempts = 4;
      cfg.fm_passes = 2;
      cfg.coarsen_stop_threshold = 60;
      break;
    case Preset::kEco:
      cfg.initial_attempts = 8;
      cfg.fm_passes = 4;
      cfg.coarsen_stop_threshold = 80;
      break;
    case Preset::kStrong:
      cfg.initial_attempts = 16;
      cfg.fm_passes = 8;
      cfg.coarsen_stop_threshold = 120;
      break;
  }
  return cfg;
}

void PartitionConfig::validate() const {
  if (coarsen_stop_threshold < 1 || max_coarsen_rounds < 1 || initial_attempts < 1 || fm_passes < 1 ||
      portfolio_scaling < 1) {
    fail(ErrorCode::kInvalidArgument, "partition config: counts must be >= 1");
  }
  if (!(stagnation_ratio > 0.0 && stagnation_ratio < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "partition config: stagnation_ratio must lie in (0, 1)");
  }
}

namespace {

struct SideWeights {
  Weight w0 = 0;
  Weight w1 = 0;
};

SideWeights side_weights(const Graph& g, const std::vector<BlockId>& part) {
  SideWeights s;
  for (VertexId v = 0; v < g.num_vertices(); ++v) (part[v] == 0 ? s.w0 : s.w1) += g.vertex_weight(v);
  return s;
}

Weight overload(const SideWeights& s, const std::array<Weight, 2>& caps) {
  return std::max<Weight>(0, s.w0 - caps[0]) + std::max<Weight>(0, s.w1 - caps[1]);
}

}  // namespace

std::vector<BlockId> multilevel_bisect(const Graph& g, std::array<Weight, 2> caps, Weight target_weight_0,
                                       const PartitionConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const VertexId n = g.num_vertices();
  if (n == 0) return {};

  const auto stop = static_cast<VertexId>(2 * cfg.coarsen_stop_threshold);
  const Weight average = g.total_weight() / std::max<VertexId>(stop, 1);
  const Weight max_vertex_weight =
      std::max<Weight>(g.max_vertex_weight(), std::min<Weight>(average + average / 2, std::min(caps[0], caps[1]) / 3));

  std::deque<CoarseLevel> levels;
  const Graph* current = &g;
  for (int round = 0; round < cfg.max_coarsen_rounds && current->num_vertices() > stop; ++round) {
    auto level = coarsen_once(*current, rng(), max_vertex_weight);
    const auto before = current->num_vertices();
    const auto after = level.graph.num_vertices();
    if (after == before) break;
    levels.push_back(std::move(level));
    current = &levels.back().graph;
    if (static_cast<double>(after) > cfg.stagnation_ratio * static_cast<double>(before)) break;
  }

  std::vector<BlockId> best;
  std::tuple<Weight, Weight> best_key{INT64_MAX, INT64_MAX};
  for (int attempt = 0; attempt < cfg.initial_attempts; ++attempt) {
    auto part = initial_bipartition(*current, target_weight_0, rng());
    const Weight cut = fm_refine(*current, part, caps, cfg.fm_passes);
    const std::tuple<Weight, Weight> key{overload(side_weights(*current, part), caps), cut};
    if (key < best_key) {
      best_key = key;
      best = std::move(part);
    }
  }

  for (std::size_t i = levels.size(); i-- > 0;) {
    const Graph& fine = i == 0 ? g : levels[i - 1].graph;
    const auto& map = levels[i].coarse_map;
    std::vector<BlockId> projected(fine.num_vertices());
    for (VertexId v = 0; v < fine.num_vertices(); ++v) projected[v] = best[map[v]];
    fm_refine(fine, projected, caps, cfg.fm_passes);
    best = std::move(projected);
  }
  return best;
}

namespace {

int ceil_log2(std::int64_t a) {
  int d = 0;
  while ((std::int64_t{1} << d) < a) ++d;
  return d;
}

// Caps for the two sides of a split of a node with `a` final blocks. The
// per-bisection slack is rescaled over the remaining bisection depth so that
// the final blocks can all stay below block_cap.
std::array<Weight, 2> side_caps(Weight total, BlockId a, BlockId a_left, BlockId a_right, Weight block_cap) {
  if (a == 2) return {block_cap, block_cap};
  if (total <= 0) return {a_left * block_cap, a_right * block_cap};
  const double ratio = std::max(1.0, static_cast<double>(block_cap) * a / static_cast<double>(total));
  const double factor = std::pow(ratio, 1.0 / ceil_log2(a));
  std::array<Weight, 2> caps{};
  const BlockId sides[2] = {a_left, a_right};
  for (int s = 0; s < 2; ++s) {
    const double share = static_cast<double>(total) * sides[s] / a;
    Weight cap = static_cast<Weight>(std::floor(factor * share));
    cap = std::min<Weight>(cap, static_cast<Weight>(sides[s]) * block_cap);
    cap = std::max<Weight>(cap, static_cast<Weight>(std::ceil(share)));
    caps[s] = cap;
  }
  return caps;
}

void split_into(const Graph& g, BlockId a, Weight block_cap, const PartitionConfig& cfg, std::uint64_t seed,
                std::span<const VertexId> to_root, BlockId offset, std::vector<BlockId>& out) {
  if (g.num_vertices() == 0) return;
  if (a == 1) {
    for (const auto v : to_root) out[v] = offset;
    return;
  }
  const BlockId a_left = (a + 1) / 2;
  const BlockId a_right = a / 2;
  const Weight total = g.total_weight();
  const auto caps = side_caps(total, a, a_left, a_right, block_cap);
  const Weight target0 = (total * a_left + a / 2) / a;
  const auto part = multilevel_bisect(g, caps, target0, cfg, split_seed(seed, 0));
  auto sides = split_into_blocks(g, part, 2);
  const BlockId counts[2] = {a_left, a_right};
  const BlockId offsets[2] = {offset, static_cast<BlockId>(offset + a_left)};
  for (int s = 0; s < 2; ++s) {
    auto& side = sides[s];
    for (auto& v : side.local_to_global) v = to_root[v];
    split_into(side.subgraph, counts[s], block_cap, cfg, split_seed(seed, s + 1), side.local_to_global, offsets[s],
               out);
  }
}

// Gives every empty block one vertex taken from the block with most vertices.
void fill_empty_blocks(const Graph& g, BlockId a, std::vector<BlockId>& ids) {
  if (a > g.num_vertices()) return;
  std::vector<VertexId> count(a, 0);
  for (const auto b : ids) ++count[b];
  for (BlockId b = 0; b < a; ++b) {
    if (count[b] > 0) continue;
    const auto donor = static_cast<BlockId>(std::max_element(count.begin(), count.end()) - count.begin());
    VertexId pick = -1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (ids[v] == donor && (pick < 0 || g.vertex_weight(v) < g.vertex_weight(pick))) pick = v;
    }
    ids[pick] = b;
    --count[donor];
    ++count[b];
  }
}

}  // namespace

std::vector<BlockId> recursive_split(const Graph& g, BlockId a, Weight block_cap, const PartitionConfig& cfg,
                                     std::uint64_t seed) {
  if (a < 1) fail(ErrorCode::kInvalidArgument, "recursive_split: need at least one block");
  std::vector<BlockId> ids(g.num_vertices(), 0);
  std::vector<VertexId> identity(g.num_vertices());
  std::iota(identity.begin(), identity.end(), 0);
  split_into(g, a, block_cap, cfg, seed, identity, 0, ids);
  return ids;
}

PartitionResult partition(const Graph& g, BlockId a, const Rational& eps_prime, int budget,
                          const PartitionConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (a < 1) fail(ErrorCode::kInvalidArgument, "partition: number of blocks must be >= 1");
  if (budget < 1) fail(ErrorCode::kInvalidArgument, "partition: thread budget must be >= 1");
  if (eps_prime < 0) fail(ErrorCode::kInvalidArgument, "partition: imbalance must be non-negative");
  if (g.empty()) fail(ErrorCode::kInvalidArgument, "partition: graph has no vertices");
  if (g.total_weight() <= 0) fail(ErrorCode::kInvalidArgument, "partition: total vertex weight is 0");
  if (a > g.num_vertices()) fail(ErrorCode::kInvalidArgument, "partition: more blocks than vertices");

  const Weight cap = ceil_to_int((1 + eps_prime) * Rational(g.total_weight()) / Rational(a));
  const auto evaluate = [&](std::vector<BlockId> ids) {
    PartitionResult r;
    const auto weights = block_weights(g, ids, a);
    r.achieved_max_block_weight = *std::max_element(weights.begin(), weights.end());
    r.achieved_cut = edge_cut(g, ids);
    r.block_cap = cap;
    r.met_balance = r.achieved_max_block_weight <= cap;
    r.block_ids = std::move(ids);
    return r;
  };
  if (a == 1) return evaluate(std::vector<BlockId>(g.num_vertices(), 0));

  const int attempts = std::max(1, std::min(budget, cfg.initial_attempts * cfg.portfolio_scaling));
  std::vector<PartitionResult> results(attempts);
  std::vector<std::exception_ptr> errors(attempts);
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next.fetch_add(1); i < attempts; i = next.fetch_add(1)) {
      try {
        auto ids = recursive_split(g, a, cap, cfg, split_seed(seed, static_cast<std::uint64_t>(i)));
        fill_empty_blocks(g, a, ids);
        results[i] = evaluate(std::move(ids));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min(budget, attempts);
  {
    std::vector<std::jthread> helpers;
    helpers.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) helpers.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  int best = 0;
  const auto key = [&](int i) {
    const auto& r = results[i];
    return std::make_tuple(!r.met_balance, r.achieved_cut, r.achieved_max_block_weight, i);
  };
  for (int i = 1; i < attempts; ++i) {
    if (key(i) < key(best)) best = i;
  }
  PartitionResult result = std::move(results[best]);
  result.attempts = attempts;
  return result;
}

}  // namespace procmap
