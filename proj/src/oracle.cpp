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
#include "procmap/eval.hpp"

namespace procmap {

namespace {

class MappingSearch {
 public:
  MappingSearch(const Graph& g, const Hierarchy& h, Weight l_max)
      : g_(g), h_(h), l_max_(l_max), k_(h.num_pes()), pe_of_(g.num_vertices(), -1), load_(k_, 0) {
    order_.resize(g.num_vertices());
    std::iota(order_.begin(), order_.end(), 0);
    // Heavy communicators first: their edges tighten the bound early.
    std::stable_sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) {
      return weighted_degree(a) > weighted_degree(b);
    });
    for (int level = 1; level <= h.levels(); ++level) opened_.emplace_back(h.num_pes() / h.prefix(level), 0);
    distance_.resize(k_ * k_);
    for (PeId x = 0; x < k_; ++x) {
      for (PeId y = 0; y < k_; ++y) distance_[x * k_ + y] = pe_distance(h, x, y);
    }
  }

  OracleResult run() {
    descend(0, 0);
    if (best_.empty()) fail(ErrorCode::kInfeasible, "oracle: no balanced mapping exists");
    return {best_cost_, best_, explored_};
  }

 private:
  Weight weighted_degree(VertexId v) const {
    const auto ws = g_.incident_weights(v);
    return std::accumulate(ws.begin(), ws.end(), Weight{0});
  }

  // Child index of PE x below its level-`level` group and that group's id.
  std::int64_t child_index(PeId x, int level) const { return (x / h_.prefix(level - 1)) % h_.arity(level); }
  std::int64_t group(PeId x, int level) const { return x / h_.prefix(level); }

  bool canonical(PeId x) const {
    for (int level = h_.levels(); level >= 1; --level) {
      if (child_index(x, level) > opened_[level - 1][group(x, level)]) return false;
    }
    return true;
  }

  // Marks the path of x as opened; returns the levels that changed.
  std::uint32_t open(PeId x) {
    std::uint32_t changed = 0;
    for (int level = h_.levels(); level >= 1; --level) {
      auto& opened = opened_[level - 1][group(x, level)];
      if (child_index(x, level) == opened) {
        ++opened;
        changed |= 1u << level;
      }
    }
    return changed;
  }

  void close(PeId x, std::uint32_t changed) {
    for (int level = h_.levels(); level >= 1; --level) {
      if (changed & (1u << level)) --opened_[level - 1][group(x, level)];
    }
  }

  void descend(std::size_t index, Weight cost) {
    ++explored_;
    if (cost >= best_cost_) return;
    if (index == order_.size()) {
      best_cost_ = cost;
      best_ = pe_of_;
      return;
    }
    const VertexId v = order_[index];
    const Weight w = g_.vertex_weight(v);
    for (PeId x = 0; x < k_; ++x) {
      if (load_[x] + w > l_max_ || !canonical(x)) continue;
      Weight added = 0;
      const auto nbrs = g_.neighbors(v);
      const auto ws = g_.incident_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (pe_of_[nbrs[i]] >= 0) added += 2 * ws[i] * distance_[x * k_ + pe_of_[nbrs[i]]];
      }
      const auto changed = open(x);
      load_[x] += w;
      pe_of_[v] = static_cast<BlockId>(x);
      descend(index + 1, cost + added);
      pe_of_[v] = -1;
      load_[x] -= w;
      close(x, changed);
    }
  }

  const Graph& g_;
  const Hierarchy& h_;
  Weight l_max_;
  PeId k_;
  std::vector<VertexId> order_;
  std::vector<BlockId> pe_of_;
  std::vector<Weight> load_;
  std::vector<std::vector<std::int64_t>> opened_;  // [level-1][group] children opened so far
  std::vector<std::int64_t> distance_;
  Weight best_cost_ = INT64_MAX;
  std::vector<BlockId> best_;
  std::int64_t explored_ = 0;
};

}  // namespace

OracleResult optimal_mapping(const Graph& g, const Hierarchy& h, const Rational& eps) {
  if (g.num_vertices() > kOracleMaxVertices) {
    fail(ErrorCode::kInvalidArgument, "oracle: at most " + std::to_string(kOracleMaxVertices) + " vertices");
  }
  if (h.num_pes() > kOracleMaxPes) {
    fail(ErrorCode::kInvalidArgument, "oracle: at most " + std::to_string(kOracleMaxPes) + " PEs");
  }
  if (g.empty()) fail(ErrorCode::kInvalidArgument, "oracle: graph has no vertices");
  MappingSearch search(g, h, compute_l_max(g.total_weight(), h.num_pes(), eps));
  return search.run();
}

}  // namespace procmap
