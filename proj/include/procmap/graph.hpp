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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace procmap {

using VertexId = std::int32_t;
using EdgeIndex = std::int64_t;
using Weight = std::int64_t;
using BlockId = std::int32_t;

/// Undirected weighted graph in compressed adjacency form.
///
/// Every undirected edge {u, v} is stored twice (u->v and v->u) with equal
/// weight. Self-loops are never stored. Instances are immutable once built,
/// so any number of threads may read one concurrently.
class Graph {
 public:
  Graph();

  /// Takes ownership of CSR arrays. Checks sizes, ranges, offsets and the
  /// absence of self-loops and negative weights; symmetry is the caller's
  /// responsibility (load_metis verifies it for untrusted input).
  Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> targets,
        std::vector<Weight> vertex_weights, std::vector<Weight> edge_weights);

  VertexId num_vertices() const { return static_cast<VertexId>(vertex_weights_.size()); }
  EdgeIndex num_directed_edges() const { return static_cast<EdgeIndex>(targets_.size()); }
  EdgeIndex num_edges() const { return num_directed_edges() / 2; }
  bool empty() const { return vertex_weights_.empty(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const Weight> incident_weights(VertexId v) const {
    return {edge_weights_.data() + offsets_[v], edge_weights_.data() + offsets_[v + 1]};
  }
  EdgeIndex degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  Weight vertex_weight(VertexId v) const { return vertex_weights_[v]; }
  Weight total_weight() const { return total_weight_; }
  Weight total_edge_weight() const;  // undirected sum
  Weight max_vertex_weight() const;

  const std::vector<EdgeIndex>& offsets() const { return offsets_; }
  const std::vector<VertexId>& targets() const { return targets_; }
  const std::vector<Weight>& vertex_weights() const { return vertex_weights_; }
  const std::vector<Weight>& edge_weights() const { return edge_weights_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> targets_;
  std::vector<Weight> vertex_weights_;
  std::vector<Weight> edge_weights_;
  Weight total_weight_ = 0;
};

/// Accumulates undirected edges and emits a Graph. Parallel edges are merged
/// by adding their weights; self-loops are dropped.
class GraphBuilder {
 public:
  explicit GraphBuilder(VertexId n, Weight default_vertex_weight = 1);

  void set_vertex_weight(VertexId v, Weight w);
  void add_edge(VertexId u, VertexId v, Weight w = 1);
  Graph build() const;

 private:
  struct Edge {
    VertexId u;
    VertexId v;
    Weight w;
  };
  std::vector<Weight> vertex_weights_;
  std::vector<Edge> edges_;
};

struct SubgraphExtraction {
  Graph subgraph;
  std::vector<VertexId> local_to_global;
};

Graph load_metis(std::istream& in);
Graph load_metis(const std::string& text);
Graph load_metis_file(const std::string& path);

/// Writes the METIS ASCII format; weights are emitted only when some weight
/// differs from 1, so load_metis(write_metis(g)) == g.
void write_metis(const Graph& g, std::ostream& out);
void write_metis_file(const Graph& g, const std::string& path);

Weight total_weight(const Graph& g);

/// Induced subgraph of the vertices with block_ids[v] == target, in ascending
/// global id order. Throws if target does not occur.
SubgraphExtraction extract_subgraph(const Graph& g, std::span<const BlockId> block_ids,
                                    BlockId target);

/// One pass over the graph producing the induced subgraph of every block in
/// [0, num_blocks). Blocks without vertices yield empty subgraphs.
std::vector<SubgraphExtraction> split_into_blocks(const Graph& g,
                                                  std::span<const BlockId> block_ids,
                                                  BlockId num_blocks);

/// Sum of weights of undirected edges whose endpoints lie in different blocks.
Weight edge_cut(const Graph& g, std::span<const BlockId> block_ids);

/// Per-block vertex weight sums; block ids must lie in [0, num_blocks).
std::vector<Weight> block_weights(const Graph& g, std::span<const BlockId> block_ids,
                                  BlockId num_blocks);

}  // namespace procmap
