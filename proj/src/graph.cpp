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

#include "procmap/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

#include "procmap/error.hpp"

namespace procmap {

Graph::Graph() : offsets_{0} {}

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> targets,
             std::vector<Weight> vertex_weights, std::vector<Weight> edge_weights)
    : offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      vertex_weights_(std::move(vertex_weights)),
      edge_weights_(std::move(edge_weights)) {
  const auto n = vertex_weights_.size();
  if (offsets_.size() != n + 1 || offsets_.front() != 0) {
    fail(ErrorCode::kInvalidArgument, "graph: offsets must have n+1 entries starting at 0");
  }
  if (targets_.size() != edge_weights_.size() ||
      offsets_.back() != static_cast<EdgeIndex>(targets_.size())) {
    fail(ErrorCode::kInvalidArgument, "graph: last offset must equal the directed edge count");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets_[v] > offsets_[v + 1]) {
      fail(ErrorCode::kInvalidArgument, "graph: offsets must be non-decreasing");
    }
    if (vertex_weights_[v] < 0) fail(ErrorCode::kInvalidArgument, "graph: negative vertex weight");
    for (EdgeIndex e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      const auto t = targets_[e];
      if (t < 0 || static_cast<std::size_t>(t) >= n) {
        fail(ErrorCode::kInvalidArgument, "graph: neighbor id out of range");
      }
      if (static_cast<std::size_t>(t) == v) fail(ErrorCode::kInvalidArgument, "graph: self-loop");
      if (edge_weights_[e] < 0) fail(ErrorCode::kInvalidArgument, "graph: negative edge weight");
    }
  }
  total_weight_ = std::accumulate(vertex_weights_.begin(), vertex_weights_.end(), Weight{0});
}

Weight Graph::total_edge_weight() const {
  return std::accumulate(edge_weights_.begin(), edge_weights_.end(), Weight{0}) / 2;
}

Weight Graph::max_vertex_weight() const {
  return vertex_weights_.empty() ? 0 : *std::max_element(vertex_weights_.begin(), vertex_weights_.end());
}

GraphBuilder::GraphBuilder(VertexId n, Weight default_vertex_weight)
    : vertex_weights_(static_cast<std::size_t>(n), default_vertex_weight) {}

void GraphBuilder::set_vertex_weight(VertexId v, Weight w) { vertex_weights_.at(v) = w; }

void GraphBuilder::add_edge(VertexId u, VertexId v, Weight w) {
  const auto n = static_cast<VertexId>(vertex_weights_.size());
  if (u < 0 || v < 0 || u >= n || v >= n) fail(ErrorCode::kInvalidArgument, "builder: vertex out of range");
  if (u == v) return;
  edges_.push_back({std::min(u, v), std::max(u, v), w});
}

Graph GraphBuilder::build() const {
  auto edges = edges_;
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  std::vector<Edge> merged;
  for (const auto& e : edges) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }
  const auto n = vertex_weights_.size();
  std::vector<EdgeIndex> offsets(n + 1, 0);
  for (const auto& e : merged) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<VertexId> targets(offsets.back());
  std::vector<Weight> weights(offsets.back());
  auto cursor = offsets;
  for (const auto& e : merged) {
    targets[cursor[e.u]] = e.v;
    weights[cursor[e.u]++] = e.w;
  }
  for (const auto& e : merged) {
    targets[cursor[e.v]] = e.u;
    weights[cursor[e.v]++] = e.w;
  }
  for (std::size_t v = 0; v < n; ++v) {
    // Keep adjacency lists sorted by neighbor id.
    std::vector<std::pair<VertexId, Weight>> adj;
    for (EdgeIndex e = offsets[v]; e < offsets[v + 1]; ++e) adj.emplace_back(targets[e], weights[e]);
    std::sort(adj.begin(), adj.end());
    for (std::size_t i = 0; i < adj.size(); ++i) {
      targets[offsets[v] + i] = adj[i].first;
      weights[offsets[v] + i] = adj[i].second;
    }
  }
  return Graph(std::move(offsets), std::move(targets), vertex_weights_, std::move(weights));
}

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view line) : rest_(line) {}

  bool next(std::string_view& token) {
    const auto begin = rest_.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return false;
    rest_.remove_prefix(begin);
    const auto end = rest_.find_first_of(" \t\r");
    token = rest_.substr(0, end);
    rest_.remove_prefix(end == std::string_view::npos ? rest_.size() : end);
    return true;
  }

 private:
  std::string_view rest_;
};

std::int64_t parse_int(std::string_view token, std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": invalid " + what + " '" +
                                std::string(token) + "'");
  }
  return value;
}

bool is_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t");
  return pos != std::string::npos && line[pos] == '%';
}

bool is_blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Graph load_metis(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line) || is_blank(line)) continue;
    have_header = true;
    break;
  }
  if (!have_header) fail(ErrorCode::kParse, "metis: missing header line");

  Tokenizer header(line);
  std::vector<std::int64_t> fields;
  for (std::string_view tok; header.next(tok);) fields.push_back(parse_int(tok, line_no, "header field"));
  if (fields.size() < 2 || fields.size() > 4) fail(ErrorCode::kParse, "metis: malformed header");
  const auto n = fields[0];
  const auto m = fields[1];
  if (n < 0 || m < 0 || n > INT32_MAX) fail(ErrorCode::kParse, "metis: malformed header counts");
  const auto fmt = fields.size() > 2 ? fields[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    fail(ErrorCode::kParse, "metis: unsupported fmt " + std::to_string(fmt));
  }
  const bool has_edge_weights = fmt % 10 == 1;
  const bool has_vertex_weights = fmt / 10 == 1;
  if (fields.size() > 3 && fields[3] != 1) fail(ErrorCode::kParse, "metis: only ncon = 1 is supported");

  std::vector<EdgeIndex> offsets{0};
  std::vector<VertexId> targets;
  std::vector<Weight> vertex_weights;
  std::vector<Weight> edge_weights;
  offsets.reserve(static_cast<std::size_t>(n) + 1);
  vertex_weights.reserve(static_cast<std::size_t>(n));
  targets.reserve(static_cast<std::size_t>(2 * m));
  edge_weights.reserve(static_cast<std::size_t>(2 * m));
  std::int64_t self_loops = 0;

  VertexId u = 0;
  while (u < n && std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    Tokenizer tokens(line);
    std::string_view tok;
    Weight vw = 1;
    if (has_vertex_weights) {
      if (!tokens.next(tok)) fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": missing vertex weight");
      vw = parse_int(tok, line_no, "vertex weight");
      if (vw < 0) fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": negative vertex weight");
    }
    vertex_weights.push_back(vw);
    while (tokens.next(tok)) {
      const auto v = parse_int(tok, line_no, "neighbor id");
      if (v < 1 || v > n) fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": neighbor id out of range");
      Weight w = 1;
      if (has_edge_weights) {
        if (!tokens.next(tok)) fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": missing edge weight");
        w = parse_int(tok, line_no, "edge weight");
        if (w < 0) fail(ErrorCode::kParse, "metis line " + std::to_string(line_no) + ": negative edge weight");
      }
      if (v - 1 == u) {
        ++self_loops;
        continue;
      }
      targets.push_back(static_cast<VertexId>(v - 1));
      edge_weights.push_back(w);
    }
    offsets.push_back(static_cast<EdgeIndex>(targets.size()));
    ++u;
  }
  if (u != n) {
    fail(ErrorCode::kParse, "metis: expected " + std::to_string(n) + " adjacency lines, found " + std::to_string(u));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment(line) && !is_blank(line)) fail(ErrorCode::kParse, "metis: more adjacency lines than vertices");
  }
  const auto directed = static_cast<std::int64_t>(targets.size());
  if (directed % 2 != 0 || (directed / 2 != m && directed / 2 + self_loops != m)) {
    fail(ErrorCode::kParse, "metis: header declares " + std::to_string(m) + " edges, adjacency lists hold " +
                                std::to_string(directed) + " directed entries");
  }

  // Every entry u->v must be matched by v->u with the same weight.
  std::vector<std::tuple<VertexId, VertexId, Weight>> forward;
  std::vector<std::tuple<VertexId, VertexId, Weight>> backward;
  for (VertexId a = 0; a < n; ++a) {
    for (EdgeIndex e = offsets[a]; e < offsets[a + 1]; ++e) {
      const auto b = targets[e];
      if (a < b) {
        forward.emplace_back(a, b, edge_weights[e]);
      } else {
        backward.emplace_back(b, a, edge_weights[e]);
      }
    }
  }
  std::sort(forward.begin(), forward.end());
  std::sort(backward.begin(), backward.end());
  if (forward != backward) fail(ErrorCode::kParse, "metis: asymmetric adjacency");

  return Graph(std::move(offsets), std::move(targets), std::move(vertex_weights), std::move(edge_weights));
}

Graph load_metis(const std::string& text) {
  std::istringstream in(text);
  return load_metis(in);
}

Graph load_metis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open graph file '" + path + "'");
  return load_metis(in);
}

void write_metis(const Graph& g, std::ostream& out) {
  const auto& vw = g.vertex_weights();
  const auto& ew = g.edge_weights();
  const bool vertex_weights = std::any_of(vw.begin(), vw.end(), [](Weight w) { return w != 1; });
  const bool edge_weights = std::any_of(ew.begin(), ew.end(), [](Weight w) { return w != 1; });
  out << g.num_vertices() << ' ' << g.num_edges();
  if (vertex_weights || edge_weights) out << ' ' << (vertex_weights ? "1" : "") << (edge_weights ? "1" : "0");
  out << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    bool first = true;
    auto sep = [&] {
      if (!first) out << ' ';
      first = false;
    };
    if (vertex_weights) {
      sep();
      out << g.vertex_weight(v);
    }
    const auto nbrs = g.neighbors(v);
    const auto ws = g.incident_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      sep();
      out << nbrs[i] + 1;
      if (edge_weights) out << ' ' << ws[i];
    }
    out << '\n';
  }
}

void write_metis_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write graph file '" + path + "'");
  write_metis(g, out);
  if (!out) fail(ErrorCode::kIo, "error while writing '" + path + "'");
}

Weight total_weight(const Graph& g) { return g.total_weight(); }

std::vector<SubgraphExtraction> split_into_blocks(const Graph& g, std::span<const BlockId> block_ids,
                                                  BlockId num_blocks) {
  const auto n = g.num_vertices();
  if (static_cast<VertexId>(block_ids.size()) != n) {
    fail(ErrorCode::kInvalidArgument, "split: block id array length differs from vertex count");
  }
  std::vector<VertexId> local_id(n);
  std::vector<std::vector<VertexId>> members(num_blocks);
  for (VertexId v = 0; v < n; ++v) {
    const auto b = block_ids[v];
    if (b < 0 || b >= num_blocks) fail(ErrorCode::kInvalidArgument, "split: block id out of range");
    local_id[v] = static_cast<VertexId>(members[b].size());
    members[b].push_back(v);
  }
  std::vector<SubgraphExtraction> result(num_blocks);
  for (BlockId b = 0; b < num_blocks; ++b) {
    const auto& verts = members[b];
    std::vector<EdgeIndex> offsets{0};
    offsets.reserve(verts.size() + 1);
    std::vector<VertexId> targets;
    std::vector<Weight> vweights;
    std::vector<Weight> eweights;
    vweights.reserve(verts.size());
    for (const auto v : verts) {
      vweights.push_back(g.vertex_weight(v));
      const auto nbrs = g.neighbors(v);
      const auto ws = g.incident_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (block_ids[nbrs[i]] != b) continue;
        targets.push_back(local_id[nbrs[i]]);
        eweights.push_back(ws[i]);
      }
      offsets.push_back(static_cast<EdgeIndex>(targets.size()));
    }
    result[b].subgraph = Graph(std::move(offsets), std::move(targets), std::move(vweights), std::move(eweights));
    result[b].local_to_global = verts;
  }
  return result;
}

SubgraphExtraction extract_subgraph(const Graph& g, std::span<const BlockId> block_ids, BlockId target) {
  const auto n = g.num_vertices();
  if (static_cast<VertexId>(block_ids.size()) != n) {
    fail(ErrorCode::kInvalidArgument, "extract: block id array length differs from vertex count");
  }
  if (std::find(block_ids.begin(), block_ids.end(), target) == block_ids.end()) {
    fail(ErrorCode::kInvalidArgument, "extract: block " + std::to_string(target) + " has no vertices");
  }
  std::vector<BlockId> selector(n);
  for (VertexId v = 0; v < n; ++v) selector[v] = block_ids[v] == target ? 0 : 1;
  return std::move(split_into_blocks(g, selector, 2)[0]);
}

Weight edge_cut(const Graph& g, std::span<const BlockId> block_ids) {
  if (static_cast<VertexId>(block_ids.size()) != g.num_vertices()) {
    fail(ErrorCode::kInvalidArgument, "edge_cut: block id array length differs from vertex count");
  }
  Weight cut = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto nbrs = g.neighbors(v);
    const auto ws = g.incident_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (block_ids[nbrs[i]] != block_ids[v]) cut += ws[i];
    }
  }
  return cut / 2;
}

std::vector<Weight> block_weights(const Graph& g, std::span<const BlockId> block_ids, BlockId num_blocks) {
  std::vector<Weight> weights(num_blocks, 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto b = block_ids[v];
    if (b < 0 || b >= num_blocks) fail(ErrorCode::kInvalidArgument, "block id out of range");
    weights[b] += g.vertex_weight(v);
  }
  return weights;
}

}  // namespace procmap
