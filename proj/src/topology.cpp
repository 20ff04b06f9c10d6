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

#include "procmap/topology.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "procmap/error.hpp"

namespace procmap {

namespace {

std::vector<std::int64_t> parse_colon_list(std::string_view text, const char* what) {
  std::vector<std::int64_t> values;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(':', start);
    auto token = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      fail(ErrorCode::kParse, std::string(what) + ": '" + std::string(token) + "' is not an integer");
    }
    values.push_back(value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return values;
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

Hierarchy::Hierarchy(std::vector<std::int64_t> arities, std::vector<std::int64_t> distances)
    : arities_(std::move(arities)), distances_(std::move(distances)) {
  if (arities_.empty()) fail(ErrorCode::kInvalidArgument, "hierarchy needs at least one level");
  if (arities_.size() != distances_.size()) {
    fail(ErrorCode::kInvalidArgument, "hierarchy has " + std::to_string(arities_.size()) + " levels but " +
                                          std::to_string(distances_.size()) + " distances");
  }
  prefix_.push_back(1);
  for (std::size_t i = 0; i < arities_.size(); ++i) {
    if (arities_[i] < 1) fail(ErrorCode::kInvalidArgument, "hierarchy arities must be positive");
    if (distances_[i] < 0) fail(ErrorCode::kInvalidArgument, "hierarchy distances must be non-negative");
    if (prefix_.back() > INT32_MAX / arities_[i]) fail(ErrorCode::kInvalidArgument, "hierarchy has too many PEs");
    prefix_.push_back(prefix_.back() * arities_[i]);
  }
}

std::string Hierarchy::arity_string() const { return join(arities_); }
std::string Hierarchy::distance_string() const { return join(distances_); }

Hierarchy parse_hierarchy(std::string_view arities, std::string_view distances) {
  return Hierarchy(parse_colon_list(arities, "hierarchy"), parse_colon_list(distances, "distance"));
}

std::int64_t pe_distance(const Hierarchy& h, PeId x, PeId y) {
  const auto k = h.num_pes();
  if (x < 0 || y < 0 || x >= k || y >= k) fail(ErrorCode::kInvalidArgument, "PE id out of range");
  if (x == y) return 0;
  for (int level = 1; level <= h.levels(); ++level) {
    if (x / h.prefix(level) == y / h.prefix(level)) return h.distance(level);
  }
  fail(ErrorCode::kInternal, "PE pair without a common ancestor");
}

void Mapping::validate(const Graph& g, const Hierarchy& h) const {
  if (static_cast<VertexId>(assignment.size()) != g.num_vertices()) {
    fail(ErrorCode::kInvalidArgument, "mapping has " + std::to_string(assignment.size()) +
                                          " entries, graph has " + std::to_string(g.num_vertices()) + " vertices");
  }
  for (const auto pe : assignment) {
    if (pe < 0 || pe >= h.num_pes()) fail(ErrorCode::kInvalidArgument, "mapping refers to PE " + std::to_string(pe));
  }
}

Weight comm_cost(const Graph& g, const Hierarchy& h, std::span<const BlockId> mapping) {
  Mapping{{mapping.begin(), mapping.end()}}.validate(g, h);
  Weight cost = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const auto nbrs = g.neighbors(u);
    const auto ws = g.incident_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      cost += ws[i] * pe_distance(h, mapping[u], mapping[nbrs[i]]);
    }
  }
  return cost;
}

Weight compute_l_max(Weight total, std::int64_t k, const Rational& eps) {
  if (total < 0 || k < 1 || eps < 0) fail(ErrorCode::kInvalidArgument, "compute_l_max: invalid arguments");
  return ceil_to_int((1 + eps) * Rational(total) / Rational(k));
}

AdaptiveEpsilon adaptive_epsilon(const Rational& eps, std::int64_t k, Weight total, std::int64_t k_sub,
                                 Weight sub_total, int depth) {
  if (sub_total < 1 || total < 1) fail(ErrorCode::kInvalidArgument, "adaptive_epsilon: weights must be positive");
  return adaptive_epsilon(eps, k, Rational(total), k_sub, Rational(sub_total), depth);
}

AdaptiveEpsilon adaptive_epsilon(const Rational& eps, std::int64_t k, const Rational& total, std::int64_t k_sub,
                                 const Rational& sub_total, int depth) {
  if (depth < 1) fail(ErrorCode::kInvalidArgument, "adaptive_epsilon: depth must be >= 1");
  if (sub_total <= 0 || total <= 0 || k < 1 || k_sub < 1 || eps < 0) {
    fail(ErrorCode::kInvalidArgument, "adaptive_epsilon: weights and block counts must be positive");
  }
  AdaptiveEpsilon result;
  result.base = (1 + eps) * Rational(k_sub) * total / (Rational(k) * sub_total);
  if (result.base < 1) {
    result.value = 0;
    result.balance_risk = true;
    return result;
  }
  const Rational root = root_lower_bound(result.base, depth);
  result.value = root - 1;
  if (depth > 1) {
    Rational p = 1;
    for (int i = 0; i < depth; ++i) p *= root;
    result.exact = p == result.base;
  }
  return result;
}

BalanceReport check_balance(const Graph& g, std::span<const BlockId> blocks, std::int64_t k, const Rational& eps) {
  if (static_cast<VertexId>(blocks.size()) != g.num_vertices()) {
    fail(ErrorCode::kInvalidArgument, "check_balance: array length differs from vertex count");
  }
  BalanceReport report;
  report.block_weights = block_weights(g, blocks, static_cast<BlockId>(k));
  report.l_max = compute_l_max(g.total_weight(), k, eps);
  const Weight heaviest = *std::max_element(report.block_weights.begin(), report.block_weights.end());
  report.max_imbalance = g.total_weight() > 0 ? Rational(heaviest) * Rational(k) / Rational(g.total_weight()) - 1
                                              : Rational(0);
  report.is_balanced = heaviest <= report.l_max;
  return report;
}

std::vector<BlockId> read_mapping(std::istream& in) {
  std::vector<BlockId> mapping;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    BlockId pe = 0;
    const auto* begin = line.data() + first;
    const auto* end = line.data() + last + 1;
    const auto [ptr, ec] = std::from_chars(begin, end, pe);
    if (ec != std::errc() || ptr != end || pe < 0) {
      fail(ErrorCode::kParse, "mapping line " + std::to_string(line_no) + ": expected a PE id");
    }
    mapping.push_back(pe);
  }
  return mapping;
}

std::vector<BlockId> read_mapping_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open mapping file '" + path + "'");
  return read_mapping(in);
}

void write_mapping(std::span<const BlockId> mapping, std::ostream& out) {
  for (const auto pe : mapping) out << pe << '\n';
}

void write_mapping_file(std::span<const BlockId> mapping, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write mapping file '" + path + "'");
  write_mapping(mapping, out);
  if (!out) fail(ErrorCode::kIo, "error while writing '" + path + "'");
}

}  // namespace procmap
