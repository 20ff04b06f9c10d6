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
#include <string_view>
#include <vector>

#include "procmap/graph.hpp"
#include "procmap/rational.hpp"

namespace procmap {

using PeId = std::int64_t;

/// Homogeneous hardware hierarchy a_1 : ... : a_l with distances d_1 : ... : d_l.
///
/// Level 1 is the innermost (processor) level. PEs are numbered depth-first,
/// so floor(x / prefix(i)) is the id of the level-i group that contains PE x.
class Hierarchy {
 public:
  Hierarchy(std::vector<std::int64_t> arities, std::vector<std::int64_t> distances);

  int levels() const { return static_cast<int>(arities_.size()); }
  PeId num_pes() const { return prefix_.back(); }

  /// a_level for level in [1, levels()].
  std::int64_t arity(int level) const { return arities_.at(level - 1); }
  std::int64_t distance(int level) const { return distances_.at(level - 1); }

  /// Product a_1 * ... * a_level; prefix(0) == 1 and prefix(levels()) == k.
  PeId prefix(int level) const { return prefix_.at(level); }

  const std::vector<std::int64_t>& arities() const { return arities_; }
  const std::vector<std::int64_t>& distances() const { return distances_; }

  std::string arity_string() const;
  std::string distance_string() const;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

 private:
  std::vector<std::int64_t> arities_;
  std::vector<std::int64_t> distances_;
  std::vector<PeId> prefix_;
};

Hierarchy parse_hierarchy(std::string_view arities, std::string_view distances);

std::int64_t pe_distance(const Hierarchy& h, PeId x, PeId y);

/// Task-to-PE assignment; assignment[v] is the PE of task v.
struct Mapping {
  std::vector<BlockId> assignment;

  void validate(const Graph& g, const Hierarchy& h) const;
};

/// J = sum over ordered task pairs (i, j) of C_ij * D(pi(i), pi(j)). Both
/// directions of every edge are stored, so this is twice the undirected sum.
Weight comm_cost(const Graph& g, const Hierarchy& h, std::span<const BlockId> mapping);

/// L_max = ceil((1 + eps) * total / k), computed exactly.
Weight compute_l_max(Weight total, std::int64_t k, const Rational& eps);

/// Imbalance for partitioning a subgraph at depth `depth` of the hierarchy so
/// that the final k-way partition can still meet L_max:
///
///   (1 + eps')^depth = (1 + eps) * k_sub * total / (k * sub_total)
///
/// `base` holds the exact right-hand side. `value` is exact for depth 1 and
/// otherwise the largest 2^-48-grid number not above the true root. When the
/// subgraph is already heavier than its worst-case budget the right-hand side
/// drops below 1; `value` is clamped to 0 and `balance_risk` is set.
struct AdaptiveEpsilon {
  Rational value;
  Rational base;
  bool exact = true;
  bool balance_risk = false;
};

AdaptiveEpsilon adaptive_epsilon(const Rational& eps, std::int64_t k, Weight total, std::int64_t k_sub,
                                 Weight sub_total, int depth);

/// Same with fractional weights (used to replay worst-case weight cascades).
AdaptiveEpsilon adaptive_epsilon(const Rational& eps, std::int64_t k, const Rational& total, std::int64_t k_sub,
                                 const Rational& sub_total, int depth);

struct BalanceReport {
  std::vector<Weight> block_weights;
  Weight l_max = 0;
  Rational max_imbalance;  // max block weight * k / total - 1
  bool is_balanced = true;

  double max_imbalance_value() const { return to_double(max_imbalance); }
};

BalanceReport check_balance(const Graph& g, std::span<const BlockId> blocks, std::int64_t k,
                            const Rational& eps);

/// Mapping file: one PE id per line, line i holds the PE of task i.
std::vector<BlockId> read_mapping(std::istream& in);
std::vector<BlockId> read_mapping_file(const std::string& path);
void write_mapping(std::span<const BlockId> mapping, std::ostream& out);
void write_mapping_file(std::span<const BlockId> mapping, const std::string& path);

}  // namespace procmap
