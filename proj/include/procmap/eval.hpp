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
#include <span>
#include <string>
#include <vector>

#include "procmap/graph.hpp"
#include "procmap/rational.hpp"
#include "procmap/topology.hpp"

namespace procmap {

inline constexpr VertexId kOracleMaxVertices = 14;
inline constexpr PeId kOracleMaxPes = 8;

struct OracleResult {
  Weight cost = 0;
  std::vector<BlockId> mapping;
  std::int64_t nodes_explored = 0;
};

/// Exhaustive minimum of J over all L_max-balanced mappings of a tiny graph.
/// Sibling subtrees of the hierarchy are interchangeable, so only mappings
/// that open the children of every hierarchy node in index order are visited.
OracleResult optimal_mapping(const Graph& g, const Hierarchy& h, const Rational& eps);

/// Dense (algorithm, instance) -> quality table for performance profiles.
class QualityTable {
 public:
  void add(const std::string& algorithm, const std::string& instance, double quality);

  const std::vector<std::string>& algorithms() const { return algorithms_; }
  const std::vector<std::string>& instances() const { return instances_; }
  double quality(std::size_t algorithm, std::size_t instance) const;

  /// Throws unless every algorithm has a quality for every instance.
  void validate_dense() const;

 private:
  std::size_t index_of(std::vector<std::string>& names, const std::string& name);

  std::vector<std::string> algorithms_;
  std::vector<std::string> instances_;
  std::vector<std::vector<double>> qualities_;  // [algorithm][instance], NaN = missing
};

struct PerformanceProfile {
  std::vector<std::string> algorithms;
  std::vector<double> taus;
  std::vector<std::vector<double>> fractions;  // [algorithm][tau]
  std::vector<std::string> excluded_instances;  // some quality was 0
};

/// Fraction of instances I with q_A(I) <= tau * Best(I), Best(I) being the
/// smallest quality any algorithm reached on I (lower is better).
PerformanceProfile performance_profile(const QualityTable& table, std::span<const double> taus);

}  // namespace procmap
