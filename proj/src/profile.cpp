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
#include <cmath>
#include <limits>

#include "procmap/error.hpp"
#include "procmap/eval.hpp"

namespace procmap {

std::size_t QualityTable::index_of(std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.push_back(name);
  return names.size() - 1;
}

void QualityTable::add(const std::string& algorithm, const std::string& instance, double quality) {
  if (!std::isfinite(quality) || quality < 0) {
    fail(ErrorCode::kInvalidArgument, "quality of " + algorithm + " on " + instance + " must be finite and >= 0");
  }
  const auto a = index_of(algorithms_, algorithm);
  const auto i = index_of(instances_, instance);
  const double missing = std::numeric_limits<double>::quiet_NaN();
  qualities_.resize(algorithms_.size());
  for (auto& row : qualities_) row.resize(instances_.size(), missing);
  if (!std::isnan(qualities_[a][i])) {
    fail(ErrorCode::kInvalidArgument, "duplicate quality for (" + algorithm + ", " + instance + ")");
  }
  qualities_[a][i] = quality;
}

double QualityTable::quality(std::size_t algorithm, std::size_t instance) const {
  return qualities_.at(algorithm).at(instance);
}

void QualityTable::validate_dense() const {
  if (algorithms_.empty()) fail(ErrorCode::kInvalidArgument, "quality table is empty");
  for (std::size_t a = 0; a < algorithms_.size(); ++a) {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (std::isnan(qualities_[a][i])) {
        fail(ErrorCode::kInvalidArgument,
             "quality table is sparse: " + algorithms_[a] + " has no entry for " + instances_[i]);
      }
    }
  }
}

PerformanceProfile performance_profile(const QualityTable& table, std::span<const double> taus) {
  table.validate_dense();
  PerformanceProfile profile;
  profile.algorithms = table.algorithms();
  profile.taus.assign(taus.begin(), taus.end());
  const auto num_algorithms = table.algorithms().size();
  std::vector<std::size_t> included;
  std::vector<double> best;
  for (std::size_t i = 0; i < table.instances().size(); ++i) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < num_algorithms; ++a) lowest = std::min(lowest, table.quality(a, i));
    if (lowest <= 0) {
      profile.excluded_instances.push_back(table.instances()[i]);
      continue;
    }
    included.push_back(i);
    best.push_back(lowest);
  }
  if (included.empty()) fail(ErrorCode::kInvalidArgument, "no instance has positive qualities");
  profile.fractions.assign(num_algorithms, std::vector<double>(taus.size(), 0.0));
  for (std::size_t a = 0; a < num_algorithms; ++a) {
    for (std::size_t t = 0; t < taus.size(); ++t) {
      std::size_t within = 0;
      for (std::size_t idx = 0; idx < included.size(); ++idx) {
        if (table.quality(a, included[idx]) <= taus[t] * best[idx]) ++within;
      }
      profile.fractions[a][t] = static_cast<double>(within) / static_cast<double>(included.size());
    }
  }
  return profile;
}

}  // namespace procmap
