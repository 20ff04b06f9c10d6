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

// CSV records, aggregation and plotting for the procmap command line tool.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace procmap::tools {

struct RunRecord {
  std::string instance;
  std::string hierarchy;
  std::string distance;
  std::string eps;
  std::string strategy;
  std::string preset;
  int threads = 1;
  std::uint64_t seed = 1;
  std::int64_t comm_cost = 0;
  std::int64_t edge_cut = 0;
  double max_imbalance = 0;
  double wall_time_ms = 0;
  std::string error;  // empty on success
};

/// Shortest round-trip decimal, independent of the C locale.
std::string format_number(double value);

std::string csv_escape(std::string_view field);
/// Splits one CSV line; supports quoted fields with doubled quotes.
std::vector<std::string> split_csv_line(std::string_view line);

std::string_view run_csv_header();
std::string to_csv(const RunRecord& record);

/// exp(mean(log x)); 0 for an empty input. All values must be positive.
double geometric_mean(const std::vector<double>& values);

struct AggregateRecord {
  std::string instance;
  std::string hierarchy;
  std::string distance;
  std::string eps;
  std::string strategy;
  std::string preset;
  int threads = 1;
  int runs = 0;
  int failures = 0;
  double geomean_time_ms = 0;
  double mean_comm_cost = 0;
  double speedup = 0;  // baseline time / time; 0 when there is no baseline
};

/// "<strategy>-<preset>-<threads>", e.g. "nb-layer-strong-1".
std::string configuration_name(std::string_view strategy, std::string_view preset, int threads);

/// Groups runs by (instance, hierarchy, distance, eps, configuration); failed
/// runs only count towards `failures`. Speedups compare against the group with
/// configuration name `baseline` on the same instance and hierarchy.
std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& runs, std::string_view baseline);

std::string_view aggregate_csv_header();
std::string to_csv(const AggregateRecord& record);

/// Step plot of a performance profile as a standalone SVG document.
void write_profile_svg(std::ostream& out, const std::vector<std::string>& algorithms,
                       const std::vector<double>& taus, const std::vector<std::vector<double>>& fractions);

}  // namespace procmap::tools
