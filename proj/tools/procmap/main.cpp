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

// procmap: map task graphs onto hierarchical machines from the command line.

#include <procmap/procmap.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../bench_report.hpp"

namespace {

using procmap::tools::RunRecord;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(procmap_status status, const procmap_error& error) {
  if (status != PROCMAP_OK) throw CliError(error.message);
}

struct GraphDeleter {
  void operator()(procmap_graph* g) const { procmap_graph_free(g); }
};
struct HierarchyDeleter {
  void operator()(procmap_hierarchy* h) const { procmap_hierarchy_free(h); }
};
struct ReportDeleter {
  void operator()(procmap_report* r) const { procmap_report_free(r); }
};
struct TableDeleter {
  void operator()(procmap_quality_table* t) const { procmap_quality_table_free(t); }
};
using GraphPtr = std::unique_ptr<procmap_graph, GraphDeleter>;
using HierarchyPtr = std::unique_ptr<procmap_hierarchy, HierarchyDeleter>;
using ReportPtr = std::unique_ptr<procmap_report, ReportDeleter>;
using TablePtr = std::unique_ptr<procmap_quality_table, TableDeleter>;

GraphPtr load_graph(const std::string& path) {
  procmap_error error{};
  procmap_graph* g = nullptr;
  check(procmap_graph_load_file(path.c_str(), &g, &error), error);
  return GraphPtr(g);
}

HierarchyPtr parse_hierarchy(const std::string& arities, const std::string& distances) {
  procmap_error error{};
  procmap_hierarchy* h = nullptr;
  check(procmap_hierarchy_parse(arities.c_str(), distances.c_str(), &h, &error), error);
  return HierarchyPtr(h);
}

std::vector<int32_t> read_mapping(const std::string& path) {
  procmap_error error{};
  size_t count = 0;
  check(procmap_mapping_read_file(path.c_str(), nullptr, 0, &count, &error), error);
  std::vector<int32_t> mapping(count);
  check(procmap_mapping_read_file(path.c_str(), mapping.data(), mapping.size(), &count, &error), error);
  return mapping;
}

void write_mapping(const std::string& path, const std::vector<int32_t>& mapping) {
  procmap_error error{};
  check(procmap_mapping_write_file(path.c_str(), mapping.data(), mapping.size(), &error), error);
}

std::string instance_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct MapArgs {
  std::string graph;
  std::string hierarchy;
  std::string distance;
  std::string imbalance = "0.03";
  int threads = 1;
  std::string strategy = "nb-layer";
  std::string preset = "eco";
  std::uint64_t seed = 1;
  std::string output;
  std::string stats;
};

procmap_map_options map_options(const std::string& imbalance, int threads, const std::string& strategy,
                                const std::string& preset, std::uint64_t seed) {
  procmap_map_options options;
  procmap_map_options_init(&options);
  options.imbalance = imbalance.c_str();
  options.threads = threads;
  options.seed = seed;
  procmap_error error{};
  error.status = procmap_strategy_parse(strategy.c_str(), &options.strategy);
  if (error.status != PROCMAP_OK) throw CliError("unknown strategy '" + strategy + "' (naive|layer|queue|nb-layer)");
  error.status = procmap_preset_parse(preset.c_str(), &options.preset);
  if (error.status != PROCMAP_OK) throw CliError("unknown preset '" + preset + "' (fast|eco|strong)");
  return options;
}

// Runs one mapping; fills the measured fields of `record`.
std::vector<int32_t> run_map(const procmap_graph* g, const procmap_hierarchy* h, const procmap_map_options& options,
                             RunRecord& record) {
  std::vector<int32_t> mapping(static_cast<size_t>(procmap_graph_num_vertices(g)));
  procmap_run_stats stats{};
  procmap_error error{};
  check(procmap_map(g, h, &options, mapping.data(), mapping.size(), &stats, &error), error);
  record.comm_cost = stats.comm_cost;
  record.edge_cut = stats.edge_cut;
  record.max_imbalance = stats.max_imbalance;
  record.wall_time_ms = stats.wall_time_ms;
  return mapping;
}

RunRecord make_record(std::string instance, std::string hierarchy, std::string distance, std::string eps,
                      std::string strategy, std::string preset, int threads, std::uint64_t seed) {
  RunRecord r;
  r.instance = std::move(instance);
  r.hierarchy = std::move(hierarchy);
  r.distance = std::move(distance);
  r.eps = std::move(eps);
  r.strategy = std::move(strategy);
  r.preset = std::move(preset);
  r.threads = threads;
  r.seed = seed;
  return r;
}

nlohmann::ordered_json to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["hierarchy"] = r.hierarchy;
  j["distance"] = r.distance;
  j["eps"] = r.eps;
  j["strategy"] = r.strategy;
  j["preset"] = r.preset;
  j["threads"] = r.threads;
  j["seed"] = r.seed;
  j["J"] = r.comm_cost;
  j["edge_cut"] = r.edge_cut;
  j["max_imbalance"] = r.max_imbalance;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

int cmd_map(const MapArgs& args) {
  const auto g = load_graph(args.graph);
  const auto h = parse_hierarchy(args.hierarchy, args.distance);
  const auto options = map_options(args.imbalance, args.threads, args.strategy, args.preset, args.seed);
  auto record = make_record(instance_name(args.graph), args.hierarchy, args.distance, args.imbalance,
                            procmap_strategy_name(options.strategy), procmap_preset_name(options.preset),
                            args.threads, args.seed);
  const auto mapping = run_map(g.get(), h.get(), options, record);
  if (!args.output.empty()) write_mapping(args.output, mapping);
  if (!args.stats.empty()) {
    std::ofstream out(args.stats);
    if (!out) throw CliError("cannot open '" + args.stats + "' for writing");
    out << to_json(record).dump(2) << '\n';
  }
  std::cout << "k: " << procmap_hierarchy_num_pes(h.get()) << '\n'
            << "J: " << record.comm_cost << '\n'
            << "J/2: " << record.comm_cost / 2 << '\n'
            << "edge_cut: " << record.edge_cut << '\n'
            << "max_imbalance: " << procmap::tools::format_number(record.max_imbalance) << '\n'
            << "wall_time_ms: " << procmap::tools::format_number(record.wall_time_ms) << '\n';
  return 0;
}

struct EvalArgs {
  std::string graph;
  std::string hierarchy;
  std::string distance;
  std::string mapping;
  std::string imbalance = "0.03";
};

int cmd_eval(const EvalArgs& args) {
  const auto g = load_graph(args.graph);
  const auto h = parse_hierarchy(args.hierarchy, args.distance);
  const auto mapping = read_mapping(args.mapping);
  procmap_error error{};
  procmap_report* raw = nullptr;
  check(procmap_evaluate(g.get(), h.get(), mapping.data(), mapping.size(), args.imbalance.c_str(), &raw, &error),
        error);
  const ReportPtr report(raw);
  const auto j = procmap_report_comm_cost(report.get());
  std::cout << "J: " << j << '\n' << "J/2: " << j / 2 << '\n';
  std::cout << "edge_cut: " << procmap_report_edge_cut(report.get()) << '\n';
  std::cout << "block_weights:";
  for (int64_t b = 0; b < procmap_report_num_blocks(report.get()); ++b) {
    std::cout << ' ' << procmap_report_block_weight(report.get(), b);
  }
  const auto l_max = procmap_report_l_max(report.get());
  std::cout << '\n' << "L_max: " << l_max << '\n';
  std::cout << "max_imbalance: " << procmap::tools::format_number(procmap_report_max_imbalance(report.get())) << '\n';
  if (procmap_report_balanced(report.get())) {
    std::cout << "verdict: balanced\n";
  } else {
    std::cout << "verdict: unbalanced, L_max=" << l_max << '\n';
  }
  return 0;
}

struct OracleArgs {
  std::string graph;
  std::string hierarchy;
  std::string distance;
  std::string imbalance = "0.03";
  std::string output;
};

int cmd_oracle(const OracleArgs& args) {
  const auto g = load_graph(args.graph);
  const auto h = parse_hierarchy(args.hierarchy, args.distance);
  std::vector<int32_t> mapping(static_cast<size_t>(procmap_graph_num_vertices(g.get())));
  int64_t cost = 0;
  procmap_error error{};
  check(procmap_oracle(g.get(), h.get(), args.imbalance.c_str(), mapping.data(), mapping.size(), &cost, &error),
        error);
  std::cout << "J: " << cost << '\n' << "J/2: " << cost / 2 << '\n';
  if (!args.output.empty()) {
    write_mapping(args.output, mapping);
  } else {
    std::cout << "mapping:";
    for (const auto pe : mapping) std::cout << ' ' << pe;
    std::cout << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string instances;
  std::vector<std::string> hierarchies;
  std::vector<std::string> distances;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<std::string> strategies{"nb-layer"};
  std::vector<std::string> presets{"eco"};
  std::vector<int> threads{1};
  std::string imbalance = "0.03";
  int jobs = 1;
  std::string output;
  std::string aggregate;
  std::string baseline;
};

std::vector<std::string> read_instance_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open instance list '" + path + "'");
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p(line.substr(first, last - first + 1));
    out.push_back((p.is_relative() ? base / p : p).string());
  }
  return out;
}

int cmd_bench(const BenchArgs& args) {
  if (args.hierarchies.size() != args.distances.size()) {
    throw CliError("--hierarchies and --distances must list the same number of entries");
  }
  if (args.jobs < 1) throw CliError("--jobs must be >= 1");
  const auto paths = read_instance_list(args.instances);

  struct Job {
    std::size_t instance;
    std::size_t hierarchy;
    RunRecord record;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t hi = 0; hi < args.hierarchies.size(); ++hi) {
      for (const auto& strategy : args.strategies) {
        for (const auto& preset : args.presets) {
          for (const int t : args.threads) {
            for (const auto seed : args.seeds) {
              jobs.push_back({i, hi,
                              make_record(instance_name(paths[i]), args.hierarchies[hi], args.distances[hi],
                                          args.imbalance, strategy, preset, t, seed)});
            }
          }
        }
      }
    }
  }

  std::vector<GraphPtr> graphs(paths.size());
  std::vector<std::string> load_errors(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      graphs[i] = load_graph(paths[i]);
    } catch (const CliError& e) {
      load_errors[i] = e.what();
    }
  }
  std::vector<HierarchyPtr> hierarchies(args.hierarchies.size());
  std::vector<std::string> hierarchy_errors(args.hierarchies.size());
  for (std::size_t hi = 0; hi < args.hierarchies.size(); ++hi) {
    try {
      hierarchies[hi] = parse_hierarchy(args.hierarchies[hi], args.distances[hi]);
    } catch (const CliError& e) {
      hierarchy_errors[hi] = e.what();
    }
  }

  const bool interactive = isatty(STDERR_FILENO) != 0;
  std::atomic<std::size_t> next{0};
  std::mutex progress;
  std::size_t done = 0;
  const auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      auto& job = jobs[j];
      try {
        if (!load_errors[job.instance].empty()) throw CliError(load_errors[job.instance]);
        if (!hierarchy_errors[job.hierarchy].empty()) throw CliError(hierarchy_errors[job.hierarchy]);
        const auto options = map_options(job.record.eps, job.record.threads, job.record.strategy,
                                         job.record.preset, job.record.seed);
        run_map(graphs[job.instance].get(), hierarchies[job.hierarchy].get(), options, job.record);
      } catch (const std::exception& e) {
        job.record.error = e.what();
      }
      std::lock_guard lock(progress);
      ++done;
      if (interactive) std::cerr << "\r[" << done << "/" << jobs.size() << "]" << std::flush;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < std::min<int>(args.jobs, static_cast<int>(jobs.size())); ++w) pool.emplace_back(worker);
    worker();
  }
  if (interactive && !jobs.empty()) std::cerr << '\n';

  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) throw CliError("cannot open '" + args.output + "' for writing");
  }
  std::ostream& out = args.output.empty() ? std::cout : file;
  out << procmap::tools::run_csv_header() << '\n';
  std::vector<RunRecord> records;
  int failures = 0;
  for (const auto& job : jobs) {
    out << procmap::tools::to_csv(job.record) << '\n';
    failures += !job.record.error.empty();
    records.push_back(job.record);
  }
  if (!args.aggregate.empty()) {
    std::ofstream agg(args.aggregate);
    if (!agg) throw CliError("cannot open '" + args.aggregate + "' for writing");
    agg << procmap::tools::aggregate_csv_header() << '\n';
    for (const auto& row : procmap::tools::aggregate(records, args.baseline)) agg << procmap::tools::to_csv(row) << '\n';
  }
  if (failures > 0) std::cerr << "procmap: " << failures << " of " << jobs.size() << " runs failed\n";
  return 0;
}

struct ProfileArgs {
  std::string input;
  std::vector<double> taus;
  double tau_max = 2.0;
  double tau_step = 0.01;
  std::string output;
  std::string plot;
};

double parse_quality(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double q = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return q;
  } catch (const std::exception&) {
    throw CliError("line " + std::to_string(line) + ": bad quality '" + text + "'");
  }
}

// Reads either an algorithm,instance,quality table or a bench run CSV; bench
// runs become algorithm = configuration, instance = instance/hierarchy and
// quality = mean J over the successful seeds.
std::vector<std::tuple<std::string, std::string, double>> read_quality_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::string line;
  std::vector<std::tuple<std::string, std::string, double>> rows;
  if (!std::getline(in, line)) return rows;
  const auto header = procmap::tools::split_csv_line(line);
  const bool bench = header.size() > 8 && header[0] == "instance" && header[8] == "J";
  const bool has_header = bench || (!header.empty() && header[0] == "algorithm");
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> sums;
  std::vector<std::pair<std::string, std::string>> order;
  std::size_t number = 1;
  auto consume = [&](const std::string& text) {
    const auto f = procmap::tools::split_csv_line(text);
    if (bench) {
      if (f.size() < 13) throw CliError("line " + std::to_string(number) + ": expected 13 bench columns");
      if (!f[12].empty()) return;
      const auto alg = procmap::tools::configuration_name(f[4], f[5], std::stoi(f[6]));
      const std::pair key{alg, f[0] + "/" + f[1]};
      auto [it, fresh] = sums.try_emplace(key, 0.0, 0);
      if (fresh) order.push_back(key);
      it->second.first += parse_quality(f[8], number);
      ++it->second.second;
      return;
    }
    if (f.size() != 3) throw CliError("line " + std::to_string(number) + ": expected algorithm,instance,quality");
    rows.emplace_back(f[0], f[1], parse_quality(f[2], number));
  };
  if (!has_header) consume(line);
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    consume(line);
  }
  for (const auto& key : order) {
    const auto& [sum, count] = sums[key];
    rows.emplace_back(key.first, key.second, sum / count);
  }
  return rows;
}

int cmd_perfprofile(ProfileArgs args) {
  const auto rows = read_quality_rows(args.input);
  if (rows.empty()) throw CliError("no quality rows in '" + args.input + "'");
  const TablePtr table(procmap_quality_table_create());
  procmap_error error{};
  std::map<std::string, bool> zero;
  for (const auto& [alg, inst, q] : rows) {
    check(procmap_quality_table_add(table.get(), alg.c_str(), inst.c_str(), q, &error), error);
    zero[inst] = zero[inst] || q == 0;
  }
  if (args.taus.empty()) {
    if (args.tau_step <= 0 || args.tau_max < 1) throw CliError("need --tau-step > 0 and --tau-max >= 1");
    const auto steps = static_cast<int>((args.tau_max - 1.0) / args.tau_step + 1e-9);
    for (int s = 0; s <= steps; ++s) args.taus.push_back(1.0 + s * args.tau_step);
  }
  const auto algorithms = procmap_quality_table_num_algorithms(table.get());
  std::vector<double> flat(algorithms * args.taus.size());
  size_t excluded = 0;
  check(procmap_performance_profile(table.get(), args.taus.data(), args.taus.size(), flat.data(), &excluded, &error),
        error);
  if (excluded > 0) {
    std::cerr << "procmap: warning: " << excluded << " instance(s) with quality 0 excluded:";
    for (const auto& [inst, z] : zero) {
      if (z) std::cerr << ' ' << inst;
    }
    std::cerr << '\n';
  }

  std::vector<std::string> names;
  std::vector<std::vector<double>> fractions(algorithms);
  for (size_t a = 0; a < algorithms; ++a) {
    names.emplace_back(procmap_quality_table_algorithm(table.get(), a));
    fractions[a].assign(flat.begin() + static_cast<std::ptrdiff_t>(a * args.taus.size()),
                        flat.begin() + static_cast<std::ptrdiff_t>((a + 1) * args.taus.size()));
  }
  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) throw CliError("cannot open '" + args.output + "' for writing");
  }
  std::ostream& out = args.output.empty() ? std::cout : file;
  out << "algorithm,tau,fraction\n";
  for (size_t a = 0; a < algorithms; ++a) {
    for (size_t t = 0; t < args.taus.size(); ++t) {
      out << procmap::tools::csv_escape(names[a]) << ',' << procmap::tools::format_number(args.taus[t]) << ','
          << procmap::tools::format_number(fractions[a][t]) << '\n';
    }
  }
  if (!args.plot.empty()) {
    std::ofstream svg(args.plot);
    if (!svg) throw CliError("cannot open '" + args.plot + "' for writing");
    procmap::tools::write_profile_svg(svg, names, args.taus, fractions);
  }
  return 0;
}

void add_topology_options(CLI::App* cmd, std::string& graph, std::string& hierarchy, std::string& distance,
                          std::string& imbalance) {
  cmd->add_option("--graph,-g", graph, "Communication graph in METIS format")->required();
  cmd->add_option("--hierarchy", hierarchy, "Arities a_1:...:a_l, processor level first")->required();
  cmd->add_option("--distance", distance, "Distances d_1:...:d_l")->required();
  cmd->add_option("--imbalance,-e", imbalance, "Allowed imbalance eps")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Map task graphs onto hierarchical machines by hierarchical multisection"};
  app.set_version_flag("--version", std::string(procmap_version()));
  app.require_subcommand(1);

  MapArgs map;
  auto* map_cmd = app.add_subcommand("map", "Compute a mapping");
  add_topology_options(map_cmd, map.graph, map.hierarchy, map.distance, map.imbalance);
  map_cmd->add_option("--threads,-t", map.threads, "Thread budget")->capture_default_str();
  map_cmd->add_option("--strategy", map.strategy, "naive|layer|queue|nb-layer")->capture_default_str();
  map_cmd->add_option("--preset", map.preset, "fast|eco|strong")->capture_default_str();
  map_cmd->add_option("--seed", map.seed, "Random seed")->capture_default_str();
  map_cmd->add_option("--output,-o", map.output, "Mapping file (one PE id per line)");
  map_cmd->add_option("--stats", map.stats, "Run record as JSON");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an existing mapping");
  add_topology_options(eval_cmd, eval.graph, eval.hierarchy, eval.distance, eval.imbalance);
  eval_cmd->add_option("--mapping,-m", eval.mapping, "Mapping file")->required();

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum for tiny instances (n <= 14, k <= 8)");
  add_topology_options(oracle_cmd, oracle.graph, oracle.hierarchy, oracle.distance, oracle.imbalance);
  oracle_cmd->add_option("--output,-o", oracle.output, "Write the optimal mapping here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded benchmark grid and write CSV");
  bench_cmd->add_option("--instances", bench.instances, "File listing METIS graphs, one per line")->required();
  bench_cmd->add_option("--hierarchies", bench.hierarchies, "Comma-separated hierarchies")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--distances", bench.distances, "Comma-separated distances, paired with --hierarchies")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--strategies", bench.strategies, "Strategies")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--presets", bench.presets, "Presets")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--threads,-t", bench.threads, "Thread budgets")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--imbalance,-e", bench.imbalance, "Allowed imbalance eps")->capture_default_str();
  bench_cmd->add_option("--jobs,-j", bench.jobs, "Runs executed concurrently")->capture_default_str();
  bench_cmd->add_option("--output,-o", bench.output, "Run CSV (default: stdout)");
  bench_cmd->add_option("--aggregate", bench.aggregate, "Per-configuration summary CSV");
  bench_cmd->add_option("--baseline", bench.baseline, "Configuration for the speedup column, e.g. nb-layer-strong-1");

  ProfileArgs profile;
  auto* profile_cmd = app.add_subcommand("perfprofile", "Performance profile from a quality table or bench CSV");
  profile_cmd->add_option("--input,-i", profile.input, "algorithm,instance,quality CSV or bench run CSV")
      ->required();
  profile_cmd->add_option("--taus", profile.taus, "Explicit tau grid")->delimiter(',');
  profile_cmd->add_option("--tau-max", profile.tau_max, "Largest tau of the default grid")->capture_default_str();
  profile_cmd->add_option("--tau-step", profile.tau_step, "Step of the default grid")->capture_default_str();
  profile_cmd->add_option("--output,-o", profile.output, "Profile CSV (default: stdout)");
  profile_cmd->add_option("--plot", profile.plot, "SVG plot");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*map_cmd) return cmd_map(map);
    if (*eval_cmd) return cmd_eval(eval);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*bench_cmd) return cmd_bench(bench);
    if (*profile_cmd) return cmd_perfprofile(profile);
  } catch (const std::exception& e) {
    std::cerr << "procmap: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
