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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "bench_report.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(PROCMAP_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buffer[4096];
  while (const auto n = fread(buffer, 1, sizeof(buffer), pipe)) out.append(buffer, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Value after "key: " on its own line.
std::string field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  if (pos == std::string::npos) return {};
  const auto start = pos + key.size() + 2;
  return text.substr(start, text.find('\n', start) - start);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("procmap_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream(dir_ / "p8.graph") << "8 7\n2\n1 3\n2 4\n3 5\n4 6\n5 7\n6 8\n7\n";
    std::ofstream(dir_ / "p4.graph") << "4 3\n2\n1 3\n2 4\n3\n";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, MapWritesMappingAndStats) {
  const auto r = run("map -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 --imbalance 0 -o " +
                     path("p8.map") + " --stats " + path("p8.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(field(r.out, "J"), "24");
  EXPECT_EQ(field(r.out, "J/2"), "12");
  const auto stats = nlohmann::json::parse(read_file(dir_ / "p8.json"));
  std::vector<std::string> keys;
  for (const auto& [key, value] : stats.items()) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::vector<std::string> expected{"instance", "hierarchy", "distance", "eps", "strategy", "preset",
                                    "threads", "seed", "J", "edge_cut", "max_imbalance", "wall_time_ms"};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(stats["J"], 24);
  EXPECT_EQ(stats["strategy"], "nb-layer");
  EXPECT_EQ(stats["preset"], "eco");
  EXPECT_GT(stats["wall_time_ms"].get<double>(), 0);

  const auto e = run("eval -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 -m " + path("p8.map"));
  ASSERT_EQ(e.exit_code, 0) << e.out;
  EXPECT_EQ(field(e.out, "J"), std::to_string(stats["J"].get<long>()));
  EXPECT_EQ(field(e.out, "verdict"), "balanced");
}

TEST_F(Cli, DefaultsAndValidation) {
  const auto r = run("map -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 --stats " + path("s.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto stats = nlohmann::json::parse(read_file(dir_ / "s.json"));
  EXPECT_EQ(stats["eps"], "0.03");
  EXPECT_EQ(stats["threads"], 1);
  EXPECT_EQ(stats["seed"], 1);
  const auto mismatch = run("map -g " + path("p8.graph") + " --hierarchy 4:8 --distance 1:10:100");
  EXPECT_EQ(mismatch.exit_code, 1);
  EXPECT_NE(mismatch.out.find("error"), std::string::npos);
  EXPECT_NE(run("map -g " + path("p8.graph") + " --hierarchy 4:2:3 --distance 1:10:100").exit_code, 0);
  EXPECT_NE(run("map -g " + path("missing.graph") + " --hierarchy 2 --distance 1").exit_code, 0);
  EXPECT_NE(run("map -g " + path("p8.graph") + " --hierarchy 2 --distance 1 --strategy fastest").exit_code, 0);
  EXPECT_NE(run("").exit_code, 0);
}

TEST_F(Cli, EvalReportsImbalance) {
  {
    std::ofstream g(dir_ / "u800.graph");
    g << "800 0\n";
    for (int v = 0; v < 800; ++v) g << "\n";
    std::ofstream m(dir_ / "heavy.map");
    for (int v = 0; v < 800; ++v) m << (v < 121 ? 0 : 1 + (v - 121) % 7) << '\n';
  }
  const auto r = run("eval -g " + path("u800.graph") + " --hierarchy 4:2 --distance 1:10 --imbalance 0.1 -m " +
                     path("heavy.map"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(field(r.out, "verdict"), "unbalanced, L_max=110");

  std::ofstream(dir_ / "zeros.map") << "0\n0\n0\n0\n0\n0\n0\n0\n";
  const auto z = run("eval -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 -m " + path("zeros.map"));
  EXPECT_EQ(field(z.out, "J"), "0");
  EXPECT_EQ(field(z.out, "edge_cut"), "0");
  EXPECT_EQ(field(z.out, "verdict").rfind("unbalanced", 0), 0u);

  std::ofstream(dir_ / "short.map") << "0\n1\n";
  EXPECT_EQ(run("eval -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 -m " + path("short.map")).exit_code,
            1);
  std::ofstream(dir_ / "range.map") << "0\n0\n1\n1\n2\n2\n3\n4\n";
  EXPECT_EQ(run("eval -g " + path("p8.graph") + " --hierarchy 2:2 --distance 1:10 -m " + path("range.map")).exit_code,
            1);
}

TEST_F(Cli, Oracle) {
  const auto r = run("oracle -g " + path("p4.graph") + " --hierarchy 2 --distance 1 --imbalance 0");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(field(r.out, "J"), "2");
}

TEST_F(Cli, BenchWritesOneRowPerRun) {
  std::ofstream(dir_ / "list.txt") << "p8.graph\n# skipped\np4.graph\n";
  const auto r = run("bench --instances " + path("list.txt") +
                     " --hierarchies 2:2 --distances 1:10 --seeds 1,2,3 --threads 1 --jobs 2 -o " + path("runs.csv") +
                     " --aggregate " + path("agg.csv") + " --baseline nb-layer-eco-1");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  std::istringstream runs(read_file(dir_ / "runs.csv"));
  std::string line;
  std::getline(runs, line);
  EXPECT_EQ(line, procmap::tools::run_csv_header());
  int rows = 0, failed = 0;
  while (std::getline(runs, line)) {
    ++rows;
    const auto f = procmap::tools::split_csv_line(line);
    ASSERT_EQ(f.size(), 13u);
    failed += !f[12].empty();
  }
  EXPECT_EQ(rows, 6);
  EXPECT_EQ(failed, 0);
  std::istringstream agg(read_file(dir_ / "agg.csv"));
  std::getline(agg, line);
  EXPECT_EQ(line, procmap::tools::aggregate_csv_header());
  int groups = 0;
  while (std::getline(agg, line)) {
    ++groups;
    EXPECT_EQ(procmap::tools::split_csv_line(line)[11], "1");
  }
  EXPECT_EQ(groups, 2);
}

TEST_F(Cli, BenchRecordsFailuresAndContinues) {
  std::ofstream(dir_ / "list.txt") << "missing.graph\np8.graph\n";
  const auto r = run("bench --instances " + path("list.txt") + " --hierarchies 2:2 --distances 1:10 --seeds 1,2 -o " +
                     path("runs.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  std::istringstream runs(read_file(dir_ / "runs.csv"));
  std::string line;
  std::getline(runs, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(runs, line)) rows.push_back(procmap::tools::split_csv_line(line));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[0][12], "");
  EXPECT_EQ(rows[0][8], "");
  EXPECT_EQ(rows[3][12], "");
  EXPECT_EQ(rows[3][8], "24");
}

TEST_F(Cli, PerfProfile) {
  std::ofstream(dir_ / "q.csv") << "algorithm,instance,quality\nA,i,10\nB,i,20\n";
  const auto r = run("perfprofile -i " + path("q.csv") + " --taus 1,1.5,2 --plot " + path("p.svg"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("A,1,1\nA,1.5,1\nA,2,1\nB,1,0\nB,1.5,0\nB,2,1\n"), std::string::npos) << r.out;
  EXPECT_EQ(read_file(dir_ / "p.svg").rfind("<svg", 0), 0u);

  std::ofstream(dir_ / "sparse.csv") << "A,i,10\nB,j,20\n";
  EXPECT_EQ(run("perfprofile -i " + path("sparse.csv")).exit_code, 1);
}

}  // namespace
