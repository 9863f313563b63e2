// Copyright 2026 The aess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aess/sat.hpp"
#include "aess/spectral.hpp"
#include "cli.hpp"

namespace aess {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "aess");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("aess_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gen", "--n", "10"}).code, cli::kExitUsage);  // missing -o
  EXPECT_EQ(run({"spectrum", "--model", "nope", "--n", "4"}).code, cli::kExitUsage);
  const Outcome r = run({"spectrum", "--model", "sat3-classical", "-i", path("missing.cnf")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, GenWritesPlantedInstance) {
  const Outcome r = run({"gen", "--n", "10", "--seed", "7", "--unique", "-o", path("inst.cnf")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const SatInstance inst = parse_dimacs(slurp(path("inst.cnf")));
  EXPECT_EQ(inst.num_vars(), 10);
  ASSERT_TRUE(inst.planted().has_value());
  EXPECT_EQ(count_solutions(inst).count, 1U);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST_F(CliTest, SpectrumWritesOverlapRow) {
  ASSERT_EQ(run({"gen", "--n", "8", "--seed", "3", "--unique", "-o", path("i.cnf")}).code, 0);
  const Outcome r = run({"spectrum", "--model", "sat3-classical", "-i", path("i.cnf"), "--w", "1.0", "-o", path("s.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(slurp(path("s.csv")));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, overlap_csv_header());
  EXPECT_EQ(row.rfind("sat3-classical,8,", 0), 0U);
}

TEST_F(CliTest, ConfigFileFillsOptions) {
  std::ofstream(path("c.json")) << R"({"model": "ferro-chain", "n": 5, "w": 1.0})";
  const Outcome r = run({"spectrum", "--config", path("c.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("ferro-chain,5,"), std::string::npos);
  std::ofstream(path("bad.json")) << R"({"model": "ferro-chain", "n": 5, "colour": 1})";
  EXPECT_EQ(run({"spectrum", "--config", path("bad.json")}).code, cli::kExitUsage);
}

TEST_F(CliTest, NumericFailureExitsTwo) {
  const Outcome r = run({"wc", "--model", "xx-dephasing", "--n", "4"});
  EXPECT_EQ(r.code, cli::kExitNumeric);
  EXPECT_NE(r.err.find("cross"), std::string::npos);
}

TEST_F(CliTest, WcWritesJson) {
  const Outcome r = run({"wc", "--model", "ferro-chain", "--n", "6", "-o", path("wc.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("wc.json")));
  EXPECT_GT(j.at("W_c").get<double>(), 1.0);
  EXPECT_LT(j.at("W_c").get<double>(), 1.5);
}

TEST_F(CliTest, FitReadsCsv) {
  std::ofstream f(path("t.csv"));
  f << std::setprecision(17) << "# comment\nN,W,mean_delta\n";
  for (int n : {6, 8, 10, 12}) f << n << ",1.0," << std::exp(-0.3 * n) << "\n";
  f.close();
  const Outcome r = run({"fit", "-i", path("t.csv"), "--kind", "exponential", "-o", path("f.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("f.json")));
  EXPECT_NEAR(j.at("b").get<double>(), 0.3, 1e-9);
}

}  // namespace
}  // namespace aess
