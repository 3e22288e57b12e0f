// Copyright 2026 The CIE Authors
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

#include "cie/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "test_support.h"

namespace cie {
namespace {

namespace fs = std::filesystem;
using ::cie::testing::DataPath;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cie_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  std::vector<std::string> Base(const std::string& sub) {
    return {sub, "--dataset", DataPath("toy6.jsonl"), "--out", out_dir(),
            "--min-conf", "0.6"};
  }

  std::string out_dir() const { return (dir_ / "out").string(); }

  static std::string Slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, MineWritesStore) {
  ASSERT_EQ(Run(Base("mine")), 0) << err_.str();
  const std::string store = Slurp(fs::path(out_dir()) / "itemsets.jsonl");
  EXPECT_EQ(std::count(store.begin(), store.end(), '\n'), 5);
  EXPECT_TRUE(fs::exists(fs::path(out_dir()) / "mining_summary.txt"));
  ASSERT_EQ(Run(Base("mine")), 0);
  EXPECT_EQ(Slurp(fs::path(out_dir()) / "itemsets.jsonl"), store);
}

TEST_F(CliTest, MineEmptyResultWarns) {
  auto args = Base("mine");
  args.back() = "1.0";
  args.push_back("--min-support");
  args.push_back("4");
  EXPECT_EQ(Run(args), 0);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
}

TEST_F(CliTest, MissingDatasetIsIoError) {
  EXPECT_EQ(Run({"mine", "--dataset", (dir_ / "nope.jsonl").string(), "--out",
                 out_dir()}),
            7);
  EXPECT_NE(err_.str().find("nope.jsonl"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run({"mine", "--bogus"}), 2);
  EXPECT_EQ(Run({}), 2);
  const fs::path bad = dir_ / "bad.jsonl";
  std::ofstream(bad) << "{\"classes\": [\"A\"]}\n{broken\n";
  EXPECT_EQ(Run({"mine", "--dataset", bad.string(), "--out", out_dir()}), 3);
  const fs::path schema = dir_ / "schema.jsonl";
  std::ofstream(schema) << "{\"classes\": [\"A\"]}\n"
                           "{\"id\": \"x\", \"concepts\": [], "
                           "\"predicted_label\": \"Q\"}\n";
  EXPECT_EQ(Run({"mine", "--dataset", schema.string(), "--out", out_dir()}), 4);
  auto explain = Base("explain");
  explain.insert(explain.end(), {"--instance", "nobody", "--mine-first"});
  EXPECT_EQ(Run(explain), 5);
  auto invalid = Base("mine");
  invalid.insert(invalid.end(), {"--theta3", "9"});
  EXPECT_EQ(Run(invalid), 9);
}

TEST_F(CliTest, ExplainInstance) {
  ASSERT_EQ(Run(Base("mine")), 0);
  auto args = Base("explain");
  args.insert(args.end(), {"--instance", "s4"});
  ASSERT_EQ(Run(args), 0) << err_.str();
  const auto record = nlohmann::json::parse(
      Slurp(fs::path(out_dir()) / "instance_s4.json"));
  EXPECT_EQ(record["surrogate_label"], "B");
  EXPECT_NEAR(record["per_class"][1]["cs"].get<double>(), 7.0 / 3, 1e-9);
  EXPECT_EQ(record["per_class"][1]["itemsets"].size(), 3u);
}

TEST_F(CliTest, ExplainWithoutStoreFails) {
  auto args = Base("explain");
  args.insert(args.end(), {"--instance", "s4"});
  EXPECT_EQ(Run(args), 7);
}

TEST_F(CliTest, ExplainClass) {
  auto args = Base("explain");
  args.insert(args.end(), {"--class", "B", "--theta1", "2", "--theta2", "4",
                           "--theta3", "2", "--mine-first"});
  ASSERT_EQ(Run(args), 0) << err_.str();
  const auto record =
      nlohmann::json::parse(Slurp(fs::path(out_dir()) / "class_B.json"));
  ASSERT_EQ(record["itemsets"].size(), 1u);
  EXPECT_EQ(record["itemsets"][0]["concepts"][0], "b");
  EXPECT_NEAR(record["objective"].get<double>(), 4.0833333333, 1e-9);

  auto unknown = Base("explain");
  unknown.insert(unknown.end(), {"--class", "Z"});
  EXPECT_EQ(Run(unknown), 5);
}

TEST_F(CliTest, ExplainGlobal) {
  auto args = Base("explain");
  args.insert(args.end(), {"--global", "--gamma", "3", "--mine-first"});
  ASSERT_EQ(Run(args), 0) << err_.str();
  const auto record =
      nlohmann::json::parse(Slurp(fs::path(out_dir()) / "global.json"));
  EXPECT_EQ(record["units"].size(), 3u);
  EXPECT_EQ(record["covered"], 6);
  EXPECT_EQ(record["conflicted"], 0);
}

TEST_F(CliTest, EvalAndReport) {
  ASSERT_EQ(Run(Base("mine")), 0);
  auto args = Base("eval");
  args.insert(args.end(), {"--alpha", "1,2", "--beta", "1,2,3", "--gamma",
                           "3", "--baseline", "random,greedy", "--n-words",
                           "1", "--seed", "7"});
  ASSERT_EQ(Run(args), 0) << err_.str();
  EXPECT_NE(out_.str().find("instance fidelity       1.0000"),
            std::string::npos);
  const fs::path dir(out_dir());
  const std::string report = Slurp(dir / "report.json");
  const std::string csv = Slurp(dir / "curves.csv");
  EXPECT_NE(csv.find("gamma,3,1\n"), std::string::npos);

  ASSERT_EQ(Run(args), 0);
  EXPECT_EQ(Slurp(dir / "report.json"), report);

  // Mining in the same run reproduces the report from the stored itemsets.
  args.push_back("--mine-first");
  ASSERT_EQ(Run(args), 0);
  EXPECT_EQ(Slurp(dir / "report.json"), report);

  ASSERT_EQ(Run({"report", "--out", out_dir()}), 0);
  EXPECT_EQ(out_.str(), Slurp(dir / "report.txt"));
}

TEST_F(CliTest, EvalWithoutSweeps) {
  auto args = Base("eval");
  args.push_back("--mine-first");
  ASSERT_EQ(Run(args), 0) << err_.str();
  EXPECT_FALSE(fs::exists(fs::path(out_dir()) / "curves.csv"));
  const auto record =
      nlohmann::json::parse(Slurp(fs::path(out_dir()) / "report.json"));
  EXPECT_FALSE(record.contains("curves"));
}

TEST_F(CliTest, ConfigFile) {
  const fs::path config = dir_ / "run.toml";
  std::ofstream(config) << "dataset = \"" << DataPath("toy6.jsonl") << "\"\n"
                        << "min-conf = 0.8\n"
                        << "out = \"" << out_dir() << "\"\n";
  ASSERT_EQ(Run({"mine", "--config", config.string()}), 0) << err_.str();
  const std::string store = Slurp(fs::path(out_dir()) / "itemsets.jsonl");
  EXPECT_EQ(std::count(store.begin(), store.end(), '\n'), 2);  // header + {a}
  // Flags override the file.
  ASSERT_EQ(Run({"mine", "--config", config.string(), "--min-conf", "0.6"}),
            0);
  const std::string wider = Slurp(fs::path(out_dir()) / "itemsets.jsonl");
  EXPECT_EQ(std::count(wider.begin(), wider.end(), '\n'), 5);
}

TEST_F(CliTest, LexiconMode) {
  ASSERT_EQ(Run({"mine", "--dataset", DataPath("clinical.jsonl"), "--mode",
                 "lexicon", "--lexicon", DataPath("lexicon.tsv"), "--out",
                 out_dir(), "--min-conf", "0.9"}),
            0)
      << err_.str();
  const std::string store = Slurp(fs::path(out_dir()) / "itemsets.jsonl");
  EXPECT_NE(store.find("\"concepts\":[\"T2\"]"), std::string::npos);
}

}  // namespace
}  // namespace cie
