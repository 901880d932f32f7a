// Copyright 2026 The rsmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "rsm/bundle.hpp"
#include "test_util.hpp"

namespace rsm::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rsm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("rsmkit_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
    ::unsetenv(kOutDirEnv);
  }
  void TearDown() override {
    ::unsetenv(kOutDirEnv);
    fs::remove_all(root_);
  }
  std::string path(const std::string& name) const { return (root_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(root_ / name) << text;
  }

  fs::path root_;
};

const std::string kModel = testing::source_path("data/paper_model.json").string();

TEST_F(CliTest, HelpExitsZero) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("Subcommands"), std::string::npos);
  EXPECT_EQ(run_cli({"trade", "--help"}).code, kExitOk);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, kExitInput);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run_cli({"canonical"}).code, kExitInput);
  EXPECT_EQ(run_cli({"canonical", "--model", kModel, "--bogus"}).code, kExitInput);
  const Result missing = run_cli({"canonical", "--model", path("none.json"), "-o", path("o")});
  EXPECT_EQ(missing.code, kExitInput);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o")));
}

TEST_F(CliTest, NumericalFailureExitsOne) {
  write("full.json",
        R"({"format": "rsmkit.quadratic_model", "version": 1, "variables": ["a", "b"],
            "scale": {"linear_exponent": 0, "interaction_exponent": 0},
            "intercept": 1, "linear": [1, 1],
            "interaction_matrix": [[1, 0], [0, 2]]})");
  ASSERT_EQ(run_cli({"canonical", "--model", path("full.json"), "-o", path("c")}).code, kExitOk);
  const Result r = run_cli({"budget", "--canonical", path("c/canonical.json"), "-o", path("b")});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("NoNullDirection"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("b/budget.json")));
  EXPECT_EQ(run_cli({"trade", "--canonical", path("c/canonical.json"), "-o", path("t")}).code,
            kExitNumerical);
}

TEST_F(CliTest, ChainedSubcommands) {
  const std::string out = path("run");
  ASSERT_EQ(run_cli({"canonical", "--model", kModel, "-o", out}).code, kExitOk);
  const std::string canon = out + "/canonical.json";
  ASSERT_EQ(run_cli({"regions", "--canonical", canon, "-M", "1e-8", "--pairs", "1-2,3-4", "-o", out}).code,
            kExitOk);
  EXPECT_TRUE(fs::exists(out + "/region_1_2.svg"));
  EXPECT_TRUE(fs::exists(out + "/region_3_4.csv"));
  EXPECT_FALSE(fs::exists(out + "/region_1_3.csv"));
  ASSERT_EQ(run_cli({"budget", "--canonical", canon, "-M", "1e-8", "-o", out}).code, kExitOk);
  const Result t = run_cli({"trade", "--canonical", canon, "-M", "1e-8", "--pin", "u1", "--drive",
                            "x3", "--delta", "1000", "-o", out});
  ASSERT_EQ(t.code, kExitOk);
  EXPECT_NE(t.out.find("ratio 2.83663"), std::string::npos) << t.out;
  const auto j = io::parse(io::read_file(out + "/trade.json"));
  EXPECT_EQ(j["offset_variable"], 4);
}

TEST_F(CliTest, RejectsBadOptionValues) {
  const std::string out = path("bad");
  ASSERT_EQ(run_cli({"canonical", "--model", kModel, "-o", out}).code, kExitOk);
  const std::string canon = out + "/canonical.json";
  EXPECT_EQ(run_cli({"regions", "--canonical", canon, "-M", "-1", "-o", out}).code, kExitInput);
  EXPECT_EQ(run_cli({"regions", "--canonical", canon, "--pairs", "1-9", "-o", out}).code,
            kExitInput);
  EXPECT_EQ(run_cli({"trade", "--canonical", canon, "--pin", "w1", "-o", out}).code, kExitInput);
  EXPECT_EQ(run_cli({"trade", "--canonical", canon, "--drive", "x1", "-o", out}).code,
            kExitInput);
}

TEST_F(CliTest, OutputDirectoryPrecedence) {
  write("dir.cfg", "out-dir = " + path("from_config") + "\n");
  ::setenv(kOutDirEnv, path("from_env").c_str(), 1);
  ASSERT_EQ(run_cli({"canonical", "--model", kModel}).code, kExitOk);
  EXPECT_TRUE(fs::exists(path("from_env/canonical.json")));

  ASSERT_EQ(run_cli({"--config", path("dir.cfg"), "canonical", "--model", kModel}).code, kExitOk);
  EXPECT_TRUE(fs::exists(path("from_config/canonical.json")));

  ASSERT_EQ(run_cli({"--config", path("dir.cfg"), "canonical", "--model", kModel, "-o",
                     path("from_flag")})
                .code,
            kExitOk);
  EXPECT_TRUE(fs::exists(path("from_flag/canonical.json")));
}

TEST_F(CliTest, ConfigSectionsFeedSubcommands) {
  write("run.cfg", "[canonical]\nmodel = " + kModel + "\n");
  ASSERT_EQ(run_cli({"--config", path("run.cfg"), "canonical", "-o", path("c")}).code, kExitOk);
  EXPECT_TRUE(fs::exists(path("c/canonical.txt")));
}

TEST_F(CliTest, SynthAndFit) {
  const std::string cfg = testing::source_path("data/paper_synthetic.cfg").string();
  ASSERT_EQ(run_cli({"synth", "--synthetic", cfg, "-o", path("s")}).code, kExitOk);
  const Result fit = run_cli({"fit", "--data", path("s/dataset.csv"), "--linear-exponent", "17",
                              "--interaction-exponent", "19", "-o", path("f")});
  ASSERT_EQ(fit.code, kExitOk) << fit.err;
  const auto m = io::model_from_json(io::parse(io::read_file(path("f/model.json"))));
  const auto ref = testing::fixture_model();
  for (Eigen::Index i = 0; i < 5; ++i)
    EXPECT_NEAR(m.linear_scaled()(i), ref.linear_scaled()(i), 1e-6 * std::abs(ref.linear_scaled()(i)));
  EXPECT_EQ(run_cli({"fit", "--data", path("s/dataset.csv"), "--box-cox", "odd", "-o", path("g")})
                .code,
            kExitInput);
}

}  // namespace
}  // namespace rsm::cli
