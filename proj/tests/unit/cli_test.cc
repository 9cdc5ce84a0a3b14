// Copyright 2026 The rltlab Authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "oracles/test_util.h"

namespace rlt {
namespace {

namespace fs = std::filesystem;
using ::rlt::testing::ReadAll;
using ::rlt::testing::ScratchDir;
using ::rlt::testing::WriteAll;

int RunCli(const std::string& args) {
  const std::string command =
      std::string("'") + RLTLAB_CLI + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    WriteAll(dir_.path() / "r.run", "q Q0 a 1 2 t\nq Q0 b 2 1 t\n");
    WriteAll(dir_.path() / "rr.run", "q Q0 a 1 1 t\nq Q0 b 2 2 t\n");
    WriteAll(dir_.path() / "qrels", "q 0 b 2\n");
    WriteConfig("qrels");
  }

  void WriteConfig(const std::string& qrels) {
    WriteAll(config_, R"({"schema_version": 1, "list_depth": 10, "paths": {
      "retrieved_run": "r.run", "reranked_run": "rr.run", "qrels": ")" +
                          qrels + R"(", "output_dir": "out"}})");
  }

  std::string Cfg() const { return "--config '" + config_.string() + "'"; }

  ScratchDir dir_{"cli"};
  fs::path config_ = dir_.path() / "config.json";
};

TEST_F(CliTest, HelpSucceeds) {
  EXPECT_EQ(RunCli("--help"), 0);
  EXPECT_EQ(RunCli("sweep --help"), 0);
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("sweep"), 2);
  EXPECT_EQ(RunCli("sweep --config /nonexistent/config.json"), 2);
  EXPECT_EQ(RunCli("truncate --method fixed-k --beta 1 " + Cfg()), 2);
  EXPECT_EQ(RunCli("truncate --method surprise --k 3 " + Cfg()), 2);
  EXPECT_EQ(RunCli("sweep --threads 0 " + Cfg()), 2);
}

TEST_F(CliTest, MissingInputFailsBeforeAnyOutput) {
  WriteConfig("missing_qrels");
  EXPECT_EQ(RunCli("sweep " + Cfg()), 2);
  EXPECT_FALSE(fs::exists(dir_.path() / "out"));
}

TEST_F(CliTest, RuntimeErrorsExitWithOne) {
  EXPECT_EQ(RunCli("oracle " + Cfg()), 1);
  WriteAll(dir_.path() / "rr.run", "q Q0 a 1 1 t\nq Q0 c 2 2 t\n");
  EXPECT_EQ(RunCli("sweep " + Cfg()), 1);
}

TEST_F(CliTest, PipelineSucceeds) {
  EXPECT_EQ(RunCli("sweep " + Cfg()), 0);
  EXPECT_EQ(RunCli("oracle " + Cfg()), 0);
  EXPECT_EQ(RunCli("truncate --method fixed-k --k 1 " + Cfg()), 0);
  EXPECT_EQ(RunCli("evaluate " + Cfg()), 0);
  const std::string report = ReadAll(dir_.path() / "out" / "report" / "report.csv");
  EXPECT_NE(report.find("Fixed-k (1)"), std::string::npos);
  EXPECT_NE(report.find("Oracle"), std::string::npos);
}

}  // namespace
}  // namespace rlt
