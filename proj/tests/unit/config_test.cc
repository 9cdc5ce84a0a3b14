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

#include "rlt/config.h"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "oracles/test_util.h"
#include "rlt/error.h"

namespace rlt {
namespace {

using ::rlt::testing::CodeOf;
using ::rlt::testing::ScratchDir;
using ::rlt::testing::WriteAll;

class ConfigTest : public ::testing::Test {
 protected:
  void SetUp() override {
    WriteAll(dir_.path() / "r.run", "q Q0 a 1 1.0 t\n");
    WriteAll(dir_.path() / "rr.run", "q Q0 a 1 1.0 t\n");
    WriteAll(dir_.path() / "qrels", "q 0 a 1\n");
  }

  std::string Minimal(const std::string& extra = "") const {
    return R"({"schema_version": 1, "paths": {"retrieved_run": "r.run",
      "reranked_run": "rr.run", "qrels": "qrels", "output_dir": "out"})" +
           extra + "}";
  }

  ErrorCode CodeFor(const std::string& text) const {
    return CodeOf([&] { ParseConfig(text, dir_.path()); });
  }

  ScratchDir dir_{"config_test"};
};

TEST_F(ConfigTest, Defaults) {
  const ExperimentConfig c = ParseConfig(Minimal(), dir_.path());
  EXPECT_EQ(c.metric.Name(), "ndcg_at_k@10");
  EXPECT_EQ(c.relevance_threshold, 2);
  EXPECT_EQ(c.list_depth, 1000);
  ASSERT_EQ(c.eet_presets.size(), 3u);
  EXPECT_EQ(c.eet_presets[2].beta, 2.0);
  EXPECT_EQ(c.cost_model.per_item_latency, CostModel::LlmReranker().per_item_latency);
  EXPECT_EQ(c.train_fraction, 0.5);
  EXPECT_EQ(c.threads, 1);
  ASSERT_EQ(c.frontier_grid.size(), 21u);
  EXPECT_EQ(c.frontier_grid.front(), 0);
  EXPECT_EQ(c.frontier_grid.back(), 1000);
  EXPECT_FALSE(c.paths.corpus.has_value());
}

TEST_F(ConfigTest, RelativePathsResolveAgainstBaseDir) {
  const ExperimentConfig c = ParseConfig(Minimal(), dir_.path());
  EXPECT_EQ(c.paths.qrels, dir_.path() / "qrels");
  EXPECT_EQ(c.paths.output_dir, dir_.path() / "out");
  EXPECT_EQ(c.SweepCachePath().parent_path(), dir_.path() / "out");
  EXPECT_EQ(c.TargetPath(EetPreset{2.0, -0.001}).filename(),
            "eet_beta2_alpha-0.001.txt");
}

TEST_F(ConfigTest, ExplicitValues) {
  const ExperimentConfig c = ParseConfig(
      Minimal(R"json(, "metric": "f1@5", "relevance_threshold": 1, "list_depth": 40,
        "eet_presets": [{"beta": 0.5}], "cost_model": {"name": "plm"},
        "fixed_k": [3], "baselines": ["Fixed-k (3)"], "split": {"train_fraction": 0},
        "frontier_grid": [0, 40], "threads": 4)json"),
      dir_.path());
  EXPECT_EQ(c.metric.Name(), "f1_at_k@5");
  EXPECT_EQ(c.list_depth, 40);
  EXPECT_EQ(c.eet_presets.size(), 1u);
  EXPECT_EQ(c.eet_presets[0].alpha, -0.001);
  EXPECT_EQ(c.cost_model.per_item_latency, CostModel::PlmReranker().per_item_latency);
  EXPECT_EQ(c.fixed_k, std::vector<int>{3});
  EXPECT_EQ(c.frontier_grid, (std::vector<int>{0, 40}));
  EXPECT_EQ(c.threads, 4);
  EXPECT_EQ(c.PresetForBeta(0.5).beta, 0.5);
  EXPECT_EQ(CodeOf([&] { c.PresetForBeta(7.0); }), ErrorCode::kConfig);
}

TEST_F(ConfigTest, EveryProblemIsAConfigError) {
  EXPECT_EQ(CodeFor("{not json"), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor("[]"), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(R"({"schema_version": 2})"), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(R"({"schema_version": 1})"), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "metric": "bogus@3")")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "gain": "cubic")")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "relevance_threshold": 0)")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "list_depth": 0)")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "eet_presets": [])")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "eet_presets": [{"beta": -1}])")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "eet_presets": [{"alpha": 0.1}])")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "fixed_k": [-1])")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"json(, "fixed_k": "ten")json")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "split": {"train_fraction": 1})")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "threads": 0)")), ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "cost_model": {"per_item_latency": -1})")),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeFor(Minimal(R"(, "surprise": {"cvm_acceptance_level": -1})")),
            ErrorCode::kConfig);
}

TEST_F(ConfigTest, MissingInputPathIsReportedByName) {
  std::filesystem::remove(dir_.path() / "qrels");
  try {
    ParseConfig(Minimal(), dir_.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("qrels"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([&] { LoadConfig(dir_.path() / "absent.json"); }), ErrorCode::kConfig);
}

TEST_F(ConfigTest, LoadConfigUsesFileDirectory) {
  WriteAll(dir_.path() / "c.json", Minimal());
  const ExperimentConfig c = LoadConfig(dir_.path() / "c.json");
  EXPECT_EQ(c.paths.retrieved_run, dir_.path() / "r.run");
}

TEST(SplitQueriesTest, SortedPrefixForTraining) {
  const QuerySplit s = SplitQueries({"d", "b", "a", "c"}, 0.5);
  EXPECT_EQ(s.train, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(s.test, (std::vector<std::string>{"c", "d"}));
}

TEST(SplitQueriesTest, DegenerateFractionsUseEveryQuery) {
  const QuerySplit zero = SplitQueries({"b", "a"}, 0.0);
  EXPECT_EQ(zero.train, zero.test);
  const QuerySplit tiny = SplitQueries({"a"}, 0.5);
  EXPECT_EQ(tiny.test, std::vector<std::string>{"a"});
}

}  // namespace
}  // namespace rlt
