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

#include "rlt/eet.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/oracles.h"
#include "oracles/test_util.h"
#include "rlt/error.h"

namespace rlt {
namespace {

using ::rlt::testing::CodeOf;
using ::rlt::testing::ListOf;
using ::rlt::testing::QrelsOf;

TEST(EfficiencyDecayTest, ClosedForm) {
  EXPECT_EQ(EfficiencyDecay(0, -0.001), 1.0);
  EXPECT_NEAR(EfficiencyDecay(1000, -0.001), 0.3678794412, 1e-9);
  EXPECT_EQ(EfficiencyDecay(1000, -0.001), std::exp(-1.0));
  for (int k : {0, 1, 50, 1000}) EXPECT_EQ(EfficiencyDecay(k, 0.0), 1.0);
  EXPECT_EQ(CodeOf([] { EfficiencyDecay(-1, -0.001); }), ErrorCode::kInvalidArgument);
}

TEST(RerankGainTest, Examples) {
  const std::vector<double> row = {0.5, 0.7, 0.4};
  EXPECT_EQ(RerankGain(row, 0), 0.0);
  EXPECT_NEAR(RerankGain(row, 1), 0.2, 1e-15);
  EXPECT_LT(RerankGain(row, 2), 0.0);
  EXPECT_EQ(CodeOf([&] { RerankGain(row, 3); }), ErrorCode::kCutoffOutOfRange);
}

TEST(EetTest, Examples) {
  EXPECT_EQ(Eet(0.37, 0.2, 0.0), 0.37);
  EXPECT_EQ(Eet(-0.1, 0.9, 1.0), 0.0);
  EXPECT_EQ(Eet(0.0, 0.9, 2.0), 0.0);
  EXPECT_NEAR(Eet(0.1, 0.9, 1.0), 0.18, 1e-15);
  EXPECT_EQ(CodeOf([] { Eet(0.1, 0.0, 1.0); }), ErrorCode::kInvalidArgument);
}

TEST(EetTest, BetaZeroReturnsSigmaOnRandomPairs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double sigma = unit(rng);
    const double gamma = 1e-6 + unit(rng);
    EXPECT_EQ(Eet(sigma, gamma, 0.0), sigma);
  }
}

TEST(EetPropertyTest, MonotoneAndBounded) {
  for (double beta : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    for (int gi = 1; gi <= 20; ++gi) {
      const double gamma = gi / 20.0;
      double previous = 0.0;
      for (int si = 0; si <= 40; ++si) {
        const double sigma = si / 40.0;
        const double v = Eet(sigma, gamma, beta);
        EXPECT_GE(v, previous);
        previous = v;
        if (sigma > 0.0) EXPECT_LE(v, std::max(sigma, gamma) + 1e-15);
      }
    }
  }
}

TEST(EetPropertyTest, NonIncreasingInCutoffForFixedGain) {
  for (double beta : {0.5, 1.0, 2.0}) {
    double previous = INFINITY;
    for (int k = 0; k <= 1000; k += 10) {
      const double v = Eet(0.3, EfficiencyDecay(k, -0.001), beta);
      EXPECT_LE(v, previous);
      previous = v;
    }
  }
}

TEST(EetConfigTest, Validate) {
  EXPECT_EQ(CodeOf([] { EetConfig{-1.0}.Validate(); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { EetConfig{1.0, 0.01}.Validate(); }), ErrorCode::kInvalidArgument);
  EetConfig{2.0, 0.0}.Validate();
}

RunSet RunOf(const RankedList& list) {
  RunSet run;
  run.lists.emplace(list.query_id, list);
  return run;
}

TEST(BuildTargetsTest, IdenticalRerankerGivesZeros) {
  const RankedList list = ListOf("q", {"a", "b", "c"});
  const TargetVector t = BuildTargets(PairRuns(RunOf(list), RunOf(list)),
                                      QrelsOf({{"q", "c", 3}}), EetConfig{1.0});
  EXPECT_EQ(t.targets.at("q"), (std::vector<double>{0, 0, 0, 0}));
}

TEST(BuildTargetsTest, BetaZeroIsClampedGain) {
  SweepMatrix sweep;
  sweep.rows["q"].values = {0.4, 0.3, 0.6, 0.9};
  const TargetVector t = BuildTargets(sweep, EetConfig{0.0});
  const std::vector<double>& v = t.targets.at("q");
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_EQ(v[2], 0.6 - 0.4);
  EXPECT_EQ(v[3], 0.9 - 0.4);
}

// Element-wise recomputation from the formula on random instances.
TEST(BuildTargetsTest, MatchesFormulaOnRandomInstances) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    oracle::RandomInstance inst = oracle::MakeRandomInstance(rng, 8);
    const RerankPair pair = PairRuns(inst.retrieved, inst.reranked);
    const EetConfig config{1.0, -0.001};
    const TargetVector t = BuildTargets(pair, inst.qrels, config);
    const std::vector<double> sweep = Sweep(pair, inst.qrels, MetricId{}).Row("q").values;
    ASSERT_EQ(t.targets.at("q").size(), 9u);
    for (int k = 0; k <= 8; ++k) {
      const double sigma = sweep[k] - sweep[0];
      const double gamma = std::exp(-0.001 * k);
      const double expected = sigma <= 0 ? 0.0 : 2 * gamma * sigma / (sigma + gamma);
      EXPECT_NEAR(t.targets.at("q")[k], expected, 1e-15);
      EXPECT_GE(t.targets.at("q")[k], 0.0);
    }
  }
}

TEST(BuildTargetsTest, ArgmaxWithoutDecayIsOracleCutoff) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    oracle::RandomInstance inst = oracle::MakeRandomInstance(rng, 1 + trial % 12);
    const RerankPair pair = PairRuns(inst.retrieved, inst.reranked);
    const SweepMatrix sweep = Sweep(pair, inst.qrels, MetricId{});
    const TargetVector t = BuildTargets(sweep, EetConfig{0.0, 0.0});
    EXPECT_EQ(oracle::ArgmaxFirst(t.targets.at("q")), OracleCutoff(sweep.Row("q").values));
  }
}

TEST(TargetFileTest, RoundTripWithNineDigits) {
  TargetVector t;
  t.config = EetConfig{2.0, -0.001, MetricId{MetricKind::kNdcg, 5}};
  t.targets["q1"] = {0.0, 1.0 / 3.0, 0.123456789123};
  t.targets["q2"] = {0.0};
  std::ostringstream out;
  WriteTargets(t, out);
  EXPECT_EQ(out.str(),
            "# beta=2 alpha=-0.001 metric=ndcg_at_k@5\n"
            "q1 0 0.333333333 0.123456789\n"
            "q2 0\n");
  std::istringstream in(out.str());
  const TargetVector back = ReadTargets(in);
  EXPECT_EQ(back.config.beta, 2.0);
  EXPECT_EQ(back.config.alpha, -0.001);
  EXPECT_EQ(back.config.metric, t.config.metric);
  EXPECT_NEAR(back.targets.at("q1")[1], 1.0 / 3.0, 1e-9);
  EXPECT_EQ(back.targets.at("q2").size(), 1u);
}

TEST(TargetFileTest, Malformed) {
  std::istringstream no_header("q1 0 1\n");
  EXPECT_EQ(CodeOf([&] { ReadTargets(no_header); }), ErrorCode::kMalformedLine);
  std::istringstream bad("# beta=0\nq1 0 x\n");
  EXPECT_EQ(CodeOf([&] { ReadTargets(bad); }), ErrorCode::kMalformedLine);
  EXPECT_EQ(CodeOf([] { ReadTargetsFile("/nonexistent/targets.txt"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace rlt
