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

#include "rlt/metrics.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "oracles/oracles.h"
#include "oracles/test_util.h"
#include "rlt/error.h"

namespace rlt {
namespace {

using ::rlt::testing::CodeOf;
using ::rlt::testing::ListOf;
using ::rlt::testing::QrelsOf;

// d1 relevant, d2 not, d3 relevant.
class F1Test : public ::testing::Test {
 protected:
  RankedList list_ = ListOf("q", {"d1", "d2", "d3"});
  QrelsSet qrels_ = QrelsOf({{"q", "d1", 2}, {"q", "d2", 0}, {"q", "d3", 3}});
};

TEST_F(F1Test, TopOne) {
  EXPECT_DOUBLE_EQ(PrecisionAtK(list_, qrels_, 1), 1.0);
  EXPECT_DOUBLE_EQ(RecallAtK(list_, qrels_, 1), 0.5);
  EXPECT_NEAR(F1AtK(list_, qrels_, 1), 0.6667, 5e-5);
}

TEST_F(F1Test, WholeList) {
  EXPECT_NEAR(PrecisionAtK(list_, qrels_, 3), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(RecallAtK(list_, qrels_, 3), 1.0);
  EXPECT_NEAR(F1AtK(list_, qrels_, 3), 0.8, 1e-15);
}

TEST_F(F1Test, NoRelevantInTopK) {
  const RankedList list = ListOf("q", {"d2", "d1", "d3"});
  EXPECT_EQ(F1AtK(list, qrels_, 1), 0.0);
}

TEST_F(F1Test, NoRelevantInListIsZeroAndFlagged) {
  const QrelsSet none = QrelsOf({{"q", "d1", 1}});
  const MetricValue v = Evaluate({MetricKind::kF1, 2}, list_, none);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_TRUE(v.flagged);
}

TEST_F(F1Test, CutoffBeyondListIsRejected) {
  EXPECT_EQ(CodeOf([&] { F1AtK(list_, qrels_, 4); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { PrecisionAtK(list_, qrels_, 0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { JudgedAtK(list_, qrels_, 9); }), ErrorCode::kInvalidArgument);
}

TEST_F(F1Test, EqualPrecisionAndRecallGiveThatValue) {
  // Two relevant docs in the list; k = 2 with one hit gives P = R = 0.5.
  const RankedList list = ListOf("q", {"d1", "d2", "d3"});
  EXPECT_EQ(PrecisionAtK(list, qrels_, 2), RecallAtK(list, qrels_, 2));
  EXPECT_EQ(F1AtK(list, qrels_, 2), PrecisionAtK(list, qrels_, 2));
}

TEST(DcgPenalizedTest, Examples) {
  const QrelsSet qrels = QrelsOf({{"q", "r", 2}, {"q", "n", 0}});
  EXPECT_DOUBLE_EQ(DcgPenalizedAtK(ListOf("q", {"r"}), qrels, 1), 1.0);
  EXPECT_DOUBLE_EQ(DcgPenalizedAtK(ListOf("q", {"n"}), qrels, 1), -1.0);
  EXPECT_NEAR(DcgPenalizedAtK(ListOf("q", {"r", "n"}), qrels, 2), 0.3691, 5e-5);
  EXPECT_NEAR(DcgPenalizedAtK(ListOf("q", {"r", "n"}), qrels, 2),
              1.0 - 1.0 / std::log2(3.0), 1e-15);
}

TEST(NdcgTest, IdealRankingIsOne) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 3}, {"q", "b", 2}, {"q", "c", 1}});
  EXPECT_DOUBLE_EQ(NdcgAtK(ListOf("q", {"a", "b", "c"}), qrels, 3), 1.0);
  EXPECT_DOUBLE_EQ(NdcgAtK(ListOf("q", {"a", "b", "c"}), qrels, 10), 1.0);
}

TEST(NdcgTest, AllZeroIsZeroAndFlagged) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 0}});
  const MetricValue v = Evaluate({MetricKind::kNdcg, 10}, ListOf("q", {"a", "b"}), qrels);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_TRUE(v.flagged);
}

TEST(NdcgTest, GradedExample) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 0}, {"q", "b", 3}, {"q", "c", 1}});
  const RankedList list = ListOf("q", {"a", "b", "c"});
  const double dcg = 3 / std::log2(3.0) + 1 / std::log2(4.0);
  const double idcg = 3 + 1 / std::log2(3.0);
  EXPECT_NEAR(dcg, 2.3928, 5e-5);
  EXPECT_NEAR(idcg, 3.6309, 5e-5);
  EXPECT_NEAR(NdcgAtK(list, qrels, 3), 0.6590, 5e-5);
  EXPECT_NEAR(NdcgAtK(list, qrels, 3), dcg / idcg, 1e-15);
}

TEST(NdcgTest, ExponentialGain) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 0}, {"q", "b", 3}, {"q", "c", 1}});
  const RankedList list = ListOf("q", {"a", "b", "c"});
  const double dcg = 7 / std::log2(3.0) + 1 / std::log2(4.0);
  const double idcg = 7 + 1 / std::log2(3.0);
  EXPECT_NEAR(NdcgAtK(list, qrels, 3, GainMode::kExponential), dcg / idcg, 1e-15);
}

TEST(NdcgTest, IdealUsesJudgedDocsOutsideTheList) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 1}, {"q", "missing", 3}});
  const double expected = (1 / std::log2(2.0)) / (3 / std::log2(2.0) + 1 / std::log2(3.0));
  EXPECT_NEAR(NdcgAtK(ListOf("q", {"a", "b"}), qrels, 10), expected, 1e-15);
}

TEST(JudgedTest, Examples) {
  const QrelsSet qrels = QrelsOf({{"q", "a", 0}, {"q", "b", 2}});
  EXPECT_DOUBLE_EQ(JudgedAtK(ListOf("q", {"a", "b", "c"}), qrels, 2), 1.0);
  EXPECT_DOUBLE_EQ(JudgedAtK(ListOf("q", {"c", "d", "a"}), qrels, 2), 0.0);

  QrelsSet twenty(2);
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    ids.push_back("d" + std::to_string(i));
    if (i != 7) twenty.Add("q", ids.back(), 0);
  }
  EXPECT_DOUBLE_EQ(JudgedAtK(ListOf("q", ids), twenty, 20), 0.95);
}

TEST(MetricIdTest, NamesRoundTrip) {
  for (MetricKind kind : {MetricKind::kPrecision, MetricKind::kRecall, MetricKind::kF1,
                          MetricKind::kDcgPenalized, MetricKind::kNdcg,
                          MetricKind::kJudged}) {
    const MetricId id{kind, 7};
    EXPECT_EQ(MetricId::Parse(id.Name()), id) << id.Name();
  }
  const MetricId exp{MetricKind::kNdcg, 10, GainMode::kExponential};
  EXPECT_EQ(exp.Name(), "ndcg_at_k@10:exp");
  EXPECT_EQ(MetricId::Parse("ndcg_at_k@10:exp"), exp);
  EXPECT_EQ(MetricId::Parse("ndcg@10"), MetricId{});
  EXPECT_EQ(MetricId{}.Name(), "ndcg_at_k@10");
  EXPECT_EQ(MetricId{}.DisplayName(), "nDCG@10");
}

TEST(MetricIdTest, RejectsBadNames) {
  for (const char* bad : {"ndcg", "ndcg@", "ndcg@0", "ndcg@x", "map@10", "ndcg@10:cubic",
                          "ndcg@10x"}) {
    EXPECT_EQ(CodeOf([&] { MetricId::Parse(bad); }), ErrorCode::kInvalidArgument)
        << bad;
  }
}

// Random instances against the definitions, plus range and invariance
// properties.
TEST(MetricPropertyTest, MatchesBruteForceDefinitions) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    oracle::RandomInstance inst = oracle::MakeRandomInstance(rng, n);
    const RankedList& list = inst.retrieved.lists.at("q");
    std::vector<int> list_grades;
    std::vector<bool> relevant;
    for (const auto& item : list.items) {
      list_grades.push_back(inst.grades.at(item.doc_id));
      relevant.push_back(list_grades.back() >= 2);
    }
    std::vector<int> judged;
    for (const auto& [doc, g] : *inst.qrels.ForQuery("q")) judged.push_back(g);
    for (int k = 1; k <= 12; ++k) {
      for (bool exp : {false, true}) {
        const double got = NdcgAtK(list, inst.qrels, k,
                                   exp ? GainMode::kExponential : GainMode::kLinear);
        EXPECT_NEAR(got, oracle::Ndcg(list_grades, judged, k, exp), 1e-12);
        EXPECT_GE(got, 0.0);
        EXPECT_LE(got, 1.0 + 1e-15);
      }
      if (k <= n) {
        const double f1 = F1AtK(list, inst.qrels, k);
        EXPECT_NEAR(f1, oracle::F1(relevant, k), 1e-12);
        EXPECT_GE(f1, 0.0);
        EXPECT_LE(f1, 1.0);
        EXPECT_NEAR(DcgPenalizedAtK(list, inst.qrels, k),
                    oracle::DcgPenalized(relevant, k), 1e-12);
      }
    }
  }
}

TEST(MetricPropertyTest, NdcgIgnoresTailOrderAndDocLabels) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    oracle::RandomInstance inst = oracle::MakeRandomInstance(rng, 10);
    const RankedList& list = inst.retrieved.lists.at("q");
    const int k = 1 + static_cast<int>(rng() % 9);
    std::vector<std::string> ids = list.DocIds();
    std::shuffle(ids.begin() + k, ids.end(), rng);
    const double base = NdcgAtK(list, inst.qrels, k);
    EXPECT_EQ(NdcgAtK(ListOf("q", ids), inst.qrels, k), base);

    QrelsSet renamed(2);
    std::vector<std::string> new_ids;
    for (const auto& [doc, g] : *inst.qrels.ForQuery("q")) renamed.Add("q", "z" + doc, g);
    for (const auto& id : list.DocIds()) new_ids.push_back("z" + id);
    EXPECT_EQ(NdcgAtK(ListOf("q", new_ids), renamed, k), base);
  }
}

TEST(PairedTTestTest, IdenticalSamples) {
  const std::vector<double> a = {0.1, 0.5, 0.3};
  const TTestResult r = PairedTTest(a, a);
  EXPECT_EQ(r.t_statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.significant);
  EXPECT_EQ(r.flag, TTestResult::Flag::kAllEqual);
  EXPECT_EQ(r.degrees_of_freedom, 2);
}

// Differences 1, 0, 1, 0, 1: mean 0.6, sd sqrt(0.3), t = 0.6 / sqrt(0.3/5).
TEST(PairedTTestTest, FivePairs) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {0, 2, 2, 4, 4};
  const TTestResult r = PairedTTest(a, b);
  EXPECT_NEAR(r.t_statistic, 0.6 / std::sqrt(0.3 / 5), 1e-12);
  EXPECT_NEAR(r.t_statistic, 2.449489742783178, 1e-12);
  EXPECT_EQ(r.degrees_of_freedom, 4);
  const boost::math::students_t dist(4);
  EXPECT_NEAR(r.p_value, 2 * boost::math::cdf(boost::math::complement(dist, r.t_statistic)),
              1e-12);
  EXPECT_NEAR(r.p_value, 0.07048399691021993, 1e-10);
  EXPECT_FALSE(r.significant);
}

TEST(PairedTTestTest, ConstantNonzeroDifferences) {
  const std::vector<double> a = {2, 3, 4};
  const std::vector<double> b = {1, 2, 3};
  const TTestResult r = PairedTTest(a, b);
  EXPECT_EQ(r.flag, TTestResult::Flag::kZeroVariance);
  EXPECT_TRUE(std::isinf(r.t_statistic));
  EXPECT_GT(r.t_statistic, 0);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_TRUE(r.significant);
  EXPECT_LT(PairedTTest(b, a).t_statistic, 0);
}

TEST(PairedTTestTest, Errors) {
  const std::vector<double> one = {1.0};
  const std::vector<double> two = {1.0, 2.0};
  EXPECT_EQ(CodeOf([&] { PairedTTest(one, one); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { PairedTTest(one, two); }), ErrorCode::kLengthMismatch);
}

TEST(PairedTTestTest, AntisymmetricAndBoundedOnRandomSamples) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 40;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = normal(rng);
      b[i] = a[i] + 0.3 * normal(rng) + (trial % 3) * 0.2;
    }
    const TTestResult ab = PairedTTest(a, b);
    const TTestResult ba = PairedTTest(b, a);
    EXPECT_EQ(ab.t_statistic, -ba.t_statistic);
    EXPECT_EQ(ab.p_value, ba.p_value);
    EXPECT_GE(ab.p_value, 0.0);
    EXPECT_LE(ab.p_value, 1.0);
    EXPECT_EQ(ab.degrees_of_freedom, n - 1);
    EXPECT_EQ(ab.significant, ab.p_value < 0.05);
    const boost::math::students_t dist(n - 1);
    EXPECT_NEAR(ab.p_value,
                2 * boost::math::cdf(boost::math::complement(
                        dist, std::fabs(ab.t_statistic))),
                1e-10);
  }
}

TEST(IncompleteBetaTest, MatchesBoostOnGrid) {
  for (double a : {0.5, 1.0, 2.0, 4.5, 20.0, 150.0}) {
    for (double b : {0.5, 1.0, 3.0, 30.0}) {
      for (double x : {1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1 - 1e-6}) {
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x), boost::math::ibeta(a, b, x),
                    1e-10)
            << a << " " << b << " " << x;
      }
    }
  }
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 0.0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 1.0), 1.0);
  EXPECT_EQ(CodeOf([] { RegularizedIncompleteBeta(0, 1, 0.5); }),
            ErrorCode::kInvalidArgument);
}

TEST(StudentTTest, TwoSidedTail) {
  EXPECT_DOUBLE_EQ(StudentTTwoSidedP(0.0, 10), 1.0);
  EXPECT_EQ(StudentTTwoSidedP(INFINITY, 3), 0.0);
  // Two-sided 5% critical value for 10 degrees of freedom.
  EXPECT_NEAR(StudentTTwoSidedP(2.228138851986274, 10), 0.05, 1e-12);
}

}  // namespace
}  // namespace rlt
