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

#include "rlt/plotdata.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/test_util.h"
#include "rlt/error.h"

namespace rlt {
namespace {

using ::rlt::testing::CodeOf;

// Tag balance and attribute quoting; enough to catch broken output.
bool WellFormed(const std::string& xml) {
  std::vector<std::string> open;
  std::size_t i = 0;
  bool saw_root = false;
  while ((i = xml.find('<', i)) != std::string::npos) {
    const std::size_t end = xml.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = xml.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag[0] == '/') {
      if (open.empty() || open.back() != tag.substr(1)) return false;
      open.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \n/"));
    if (open.empty()) {
      if (saw_root) return false;
      saw_root = true;
    }
    if (tag.back() != '/') open.push_back(name);
  }
  return saw_root && open.empty();
}

TEST(CutoffCdfTest, Example) {
  TruncationPrediction p;
  p.cutoffs = {{"a", 0}, {"b", 0}, {"c", 10}, {"d", 50}};
  const auto cdf = CutoffCdf(p);
  ASSERT_EQ(cdf.size(), 3u);
  EXPECT_EQ(cdf[0].k, 0);
  EXPECT_EQ(cdf[0].fraction, 0.5);
  EXPECT_EQ(cdf[1].k, 10);
  EXPECT_EQ(cdf[1].fraction, 0.75);
  EXPECT_EQ(cdf[2].k, 50);
  EXPECT_EQ(cdf[2].fraction, 1.0);
}

TEST(CutoffCdfTest, MonotoneAndEndsAtOne) {
  std::mt19937_64 rng(3);
  TruncationPrediction p;
  for (int q = 0; q < 200; ++q) p.cutoffs["q" + std::to_string(q)] = static_cast<int>(rng() % 101);
  const auto cdf = CutoffCdf(p);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    EXPECT_LT(cdf[i - 1].k, cdf[i].k);
    EXPECT_LT(cdf[i - 1].fraction, cdf[i].fraction);
  }
  EXPECT_DOUBLE_EQ(cdf.back().fraction, 1.0);
}

TEST(CutoffHistogramTest, BinsAndTotals) {
  const std::vector<int> ks = {0, 4, 5, 99, 100, 250};
  const Histogram h = CutoffHistogram(ks, 100, 20);
  EXPECT_EQ(h.bin_width, 5.0);
  ASSERT_EQ(h.counts.size(), 20u);
  EXPECT_EQ(h.counts[0], 2);
  EXPECT_EQ(h.counts[1], 1);
  EXPECT_EQ(h.counts[19], 3);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0), 6);
  EXPECT_EQ(CodeOf([] { CutoffHistogram(std::vector<int>{}, 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(SvgTest, DocumentsAreWellFormedAndSmall) {
  std::vector<ScatterPoint> methods = {{"Fixed-k (20) <a&b>", 20, 0.5, 0.6},
                                       {"Oracle", 35, 0.8, 1.0}};
  std::vector<ScatterPoint> frontier;
  for (int k = 0; k <= 1000; k += 50) frontier.push_back({"", double(k), k / 2000.0, k * 0.03});
  const std::string tradeoff = RenderTradeoffSvg(methods, frontier, "t", "nDCG@10");
  EXPECT_TRUE(WellFormed(tradeoff)) << tradeoff;
  EXPECT_LT(tradeoff.size(), 200u * 1024u);
  EXPECT_NE(tradeoff.find("&lt;a&amp;b&gt;"), std::string::npos);

  std::vector<std::pair<std::string, Histogram>> hists = {
      {"Oracle", CutoffHistogram(std::vector<int>{0, 3, 90}, 100)},
      {"Surprise", CutoffHistogram(std::vector<int>{100, 100}, 100)}};
  const std::string hist = RenderHistogramsSvg(hists, 100, "h");
  EXPECT_TRUE(WellFormed(hist)) << hist;
  EXPECT_LT(hist.size(), 200u * 1024u);

  TruncationPrediction p;
  for (int q = 0; q < 500; ++q) p.cutoffs["q" + std::to_string(q)] = q % 97;
  const auto cdf = CutoffCdf(p);
  const std::string cdf_svg = RenderCdfSvg(cdf, 100, "c");
  EXPECT_TRUE(WellFormed(cdf_svg)) << cdf_svg;
  EXPECT_LT(cdf_svg.size(), 200u * 1024u);
}

TEST(SvgTest, WellFormedCheckerRejectsBrokenXml) {
  EXPECT_FALSE(WellFormed("<svg><g></svg>"));
  EXPECT_FALSE(WellFormed("<svg a=\"x></svg>"));
  EXPECT_TRUE(WellFormed("<?xml version=\"1.0\"?><svg><g/></svg>"));
}

TEST(XmlEscapeTest, Entities) {
  EXPECT_EQ(XmlEscape("a<b>&\"c'"), "a&lt;b&gt;&amp;&quot;c'");
}

}  // namespace
}  // namespace rlt
