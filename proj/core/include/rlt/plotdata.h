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

#ifndef RLT_PLOTDATA_H_
#define RLT_PLOTDATA_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlt/rerank_sim.h"

namespace rlt {

struct CdfPoint {
  int k;
  double fraction;  // share of queries with cut-off <= k
};

// Sorted unique cut-offs with their cumulative query share.
std::vector<CdfPoint> CutoffCdf(const TruncationPrediction& prediction);

struct Histogram {
  double bin_width = 0.0;
  std::vector<int> counts;
};

// Equal-width bins over [0, list_depth]; the last bin is closed so k =
// list_depth lands in it. Values beyond list_depth are clamped into it.
Histogram CutoffHistogram(std::span<const int> cutoffs, int list_depth,
                          int bins = 20);

struct ScatterPoint {
  std::string label;
  double avg_k = 0.0;
  double metric = 0.0;
  double latency = 0.0;
};

// Standalone SVG documents; no external assets.
std::string RenderTradeoffSvg(std::span<const ScatterPoint> methods,
                              std::span<const ScatterPoint> frontier,
                              const std::string& title,
                              const std::string& metric_label);
std::string RenderHistogramsSvg(
    const std::vector<std::pair<std::string, Histogram>>& histograms,
    int list_depth, const std::string& title);
std::string RenderCdfSvg(std::span<const CdfPoint> cdf, int list_depth,
                         const std::string& title);

std::string XmlEscape(std::string_view text);

}  // namespace rlt

#endif  // RLT_PLOTDATA_H_
