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

#ifndef RLT_TRUNCATORS_H_
#define RLT_TRUNCATORS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlt/corpus_io.h"
#include "rlt/eet.h"
#include "rlt/gpd.h"
#include "rlt/rerank_sim.h"

namespace rlt {

// Cut-offs commonly used for re-ranking depth.
inline constexpr int kFixedKPresets[] = {10, 20, 100, 200, 1000};

// Every query gets min(k, |L|).
TruncationPrediction FixedK(const RunSet& retrieved, int k);

// Depth maximising the mean target over `query_ids` (all target queries when
// empty), smallest depth on ties. A query whose list is shorter than k
// contributes its last entry, i.e. its cut-off is capped at |L|.
// Throws kEmptyTraining.
int GreedyK(const TargetVector& train_targets,
            const std::vector<std::string>& query_ids = {});

// Applies a depth learned by GreedyK with the same cap as FixedK.
TruncationPrediction GreedyKPrediction(const RunSet& retrieved, int k,
                                       std::string method_name);

struct SurpriseConfig {
  // Candidate thresholds, as quantiles of the list's scores, tried in order.
  std::vector<double> candidate_threshold_quantiles = {0.5, 0.6, 0.7, 0.8, 0.9};
  // A fit is accepted when its W^2 is at or below this value.
  double cvm_acceptance_level = 0.461;
  double calibrated_cut_probability = 0.5;
  int min_exceedances = 10;

  void Validate() const;
};

struct SurpriseResult {
  int k = 0;
  // No candidate threshold passed the goodness-of-fit test; k = |L|.
  bool no_acceptable_fit = false;
  std::optional<GpdFit> fit;
  std::vector<double> calibrated;  // per item, list order; empty without a fit
};

// Calibrates scores against a GPD fitted to the upper tail and keeps the
// leading run of items whose calibrated probability reaches the cut. Each
// candidate threshold u (a score quantile) yields exceedances s - u for
// s > u; the first candidate whose fit passes the CvM check is used. An
// item's calibrated probability is F(s - u) under that fit (0 at or below
// u), i.e. how deep into the signal tail its score lies.
//
// Worked example: scores 10, 9.5, 9 followed by 120 draws from N(1, 0.3).
// The 0.5 quantile fit is rejected; at 0.6 (u = 1.112, 49 exceedances) the
// fit passes with W^2 = 0.271. The leaders get F = 0.994 and the upper part
// of the bulk also clears 0.5, so k = 26. Raising the quantile grid to
// {0.9} gives k = 4.
//
// Returns at least 1. Throws kTooFewSamples when |list| < min_exceedances.
SurpriseResult SurpriseTruncate(const RankedList& list,
                                const SurpriseConfig& config = {});

// Runs SurpriseTruncate over every list. Lists that are too short fall back
// to |L| and are counted as having no acceptable fit. Diagnostics, one JSON
// object per query, go to `diagnostics` when non-null.
TruncationPrediction SurprisePrediction(const RunSet& retrieved,
                                        const SurpriseConfig& config,
                                        std::ostream* diagnostics = nullptr,
                                        int threads = 1);

}  // namespace rlt

#endif  // RLT_TRUNCATORS_H_
