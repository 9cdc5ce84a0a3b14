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

#ifndef RLT_RERANK_SIM_H_
#define RLT_RERANK_SIM_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlt/corpus_io.h"
#include "rlt/metrics.h"

namespace rlt {

// Top-k of `retrieved` reordered by the re-ranker (score descending,
// doc_id ascending on ties) followed by the untouched retrieved tail.
// k = 0 leaves the retrieved list as is; k = |L| is the full re-ranking.
RankedList ComposeAtK(const RankedList& retrieved, const RankedList& reranked,
                      int k);

struct SweepRow {
  // values[k] = metric of the composite list at cut-off k, k = 0..|L|.
  std::vector<double> values;
  bool flagged = false;
  // Non-empty when the metric failed for this query; values is then empty.
  std::string error;
};

struct SweepMatrix {
  MetricId metric;
  std::map<std::string, SweepRow> rows;

  const SweepRow& Row(const std::string& query_id) const;
};

// Composite lists are built incrementally: the re-ranked prefix grows by one
// insertion per cut-off. Results equal ComposeAtK + Evaluate bit for bit.
// Queries are split across `threads` workers; output does not depend on the
// thread count.
SweepMatrix Sweep(const RerankPair& pair, const QrelsSet& qrels,
                  const MetricId& metric, int threads = 1);

// Smallest index attaining the maximum.
int OracleCutoff(std::span<const double> sweep_row);

// Sweep cache: "query_id,k,value" rows preceded by a "# metric=NAME" line.
// Values carry 17 significant digits so they reload exactly.
void WriteSweepCsv(const SweepMatrix& sweep, std::ostream& out);
SweepMatrix ReadSweepCsv(std::istream& in);

struct CostModel {
  // Seconds per point-wise re-ranker inference.
  double per_item_latency = 0.02977;
  double fixed_overhead = 0.0;

  double Latency(int k) const { return fixed_overhead + k * per_item_latency; }

  // 7B LLM re-ranker (29.77 s for 1000 items).
  static CostModel LlmReranker() { return {0.02977, 0.0}; }
  // Pre-trained LM re-ranker (13.66 s for 1000 items).
  static CostModel PlmReranker() { return {0.01366, 0.0}; }
};

struct TruncationPrediction {
  std::string method_name;
  std::map<std::string, int> cutoffs;
};

// "query_id<TAB>k" per line; an optional "# method=NAME" header line.
// Without the header the method name is the file stem.
TruncationPrediction ReadPrediction(std::istream& in,
                                    const std::string& fallback_name);
TruncationPrediction ReadPredictionFile(const std::filesystem::path& path);
void WritePrediction(const TruncationPrediction& prediction, std::ostream& out);

struct EvaluationRow {
  std::string method;
  double avg_k = 0.0;
  double mean_metric = 0.0;
  double mean_latency = 0.0;
  // Aligned, in query_id order.
  std::vector<std::string> query_ids;
  std::vector<int> cutoffs;
  std::vector<double> per_query_metric;
};

// Evaluates on `query_ids` (all pair queries when empty). Means are summed
// in query_id order. Throws kMissingQuery or kCutoffOutOfRange.
EvaluationRow EvaluatePrediction(const TruncationPrediction& prediction,
                                 const RerankPair& pair, const QrelsSet& qrels,
                                 const MetricId& metric, const CostModel& cost,
                                 const std::vector<std::string>& query_ids = {});

// Same, reading metric values from a sweep.
EvaluationRow EvaluatePrediction(const TruncationPrediction& prediction,
                                 const SweepMatrix& sweep,
                                 const CostModel& cost,
                                 const std::vector<std::string>& query_ids = {});

TruncationPrediction OraclePrediction(const SweepMatrix& sweep);

}  // namespace rlt

#endif  // RLT_RERANK_SIM_H_
