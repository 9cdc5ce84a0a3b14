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

#include "rlt/rerank_sim.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rlt/error.h"
#include "rlt/parallel.h"

namespace rlt {
namespace {

// Re-ranker score for each position of the retrieved list.
std::vector<double> RerankerScores(const RankedList& retrieved,
                                   const RankedList& reranked) {
  std::unordered_map<std::string_view, double> by_doc;
  by_doc.reserve(reranked.size());
  for (const auto& item : reranked.items) by_doc.emplace(item.doc_id, item.score);
  if (by_doc.size() != retrieved.size()) {
    throw Error(ErrorCode::kDocSetMismatch,
                fmt::format("query {}: {} retrieved vs {} re-ranked docs",
                            retrieved.query_id, retrieved.size(), by_doc.size()));
  }
  std::vector<double> scores(retrieved.size());
  for (std::size_t i = 0; i < retrieved.size(); ++i) {
    auto it = by_doc.find(retrieved.items[i].doc_id);
    if (it == by_doc.end()) {
      throw Error(ErrorCode::kDocSetMismatch,
                  fmt::format("query {}: {} missing from re-ranked list",
                              retrieved.query_id, retrieved.items[i].doc_id));
    }
    scores[i] = it->second;
  }
  return scores;
}

struct RerankOrder {
  const RankedList* retrieved;
  const std::vector<double>* scores;
  bool operator()(std::size_t a, std::size_t b) const {
    if ((*scores)[a] != (*scores)[b]) return (*scores)[a] > (*scores)[b];
    return retrieved->items[a].doc_id < retrieved->items[b].doc_id;
  }
};

void CheckCutoff(int k, std::size_t list_size, const std::string& query_id) {
  if (k < 0 || static_cast<std::size_t>(k) > list_size) {
    throw Error(ErrorCode::kCutoffOutOfRange,
                fmt::format("query {}: cut-off {} outside [0, {}]", query_id,
                            k, list_size));
  }
}

SweepRow SweepQuery(const RankedList& retrieved, const RankedList& reranked,
                    const QrelsSet& qrels, const MetricId& metric) {
  SweepRow row;
  try {
    const ListScorer scorer(metric, retrieved, qrels);
    const std::vector<double> scores = RerankerScores(retrieved, reranked);
    const RerankOrder less{&retrieved, &scores};
    const std::size_t n = retrieved.size();
    const std::size_t depth = std::min(scorer.depth(), n);
    std::vector<std::size_t> prefix;
    prefix.reserve(n);
    std::vector<std::size_t> window(depth);
    row.values.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) {
        const std::size_t added = k - 1;
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), added, less),
                      added);
      }
      const std::size_t from_prefix = std::min(k, depth);
      std::copy_n(prefix.begin(), from_prefix, window.begin());
      for (std::size_t i = from_prefix; i < depth; ++i) {
        window[i] = k + (i - from_prefix);
      }
      const MetricValue value = scorer.Score(window);
      row.values[k] = value.value;
      row.flagged = value.flagged;
    }
  } catch (const Error& e) {
    row.values.clear();
    row.error = e.what();
  }
  return row;
}

bool ParseDouble(std::string_view text, double& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool ParseInt(std::string_view text, int& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string> ResolveQueries(const std::vector<std::string>& given,
                                        std::vector<std::string> all) {
  std::vector<std::string> ids = given.empty() ? std::move(all) : given;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void FinishRow(EvaluationRow& row, const CostModel& cost) {
  double k_sum = 0.0;
  double metric_sum = 0.0;
  double latency_sum = 0.0;
  for (std::size_t i = 0; i < row.query_ids.size(); ++i) {
    k_sum += row.cutoffs[i];
    metric_sum += row.per_query_metric[i];
    latency_sum += cost.Latency(row.cutoffs[i]);
  }
  const auto n = static_cast<double>(row.query_ids.size());
  if (n > 0) {
    row.avg_k = k_sum / n;
    row.mean_metric = metric_sum / n;
    row.mean_latency = latency_sum / n;
  }
}

int LookupCutoff(const TruncationPrediction& prediction,
                 const std::string& query_id) {
  auto it = prediction.cutoffs.find(query_id);
  if (it == prediction.cutoffs.end()) {
    throw Error(ErrorCode::kMissingQuery,
                fmt::format("prediction '{}' has no cut-off for query {}",
                            prediction.method_name, query_id));
  }
  return it->second;
}

}  // namespace

RankedList ComposeAtK(const RankedList& retrieved, const RankedList& reranked,
                      int k) {
  CheckCutoff(k, retrieved.size(), retrieved.query_id);
  const std::vector<double> scores = RerankerScores(retrieved, reranked);
  std::vector<std::size_t> order(retrieved.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.begin() + k,
            RerankOrder{&retrieved, &scores});
  RankedList out;
  out.query_id = retrieved.query_id;
  out.items.reserve(order.size());
  const auto n = static_cast<int>(order.size());
  for (int i = 0; i < n; ++i) {
    // Scores of a composite list are rank-derived so list invariants hold.
    out.items.push_back(RankedItem{retrieved.items[order[i]].doc_id,
                                   static_cast<double>(n - i), i + 1});
  }
  return out;
}

const SweepRow& SweepMatrix::Row(const std::string& query_id) const {
  auto it = rows.find(query_id);
  if (it == rows.end()) {
    throw Error(ErrorCode::kMissingQuery,
                fmt::format("sweep has no row for query {}", query_id));
  }
  return it->second;
}

SweepMatrix Sweep(const RerankPair& pair, const QrelsSet& qrels,
                  const MetricId& metric, int threads) {
  const std::vector<std::string> ids = pair.QueryIds();
  std::vector<SweepRow> rows(ids.size());
  ParallelFor(ids.size(), threads, [&](std::size_t i) {
    rows[i] = SweepQuery(*pair.retrieved().Find(ids[i]),
                         *pair.reranked().Find(ids[i]), qrels, metric);
  });
  SweepMatrix sweep;
  sweep.metric = metric;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!rows[i].error.empty()) {
      spdlog::warn("sweep: query {} skipped: {}", ids[i], rows[i].error);
    }
    sweep.rows.emplace(ids[i], std::move(rows[i]));
  }
  return sweep;
}

int OracleCutoff(std::span<const double> sweep_row) {
  if (sweep_row.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "oracle cut-off of an empty sweep");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < sweep_row.size(); ++k) {
    if (sweep_row[k] > sweep_row[best]) best = k;
  }
  return static_cast<int>(best);
}

void WriteSweepCsv(const SweepMatrix& sweep, std::ostream& out) {
  out << "# metric=" << sweep.metric.Name() << "\n";
  out << "query_id,k,value\n";
  for (const auto& [query_id, row] : sweep.rows) {
    for (std::size_t k = 0; k < row.values.size(); ++k) {
      out << fmt::format("{},{},{:.17g}\n", query_id, k, row.values[k]);
    }
  }
}

SweepMatrix ReadSweepCsv(std::istream& in) {
  SweepMatrix sweep;
  std::string line;
  std::size_t line_no = 0;
  bool have_metric = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# metric=", 0) == 0) {
      sweep.metric = MetricId::Parse(line.substr(9));
      have_metric = true;
      continue;
    }
    if (line[0] == '#' || line == "query_id,k,value") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    int k = 0;
    double value = 0.0;
    std::string_view view(line);
    if (c2 == std::string::npos ||
        !ParseInt(view.substr(c1 + 1, c2 - c1 - 1), k) ||
        !ParseDouble(view.substr(c2 + 1), value)) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("sweep cache line {}", line_no));
    }
    auto& row = sweep.rows[line.substr(0, c1)];
    if (k != static_cast<int>(row.values.size())) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("sweep cache line {}: cut-off {} out of order",
                              line_no, k));
    }
    row.values.push_back(value);
  }
  if (!have_metric) {
    throw Error(ErrorCode::kMalformedLine, "sweep cache lacks '# metric=' line");
  }
  return sweep;
}

TruncationPrediction ReadPrediction(std::istream& in,
                                    const std::string& fallback_name) {
  TruncationPrediction prediction;
  prediction.method_name = fallback_name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("method=");
      if (pos != std::string::npos) prediction.method_name = line.substr(pos + 7);
      continue;
    }
    const auto tab = line.find('\t');
    int k = 0;
    if (tab == std::string::npos ||
        !ParseInt(std::string_view(line).substr(tab + 1), k) || k < 0) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("prediction line {}: expected query_id<TAB>k",
                              line_no));
    }
    prediction.cutoffs[line.substr(0, tab)] = k;
  }
  return prediction;
}

TruncationPrediction ReadPredictionFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  try {
    return ReadPrediction(in, path.stem().string());
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void WritePrediction(const TruncationPrediction& prediction, std::ostream& out) {
  out << "# method=" << prediction.method_name << "\n";
  for (const auto& [query_id, k] : prediction.cutoffs) {
    out << query_id << '\t' << k << '\n';
  }
}

EvaluationRow EvaluatePrediction(const TruncationPrediction& prediction,
                                 const RerankPair& pair, const QrelsSet& qrels,
                                 const MetricId& metric, const CostModel& cost,
                                 const std::vector<std::string>& query_ids) {
  EvaluationRow row;
  row.method = prediction.method_name;
  row.query_ids = ResolveQueries(query_ids, pair.QueryIds());
  for (const auto& query_id : row.query_ids) {
    const RankedList* retrieved = pair.retrieved().Find(query_id);
    if (retrieved == nullptr) {
      throw Error(ErrorCode::kMissingQuery,
                  fmt::format("query {} not in the run pair", query_id));
    }
    const int k = LookupCutoff(prediction, query_id);
    CheckCutoff(k, retrieved->size(), query_id);
    const RankedList composite =
        ComposeAtK(*retrieved, *pair.reranked().Find(query_id), k);
    row.cutoffs.push_back(k);
    row.per_query_metric.push_back(Evaluate(metric, composite, qrels).value);
  }
  FinishRow(row, cost);
  return row;
}

EvaluationRow EvaluatePrediction(const TruncationPrediction& prediction,
                                 const SweepMatrix& sweep,
                                 const CostModel& cost,
                                 const std::vector<std::string>& query_ids) {
  std::vector<std::string> all;
  for (const auto& [query_id, row] : sweep.rows) {
    if (row.error.empty()) all.push_back(query_id);
  }
  EvaluationRow row;
  row.method = prediction.method_name;
  row.query_ids = ResolveQueries(query_ids, std::move(all));
  for (const auto& query_id : row.query_ids) {
    const SweepRow& values = sweep.Row(query_id);
    if (!values.error.empty()) {
      throw Error(ErrorCode::kMissingQuery,
                  fmt::format("query {} has no sweep values: {}", query_id,
                              values.error));
    }
    const int k = LookupCutoff(prediction, query_id);
    CheckCutoff(k, values.values.size() - 1, query_id);
    row.cutoffs.push_back(k);
    row.per_query_metric.push_back(values.values[k]);
  }
  FinishRow(row, cost);
  return row;
}

TruncationPrediction OraclePrediction(const SweepMatrix& sweep) {
  TruncationPrediction prediction;
  prediction.method_name = "Oracle";
  for (const auto& [query_id, row] : sweep.rows) {
    if (!row.error.empty()) continue;
    prediction.cutoffs[query_id] = OracleCutoff(row.values);
  }
  return prediction;
}

}  // namespace rlt
