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

#ifndef RLT_REPORT_H_
#define RLT_REPORT_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlt/metrics.h"
#include "rlt/rerank_sim.h"

namespace rlt {

inline constexpr std::string_view kNoRerankingRow = "w/o re-ranking";
inline constexpr std::string_view kOracleRow = "Oracle";

struct ReportRow {
  EvaluationRow evaluation;
  // Aligned with ReportTable::baselines; empty optional when the row is the
  // baseline itself or the baseline is absent from the table.
  std::vector<std::optional<TTestResult>> versus;
};

struct ReportTable {
  std::string dataset;
  MetricId metric;
  std::string cost_label;
  std::vector<std::string> baselines;  // in marker order
  std::vector<ReportRow> rows;
};

// Marker for the i-th baseline: *, §, †, ‡, then #4, #5, ...
std::string SignificanceMarker(std::size_t baseline_index);

// Paired t-tests of every row against each named baseline row on the
// per-query metric values. Rows must share one query list.
ReportTable BuildReport(std::string dataset, const MetricId& metric,
                        std::string cost_label,
                        std::vector<EvaluationRow> rows,
                        const std::vector<std::string>& baselines,
                        double level = 0.05);

// method, avg_k, <metric name>, latency, then sig_vs_<baseline> booleans and
// p_vs_<baseline> values.
void WriteReportCsv(const ReportTable& table, std::ostream& out);
// Aligned columns: Method, Avg. k, <metric>, Lat. Markers suffix the metric.
void WriteReportText(const ReportTable& table, std::ostream& out);

}  // namespace rlt

#endif  // RLT_REPORT_H_
