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

#include "rlt/report.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rlt/error.h"

namespace rlt {
namespace {

// Display width of a UTF-8 string, one column per codepoint.
std::size_t Width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string PadRight(const std::string& s, std::size_t width) {
  return s + std::string(width - std::min(width, Width(s)), ' ');
}

std::string PadLeft(const std::string& s, std::size_t width) {
  return std::string(width - std::min(width, Width(s)), ' ') + s;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string SignificanceMarker(std::size_t baseline_index) {
  static const char* kMarkers[] = {"*", "§", "†", "‡"};
  if (baseline_index < std::size(kMarkers)) return kMarkers[baseline_index];
  return fmt::format("#{}", baseline_index);
}

ReportTable BuildReport(std::string dataset, const MetricId& metric,
                        std::string cost_label,
                        std::vector<EvaluationRow> rows,
                        const std::vector<std::string>& baselines,
                        double level) {
  ReportTable table;
  table.dataset = std::move(dataset);
  table.metric = metric;
  table.cost_label = std::move(cost_label);
  table.baselines = baselines;

  std::vector<const EvaluationRow*> baseline_rows;
  for (const auto& name : baselines) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const EvaluationRow& r) { return r.method == name; });
    if (it == rows.end()) {
      spdlog::warn("significance baseline '{}' is not among the evaluated rows",
                   name);
      baseline_rows.push_back(nullptr);
    } else {
      baseline_rows.push_back(&*it);
    }
  }
  for (const auto& row : rows) {
    ReportRow out;
    out.evaluation = row;
    for (const EvaluationRow* base : baseline_rows) {
      if (base == nullptr || base->method == row.method) {
        out.versus.emplace_back();
        continue;
      }
      if (base->query_ids != row.query_ids) {
        throw Error(ErrorCode::kMissingQuery,
                    fmt::format("rows '{}' and '{}' cover different queries",
                                row.method, base->method));
      }
      out.versus.emplace_back(
          PairedTTest(row.per_query_metric, base->per_query_metric, level));
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

void WriteReportCsv(const ReportTable& table, std::ostream& out) {
  out << "method,avg_k," << table.metric.Name() << ",latency";
  for (const auto& b : table.baselines) out << ',' << CsvField("sig_vs_" + b);
  for (const auto& b : table.baselines) out << ',' << CsvField("p_vs_" + b);
  out << '\n';
  for (const auto& row : table.rows) {
    const EvaluationRow& e = row.evaluation;
    out << fmt::format("{},{:.6f},{:.6f},{:.6f}", CsvField(e.method), e.avg_k,
                       e.mean_metric, e.mean_latency);
    for (const auto& v : row.versus) {
      out << ',' << (v && v->significant ? "true" : "false");
    }
    for (const auto& v : row.versus) {
      out << ',';
      if (v) out << fmt::format("{:.6g}", v->p_value);
    }
    out << '\n';
  }
}

void WriteReportText(const ReportTable& table, std::ostream& out) {
  const std::vector<std::string> header = {"Method", "Avg. k",
                                           table.metric.DisplayName(), "Lat."};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : table.rows) {
    const EvaluationRow& e = row.evaluation;
    std::string marks;
    for (std::size_t b = 0; b < row.versus.size(); ++b) {
      if (row.versus[b] && row.versus[b]->significant) marks += SignificanceMarker(b);
    }
    cells.push_back({e.method, fmt::format("{:.0f}", e.avg_k),
                     fmt::format("{:.3f}{}", e.mean_metric, marks),
                     fmt::format("{:.2f}", e.mean_latency)});
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = Width(header[c]);
    for (const auto& r : cells) widths[c] = std::max(widths[c], Width(r[c]));
  }
  out << fmt::format("Dataset: {}  Metric: {}  Cost model: {}\n", table.dataset,
                     table.metric.DisplayName(), table.cost_label);
  auto emit = [&](const std::vector<std::string>& r) {
    out << PadRight(r[0], widths[0]) << "  " << PadLeft(r[1], widths[1]) << "  "
        << PadRight(r[2], widths[2]) << "  " << PadLeft(r[3], widths[3]) << '\n';
  };
  emit(header);
  std::size_t total = widths[0] + widths[1] + widths[2] + widths[3] + 6;
  out << std::string(total, '-') << '\n';
  for (const auto& r : cells) emit(r);
  if (!table.baselines.empty()) {
    out << "Significant differences (paired t-test, p < 0.05):";
    for (std::size_t b = 0; b < table.baselines.size(); ++b) {
      out << ' ' << SignificanceMarker(b) << " vs " << table.baselines[b]
          << (b + 1 < table.baselines.size() ? ";" : "");
    }
    out << '\n';
  }
}

}  // namespace rlt
