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
#include <functional>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "rlt/error.h"

namespace rlt {
namespace {

double Gain(int grade, GainMode mode) {
  if (mode == GainMode::kExponential) return std::exp2(grade) - 1.0;
  return static_cast<double>(grade);
}

double Discount(std::size_t position) {
  return std::log2(static_cast<double>(position) + 2.0);
}

void RequireCutoffWithinList(const MetricId& metric, std::size_t list_size) {
  if (metric.k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} needs k >= 1", metric.Name()));
  }
  if (metric.kind != MetricKind::kNdcg &&
      static_cast<std::size_t>(metric.k) > list_size) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} on a list of {} items", metric.Name(),
                            list_size));
  }
}

struct KindSpelling {
  MetricKind kind;
  std::string_view canonical;
  std::string_view short_form;
  std::string_view display;
};

constexpr KindSpelling kSpellings[] = {
    {MetricKind::kPrecision, "precision_at_k", "p", "P"},
    {MetricKind::kRecall, "recall_at_k", "recall", "R"},
    {MetricKind::kF1, "f1_at_k", "f1", "F1"},
    {MetricKind::kDcgPenalized, "dcg_penalized_at_k", "dcg", "DCG"},
    {MetricKind::kNdcg, "ndcg_at_k", "ndcg", "nDCG"},
    {MetricKind::kJudged, "judged_at_k", "judged", "judged"},
};

const KindSpelling& SpellingOf(MetricKind kind) {
  for (const auto& s : kSpellings) {
    if (s.kind == kind) return s;
  }
  return kSpellings[0];
}

}  // namespace

std::string_view MetricKindName(MetricKind kind) {
  return SpellingOf(kind).canonical;
}

std::string MetricId::Name() const {
  std::string name = fmt::format("{}@{}", SpellingOf(kind).canonical, k);
  if (kind == MetricKind::kNdcg && gain == GainMode::kExponential) {
    name += ":exp";
  }
  return name;
}

std::string MetricId::DisplayName() const {
  return fmt::format("{}@{}", SpellingOf(kind).display, k);
}

MetricId MetricId::Parse(std::string_view text) {
  MetricId id;
  std::string_view body = text;
  if (auto colon = body.find(':'); colon != std::string_view::npos) {
    std::string_view suffix = body.substr(colon + 1);
    if (suffix == "exp") {
      id.gain = GainMode::kExponential;
    } else if (suffix != "linear") {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("unknown gain '{}' in metric '{}'", suffix, text));
    }
    body = body.substr(0, colon);
  }
  auto at = body.find('@');
  if (at == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("metric '{}' lacks '@k'", text));
  }
  std::string_view name = body.substr(0, at);
  std::string digits(body.substr(at + 1));
  bool found = false;
  for (const auto& s : kSpellings) {
    if (name == s.canonical || name == s.short_form) {
      id.kind = s.kind;
      found = true;
      break;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("unknown metric '{}'", text));
  }
  std::size_t used = 0;
  try {
    id.k = std::stoi(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != digits.size() || id.k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bad cut-off in metric '{}'", text));
  }
  return id;
}

ListScorer::ListScorer(const MetricId& metric, const RankedList& list,
                       const QrelsSet& qrels)
    : metric_(metric), relevance_threshold_(qrels.relevance_threshold()) {
  RequireCutoffWithinList(metric, list.size());
  depth_ = static_cast<std::size_t>(metric.k);
  const QrelsSet::Judgments* judged = qrels.ForQuery(list.query_id);
  grades_.resize(list.size(), 0);
  judged_.resize(list.size(), 0);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (judged == nullptr) break;
    auto it = judged->find(list.items[i].doc_id);
    if (it == judged->end()) continue;
    grades_[i] = it->second;
    judged_[i] = 1;
    if (qrels.IsRelevantGrade(it->second)) ++relevant_in_list_;
  }
  if (metric.kind == MetricKind::kNdcg && judged != nullptr) {
    std::vector<int> ideal;
    ideal.reserve(judged->size());
    for (const auto& [doc, grade] : *judged) ideal.push_back(grade);
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    const std::size_t n = std::min(ideal.size(), depth_);
    for (std::size_t i = 0; i < n; ++i) {
      ideal_dcg_ += Gain(ideal[i], metric.gain) / Discount(i);
    }
  }
}

MetricValue ListScorer::Score(std::span<const std::size_t> order) const {
  const std::size_t n = std::min({depth_, grades_.size(), order.size()});
  const auto k = static_cast<double>(metric_.k);
  auto relevant_at = [&](std::size_t i) {
    return grades_[order[i]] >= relevance_threshold_;
  };
  switch (metric_.kind) {
    case MetricKind::kPrecision:
    case MetricKind::kRecall:
    case MetricKind::kF1: {
      int hits = 0;
      for (std::size_t i = 0; i < n; ++i) hits += relevant_at(i) ? 1 : 0;
      if (relevant_in_list_ == 0) {
        return {0.0, metric_.kind != MetricKind::kPrecision};
      }
      const double precision = hits / k;
      const double recall = static_cast<double>(hits) / relevant_in_list_;
      if (metric_.kind == MetricKind::kPrecision) return {precision, false};
      if (metric_.kind == MetricKind::kRecall) return {recall, false};
      if (precision + recall == 0.0) return {0.0, false};
      return {2.0 * precision * recall / (precision + recall), false};
    }
    case MetricKind::kDcgPenalized: {
      double dcg = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dcg += (relevant_at(i) ? 1.0 : -1.0) / Discount(i);
      }
      return {dcg, false};
    }
    case MetricKind::kNdcg: {
      if (ideal_dcg_ <= 0.0) return {0.0, true};
      double dcg = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dcg += Gain(grades_[order[i]], metric_.gain) / Discount(i);
      }
      return {dcg / ideal_dcg_, false};
    }
    case MetricKind::kJudged: {
      int judged = 0;
      for (std::size_t i = 0; i < n; ++i) judged += judged_[order[i]];
      return {judged / k, false};
    }
  }
  return {};
}

MetricValue Evaluate(const MetricId& metric, const RankedList& list,
                     const QrelsSet& qrels) {
  ListScorer scorer(metric, list, qrels);
  std::vector<std::size_t> order(list.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return scorer.Score(order);
}

double PrecisionAtK(const RankedList& list, const QrelsSet& qrels, int k) {
  return Evaluate({MetricKind::kPrecision, k}, list, qrels).value;
}

double RecallAtK(const RankedList& list, const QrelsSet& qrels, int k) {
  return Evaluate({MetricKind::kRecall, k}, list, qrels).value;
}

double F1AtK(const RankedList& list, const QrelsSet& qrels, int k) {
  return Evaluate({MetricKind::kF1, k}, list, qrels).value;
}

double DcgPenalizedAtK(const RankedList& list, const QrelsSet& qrels, int k) {
  return Evaluate({MetricKind::kDcgPenalized, k}, list, qrels).value;
}

double NdcgAtK(const RankedList& list, const QrelsSet& qrels, int k,
               GainMode gain) {
  return Evaluate({MetricKind::kNdcg, k, gain}, list, qrels).value;
}

double JudgedAtK(const RankedList& list, const QrelsSet& qrels, int k) {
  return Evaluate({MetricKind::kJudged, k}, list, qrels).value;
}

// --- Student t ------------------------------------------------------------

namespace {

// Continued fraction for I_x(a,b) (Numerical Recipes betacf form).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta needs a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(RegularizedIncompleteBeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b,
                        double level) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("paired samples of size {} and {}", a.size(),
                            b.size()));
  }
  const std::size_t n = a.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "paired t-test needs at least two pairs");
  }
  std::vector<double> diffs(n);
  for (std::size_t i = 0; i < n; ++i) diffs[i] = a[i] - b[i];
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double d : diffs) ss += (d - mean) * (d - mean);

  TTestResult result;
  result.degrees_of_freedom = static_cast<int>(n) - 1;
  const bool all_equal = std::all_of(diffs.begin(), diffs.end(),
                                     [&](double d) { return d == diffs[0]; });
  if (all_equal) {
    if (diffs[0] == 0.0) {
      result.flag = TTestResult::Flag::kAllEqual;
      result.t_statistic = 0.0;
      result.p_value = 1.0;
    } else {
      result.flag = TTestResult::Flag::kZeroVariance;
      result.t_statistic = std::copysign(
          std::numeric_limits<double>::infinity(), diffs[0]);
      result.p_value = 0.0;
    }
    result.significant = result.p_value < level;
    return result;
  }
  const double variance = ss / static_cast<double>(n - 1);
  const double std_error = std::sqrt(variance / static_cast<double>(n));
  result.t_statistic = mean / std_error;
  result.p_value =
      StudentTTwoSidedP(result.t_statistic, result.degrees_of_freedom);
  result.significant = result.p_value < level;
  return result;
}

}  // namespace rlt
