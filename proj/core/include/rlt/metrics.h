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

#ifndef RLT_METRICS_H_
#define RLT_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlt/corpus_io.h"

namespace rlt {

enum class MetricKind {
  kPrecision,
  kRecall,
  kF1,
  kDcgPenalized,
  kNdcg,
  kJudged,
};

// Gain function for nDCG. Linear (gain = grade) matches trec_eval.
enum class GainMode { kLinear, kExponential };

struct MetricId {
  MetricKind kind = MetricKind::kNdcg;
  int k = 10;
  GainMode gain = GainMode::kLinear;

  // "ndcg_at_k@10"; exponential gain appends ":exp".
  std::string Name() const;
  // "nDCG@10" style label for human-readable tables.
  std::string DisplayName() const;
  // Accepts Name() output and the short forms "ndcg@10", "f1@5", ...
  static MetricId Parse(std::string_view text);

  friend bool operator==(const MetricId&, const MetricId&) = default;
};

std::string_view MetricKindName(MetricKind kind);

struct MetricValue {
  double value = 0.0;
  // Set when the value is defined only by convention: no relevant document
  // in the list (F1, recall) or no judged relevant document (nDCG).
  bool flagged = false;
};

// Scores orderings of one fixed document list. Per-document grades are
// looked up once, so repeated scoring (as in a cut-off sweep) only walks
// positions. All list-level functions below route through this class.
class ListScorer {
 public:
  ListScorer(const MetricId& metric, const RankedList& list,
             const QrelsSet& qrels);

  // `order` holds positions into the list the scorer was built on, best
  // first. Only the first depth() entries are consulted; `order` must cover
  // min(depth(), list size) positions.
  MetricValue Score(std::span<const std::size_t> order) const;

  // Number of leading positions the metric looks at.
  std::size_t depth() const { return depth_; }
  std::size_t list_size() const { return grades_.size(); }

 private:
  MetricId metric_;
  std::size_t depth_;
  std::vector<int> grades_;     // 0 for unjudged
  std::vector<char> judged_;
  int relevance_threshold_;
  int relevant_in_list_ = 0;
  double ideal_dcg_ = 0.0;
};

MetricValue Evaluate(const MetricId& metric, const RankedList& list,
                     const QrelsSet& qrels);

// Precondition for the cut-off metrics below (except nDCG): 1 <= k <= |list|,
// otherwise kInvalidArgument.
double PrecisionAtK(const RankedList& list, const QrelsSet& qrels, int k);
double RecallAtK(const RankedList& list, const QrelsSet& qrels, int k);
double F1AtK(const RankedList& list, const QrelsSet& qrels, int k);
double DcgPenalizedAtK(const RankedList& list, const QrelsSet& qrels, int k);
double NdcgAtK(const RankedList& list, const QrelsSet& qrels, int k,
               GainMode gain = GainMode::kLinear);
double JudgedAtK(const RankedList& list, const QrelsSet& qrels, int k);

struct TTestResult {
  enum class Flag { kNone, kZeroVariance, kAllEqual };

  double t_statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 0;
  bool significant = false;
  Flag flag = Flag::kNone;
};

// Two-sided paired t-test on a[i] - b[i].
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b,
                        double level = 0.05);

// I_x(a, b). Continued fraction evaluated with the modified Lentz method,
// switching to the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) when
// x > (a+1)/(a+b+2) so the fraction converges quickly. Relative accuracy is
// about 1e-14, comfortably inside the 1e-10 needed for p-values.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double StudentTTwoSidedP(double t, double df);

}  // namespace rlt

#endif  // RLT_METRICS_H_
