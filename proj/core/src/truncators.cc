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

#include "rlt/truncators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include "json.hpp"

#include "rlt/error.h"
#include "rlt/parallel.h"

namespace rlt {
namespace {

// Linear interpolation between order statistics (R type 7).
double Quantile(const std::vector<double>& ascending, double q) {
  const double h = (static_cast<double>(ascending.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= ascending.size()) return ascending.back();
  return ascending[lo] + (h - static_cast<double>(lo)) *
                             (ascending[lo + 1] - ascending[lo]);
}

}  // namespace

TruncationPrediction FixedK(const RunSet& retrieved, int k) {
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("fixed cut-off must be >= 0, got {}", k));
  }
  return GreedyKPrediction(retrieved, k, fmt::format("Fixed-k ({})", k));
}

TruncationPrediction GreedyKPrediction(const RunSet& retrieved, int k,
                                       std::string method_name) {
  TruncationPrediction prediction;
  prediction.method_name = std::move(method_name);
  for (const auto& [query_id, list] : retrieved.lists) {
    prediction.cutoffs[query_id] =
        std::min(k, static_cast<int>(list.size()));
  }
  return prediction;
}

int GreedyK(const TargetVector& train_targets,
            const std::vector<std::string>& query_ids) {
  std::vector<const std::vector<double>*> rows;
  if (query_ids.empty()) {
    for (const auto& [query_id, t] : train_targets.targets) rows.push_back(&t);
  } else {
    std::vector<std::string> ids = query_ids;
    std::sort(ids.begin(), ids.end());
    for (const auto& query_id : ids) {
      auto it = train_targets.targets.find(query_id);
      if (it == train_targets.targets.end()) {
        throw Error(ErrorCode::kMissingQuery,
                    fmt::format("no targets for training query {}", query_id));
      }
      rows.push_back(&it->second);
    }
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const auto* t) { return t->empty(); }),
             rows.end());
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyTraining, "Greedy-k needs training targets");
  }
  std::size_t max_len = 0;
  for (const auto* t : rows) max_len = std::max(max_len, t->size());
  int best_k = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < max_len; ++k) {
    double sum = 0.0;
    for (const auto* t : rows) sum += (*t)[std::min(k, t->size() - 1)];
    const double mean = sum / static_cast<double>(rows.size());
    if (mean > best_mean) {
      best_mean = mean;
      best_k = static_cast<int>(k);
    }
  }
  return best_k;
}

void SurpriseConfig::Validate() const {
  if (candidate_threshold_quantiles.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "Surprise needs candidate quantiles");
  }
  for (std::size_t i = 0; i < candidate_threshold_quantiles.size(); ++i) {
    const double q = candidate_threshold_quantiles[i];
    if (!(q > 0.0 && q < 1.0) ||
        (i > 0 && !(q > candidate_threshold_quantiles[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "Surprise quantiles must be strictly increasing in (0, 1)");
    }
  }
  if (!(calibrated_cut_probability > 0.0 && calibrated_cut_probability < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Surprise cut probability must lie in (0, 1)");
  }
  if (!(cvm_acceptance_level > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Surprise CvM acceptance level must be > 0");
  }
  if (min_exceedances < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "Surprise needs min_exceedances >= 2");
  }
}

SurpriseResult SurpriseTruncate(const RankedList& list,
                                const SurpriseConfig& config) {
  config.Validate();
  const std::size_t n = list.size();
  if (n < static_cast<std::size_t>(config.min_exceedances)) {
    throw Error(ErrorCode::kTooFewSamples,
                fmt::format("query {}: {} items, Surprise needs {}",
                            list.query_id, n, config.min_exceedances));
  }
  std::vector<double> ascending;
  ascending.reserve(n);
  for (const auto& item : list.items) ascending.push_back(item.score);
  std::sort(ascending.begin(), ascending.end());

  GpdFitOptions fit_options;
  fit_options.min_exceedances = config.min_exceedances;

  SurpriseResult result;
  for (double q : config.candidate_threshold_quantiles) {
    const double u = Quantile(ascending, q);
    std::vector<double> exceedances;
    for (double s : ascending) {
      if (s > u) exceedances.push_back(s - u);
    }
    if (static_cast<int>(exceedances.size()) < config.min_exceedances) continue;
    GpdFit fit;
    try {
      fit = FitGpd(exceedances, fit_options);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerateSample ||
          e.code() == ErrorCode::kTooFewSamples) {
        continue;
      }
      throw;
    }
    fit.threshold_u = u;
    if (fit.cvm_statistic <= config.cvm_acceptance_level) {
      result.fit = fit;
      break;
    }
  }

  if (!result.fit) {
    result.no_acceptable_fit = true;
    result.k = static_cast<int>(n);
    return result;
  }
  const GpdFit& fit = *result.fit;
  result.calibrated.reserve(n);
  for (const auto& item : list.items) {
    const double excess = item.score - fit.threshold_u;
    result.calibrated.push_back(
        excess > 0.0 ? GpdCdf(excess, fit.shape_xi, fit.scale) : 0.0);
  }
  int k = 0;
  while (k < static_cast<int>(n) &&
         result.calibrated[k] >= config.calibrated_cut_probability) {
    ++k;
  }
  result.k = std::max(k, 1);
  return result;
}

TruncationPrediction SurprisePrediction(const RunSet& retrieved,
                                        const SurpriseConfig& config,
                                        std::ostream* diagnostics,
                                        int threads) {
  config.Validate();
  std::vector<const RankedList*> lists;
  for (const auto& [query_id, list] : retrieved.lists) lists.push_back(&list);
  std::vector<SurpriseResult> results(lists.size());
  ParallelFor(lists.size(), threads, [&](std::size_t i) {
    if (lists[i]->size() < static_cast<std::size_t>(config.min_exceedances)) {
      results[i].k = static_cast<int>(lists[i]->size());
      results[i].no_acceptable_fit = true;
      return;
    }
    results[i] = SurpriseTruncate(*lists[i], config);
  });

  TruncationPrediction prediction;
  prediction.method_name = "Surprise";
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const SurpriseResult& r = results[i];
    prediction.cutoffs[lists[i]->query_id] = r.k;
    if (diagnostics == nullptr) continue;
    nlohmann::ordered_json record;
    record["query_id"] = lists[i]->query_id;
    record["k"] = r.k;
    record["no_acceptable_fit"] = r.no_acceptable_fit;
    if (r.fit) {
      record["threshold_u"] = r.fit->threshold_u;
      record["shape_xi"] = r.fit->shape_xi;
      record["scale"] = r.fit->scale;
      record["n_exceedances"] = r.fit->n_exceedances;
      record["cvm_statistic"] = r.fit->cvm_statistic;
      record["log_likelihood"] = r.fit->log_likelihood;
    }
    *diagnostics << record.dump() << '\n';
  }
  return prediction;
}

}  // namespace rlt
