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

#ifndef RLT_EET_H_
#define RLT_EET_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rlt/corpus_io.h"
#include "rlt/metrics.h"
#include "rlt/rerank_sim.h"

namespace rlt {

// Effectiveness/efficiency trade-off: the weighted harmonic mean of the
// re-ranking gain and an exponentially decaying efficiency term.
struct EetConfig {
  double beta = 0.0;     // 0 = effectiveness only; larger favours efficiency
  double alpha = -0.001; // efficiency decay rate per re-ranked item, <= 0
  MetricId metric;       // effectiveness base, nDCG@10 by default

  void Validate() const;
};

// exp(alpha * k).
double EfficiencyDecay(int k, double alpha);

// sweep_row[k] - sweep_row[0].
double RerankGain(std::span<const double> sweep_row, int k);

// (1 + b^2) * g * s / (b^2 * s + g) with s clamped at 0 first; a
// non-positive gain yields 0. beta = 0 returns the clamped gain exactly.
double Eet(double sigma, double gamma, double beta);

struct TargetVector {
  EetConfig config;
  // t[k] for k = 0..|L|.
  std::map<std::string, std::vector<double>> targets;
};

TargetVector BuildTargets(const SweepMatrix& sweep, const EetConfig& config);
TargetVector BuildTargets(const RerankPair& pair, const QrelsSet& qrels,
                          const EetConfig& config);

// "# beta=<v> alpha=<v> metric=<name>" then "query_id t0 t1 ..." per line,
// 9 significant digits.
void WriteTargets(const TargetVector& targets, std::ostream& out);
TargetVector ReadTargets(std::istream& in);
TargetVector ReadTargetsFile(const std::filesystem::path& path);

}  // namespace rlt

#endif  // RLT_EET_H_
