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

#ifndef RLT_COMMANDS_H_
#define RLT_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rlt/config.h"
#include "rlt/corpus_io.h"
#include "rlt/report.h"

namespace rlt {

// Writes through a temporary sibling and renames it into place.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer);

struct LoadedPair {
  RerankPair pair;
  QrelsSet qrels;
};

// Retrieved run capped at list_depth; the re-ranked lists of capped queries
// are restricted to the surviving docs before pairing.
LoadedPair LoadPair(const ExperimentConfig& config);

// Fails with kIo when the cache has not been written yet.
SweepMatrix LoadSweepCache(const ExperimentConfig& config);

void RunSweep(const ExperimentConfig& config);

struct OracleSummary {
  int queries = 0;
  double mean_k = 0.0;
  double fraction_zero = 0.0;
  double mean_metric = 0.0;
};
OracleSummary RunOracle(const ExperimentConfig& config);

void RunTargets(const ExperimentConfig& config);

// Uses the target file of the preset with `beta` (first preset by default).
void RunFeatures(const ExperimentConfig& config, std::optional<double> beta);

struct TruncateOptions {
  std::string method;           // fixed-k | greedy-k | surprise
  std::optional<int> k;         // fixed-k; all config presets when absent
  std::optional<double> beta;   // greedy-k; all EET presets when absent
};
std::vector<std::filesystem::path> RunTruncate(const ExperimentConfig& config,
                                               const TruncateOptions& options);

// Prediction files default to every *.tsv in the predictions directory
// (natural name order) followed by the config's extra prediction files.
ReportTable RunEvaluate(const ExperimentConfig& config,
                        std::vector<std::filesystem::path> prediction_files = {});

void RunPlotData(const ExperimentConfig& config, bool svg);

// "a2" < "a10".
bool NaturalLess(const std::string& a, const std::string& b);

}  // namespace rlt

#endif  // RLT_COMMANDS_H_
