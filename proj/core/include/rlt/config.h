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

#ifndef RLT_CONFIG_H_
#define RLT_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rlt/eet.h"
#include "rlt/metrics.h"
#include "rlt/rerank_sim.h"
#include "rlt/truncators.h"

namespace rlt {

inline constexpr int kConfigSchemaVersion = 1;

struct ExperimentPaths {
  std::filesystem::path retrieved_run;
  std::filesystem::path reranked_run;
  std::filesystem::path qrels;
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> embeddings;
  std::filesystem::path output_dir;
  // Prediction files produced elsewhere (e.g. by a trained model) that
  // evaluate and plotdata include by default.
  std::vector<std::filesystem::path> extra_predictions;
};

struct EetPreset {
  double beta = 0.0;
  double alpha = -0.001;
};

// One JSON document. Relative paths resolve against the config file's
// directory. See README for the full schema.
struct ExperimentConfig {
  std::string dataset = "dataset";
  ExperimentPaths paths;
  MetricId metric;
  int relevance_threshold = 2;
  int list_depth = 1000;
  std::vector<EetPreset> eet_presets = {{0.0, -0.001}, {1.0, -0.001}, {2.0, -0.001}};
  std::string cost_model_name = "llm";
  CostModel cost_model = CostModel::LlmReranker();
  std::vector<int> fixed_k = {10, 20, 100, 200, 1000};
  std::vector<std::string> baselines = {"Fixed-k (100)", "Fixed-k (200)",
                                        "Fixed-k (1000)"};
  // Leading share of the sorted query ids used for training (Greedy-k).
  // 0 trains and evaluates on every query.
  double train_fraction = 0.5;
  SurpriseConfig surprise;
  std::vector<int> frontier_grid;  // defaults to 0..list_depth in 20 steps
  int threads = 1;

  // Derived output locations.
  std::filesystem::path SweepCachePath() const;
  std::filesystem::path OracleDir() const;
  std::filesystem::path TargetsDir() const;
  std::filesystem::path FeaturesDir() const;
  std::filesystem::path PredictionsDir() const;
  std::filesystem::path DiagnosticsDir() const;
  std::filesystem::path ReportDir() const;
  std::filesystem::path PlotsDir() const;
  std::filesystem::path TargetPath(const EetPreset& preset) const;
  EetConfig EetFor(const EetPreset& preset) const;
  const EetPreset& PresetForBeta(double beta) const;
};

// Parses and validates (paths must exist, values in range). Every problem
// raises Error(kConfig) before any computation starts.
ExperimentConfig LoadConfig(const std::filesystem::path& path);
ExperimentConfig ParseConfig(const std::string& json_text,
                             const std::filesystem::path& base_dir);

// Sorted ids split into a training prefix and an evaluation remainder.
struct QuerySplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
};
QuerySplit SplitQueries(std::vector<std::string> query_ids,
                        double train_fraction);

}  // namespace rlt

#endif  // RLT_CONFIG_H_
