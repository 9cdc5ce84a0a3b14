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

#include "rlt/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "rlt/error.h"

namespace rlt {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

template <typename T>
T Get(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    Invalid(fmt::format("config field '{}': {}", key, e.what()));
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::filesystem::path RequiredPath(const json& paths, const char* key,
                                   const std::filesystem::path& base,
                                   bool must_exist) {
  if (!paths.contains(key) || !paths.at(key).is_string()) {
    Invalid(fmt::format("config paths.{} is required", key));
  }
  auto p = Resolve(base, paths.at(key).get<std::string>());
  if (must_exist && !std::filesystem::exists(p)) {
    Invalid(fmt::format("config paths.{}: {} does not exist", key, p.string()));
  }
  return p;
}

std::string NumberTag(double v) { return fmt::format("{}", v); }

}  // namespace

std::filesystem::path ExperimentConfig::SweepCachePath() const {
  return paths.output_dir / "sweep.csv";
}
std::filesystem::path ExperimentConfig::OracleDir() const {
  return paths.output_dir / "oracle";
}
std::filesystem::path ExperimentConfig::TargetsDir() const {
  return paths.output_dir / "targets";
}
std::filesystem::path ExperimentConfig::FeaturesDir() const {
  return paths.output_dir / "features";
}
std::filesystem::path ExperimentConfig::PredictionsDir() const {
  return paths.output_dir / "predictions";
}
std::filesystem::path ExperimentConfig::DiagnosticsDir() const {
  return paths.output_dir / "diagnostics";
}
std::filesystem::path ExperimentConfig::ReportDir() const {
  return paths.output_dir / "report";
}
std::filesystem::path ExperimentConfig::PlotsDir() const {
  return paths.output_dir / "plots";
}

std::filesystem::path ExperimentConfig::TargetPath(const EetPreset& preset) const {
  return TargetsDir() / fmt::format("eet_beta{}_alpha{}.txt",
                                    NumberTag(preset.beta), NumberTag(preset.alpha));
}

EetConfig ExperimentConfig::EetFor(const EetPreset& preset) const {
  return EetConfig{preset.beta, preset.alpha, metric};
}

const EetPreset& ExperimentConfig::PresetForBeta(double beta) const {
  for (const auto& p : eet_presets) {
    if (p.beta == beta) return p;
  }
  throw Error(ErrorCode::kConfig,
              fmt::format("no EET preset with beta={} in the config", beta));
}

ExperimentConfig ParseConfig(const std::string& json_text,
                             const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    Invalid(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) Invalid("config must be a JSON object");
  const int version = Get<int>(root, "schema_version", -1);
  if (version != kConfigSchemaVersion) {
    Invalid(fmt::format("config schema_version must be {}, got {}",
                        kConfigSchemaVersion, version));
  }

  ExperimentConfig config;
  config.dataset = Get<std::string>(root, "dataset", config.dataset);
  if (!root.contains("paths") || !root["paths"].is_object()) {
    Invalid("config needs a 'paths' object");
  }
  const json& paths = root["paths"];
  config.paths.retrieved_run = RequiredPath(paths, "retrieved_run", base_dir, true);
  config.paths.reranked_run = RequiredPath(paths, "reranked_run", base_dir, true);
  config.paths.qrels = RequiredPath(paths, "qrels", base_dir, true);
  config.paths.output_dir = RequiredPath(paths, "output_dir", base_dir, false);
  if (paths.contains("corpus")) {
    config.paths.corpus = RequiredPath(paths, "corpus", base_dir, true);
  }
  if (paths.contains("embeddings")) {
    config.paths.embeddings = RequiredPath(paths, "embeddings", base_dir, true);
  }
  for (const auto& extra : Get<std::vector<std::string>>(paths, "extra_predictions", {})) {
    auto p = Resolve(base_dir, extra);
    if (!std::filesystem::exists(p)) {
      Invalid(fmt::format("config paths.extra_predictions: {} does not exist", p.string()));
    }
    config.paths.extra_predictions.push_back(p);
  }

  try {
    config.metric = MetricId::Parse(Get<std::string>(root, "metric", "ndcg@10"));
    const std::string gain = Get<std::string>(root, "gain", "linear");
    if (gain == "exponential") {
      config.metric.gain = GainMode::kExponential;
    } else if (gain != "linear") {
      Invalid(fmt::format("config gain must be 'linear' or 'exponential', got '{}'", gain));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    Invalid(e.what());
  }

  config.relevance_threshold = Get<int>(root, "relevance_threshold", 2);
  if (config.relevance_threshold < 1) Invalid("relevance_threshold must be >= 1");
  config.list_depth = Get<int>(root, "list_depth", 1000);
  if (config.list_depth < 1) Invalid("list_depth must be >= 1");

  if (root.contains("eet_presets")) {
    config.eet_presets.clear();
    for (const auto& p : root["eet_presets"]) {
      EetPreset preset{Get<double>(p, "beta", 0.0), Get<double>(p, "alpha", -0.001)};
      if (!(preset.beta >= 0.0) || !(preset.alpha <= 0.0)) {
        Invalid(fmt::format("EET preset beta={} alpha={} out of range",
                            preset.beta, preset.alpha));
      }
      config.eet_presets.push_back(preset);
    }
  }
  if (config.eet_presets.empty()) Invalid("eet_presets must not be empty");

  if (root.contains("cost_model")) {
    const json& cost = root["cost_model"];
    config.cost_model_name = Get<std::string>(cost, "name", "llm");
    CostModel preset = config.cost_model_name == "plm" ? CostModel::PlmReranker()
                                                      : CostModel::LlmReranker();
    config.cost_model.per_item_latency =
        Get<double>(cost, "per_item_latency", preset.per_item_latency);
    config.cost_model.fixed_overhead = Get<double>(cost, "fixed_overhead", 0.0);
    if (!(config.cost_model.per_item_latency >= 0.0) ||
        !(config.cost_model.fixed_overhead >= 0.0)) {
      Invalid("cost_model latencies must be >= 0");
    }
  }

  config.fixed_k = Get<std::vector<int>>(root, "fixed_k", config.fixed_k);
  for (int k : config.fixed_k) {
    if (k < 0) Invalid("fixed_k entries must be >= 0");
  }
  config.baselines = Get<std::vector<std::string>>(root, "baselines", config.baselines);

  if (root.contains("split")) {
    config.train_fraction = Get<double>(root["split"], "train_fraction", 0.5);
  }
  if (!(config.train_fraction >= 0.0 && config.train_fraction < 1.0)) {
    Invalid("split.train_fraction must lie in [0, 1)");
  }

  if (root.contains("surprise")) {
    const json& s = root["surprise"];
    SurpriseConfig& sc = config.surprise;
    sc.candidate_threshold_quantiles = Get<std::vector<double>>(
        s, "candidate_threshold_quantiles", sc.candidate_threshold_quantiles);
    sc.cvm_acceptance_level = Get<double>(s, "cvm_acceptance_level", sc.cvm_acceptance_level);
    sc.calibrated_cut_probability =
        Get<double>(s, "calibrated_cut_probability", sc.calibrated_cut_probability);
    sc.min_exceedances = Get<int>(s, "min_exceedances", sc.min_exceedances);
  }
  try {
    config.surprise.Validate();
  } catch (const Error& e) {
    Invalid(e.what());
  }

  config.frontier_grid = Get<std::vector<int>>(root, "frontier_grid", {});
  if (config.frontier_grid.empty()) {
    for (int i = 0; i <= 20; ++i) {
      config.frontier_grid.push_back(config.list_depth * i / 20);
    }
  }
  for (int k : config.frontier_grid) {
    if (k < 0) Invalid("frontier_grid entries must be >= 0");
  }
  config.threads = Get<int>(root, "threads", 1);
  if (config.threads < 1) Invalid("threads must be >= 1");
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Invalid(fmt::format("cannot read config {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

QuerySplit SplitQueries(std::vector<std::string> query_ids,
                        double train_fraction) {
  std::sort(query_ids.begin(), query_ids.end());
  QuerySplit split;
  const auto n_train = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(query_ids.size())));
  if (n_train == 0 || n_train >= query_ids.size()) {
    split.train = query_ids;
    split.test = query_ids;
    return split;
  }
  split.train.assign(query_ids.begin(), query_ids.begin() + n_train);
  split.test.assign(query_ids.begin() + n_train, query_ids.end());
  return split;
}

}  // namespace rlt
