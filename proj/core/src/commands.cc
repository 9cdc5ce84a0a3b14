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

#include "rlt/commands.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include "json.hpp"

#include "rlt/eet.h"
#include "rlt/error.h"
#include "rlt/features.h"
#include "rlt/plotdata.h"
#include "rlt/rerank_sim.h"
#include "rlt/truncators.h"

namespace rlt {
namespace {

std::string TextOf(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  WriteFileAtomically(path, [&](std::ostream& out) { out << text; });
}

std::vector<std::string> SweepQueries(const SweepMatrix& sweep) {
  std::vector<std::string> ids;
  for (const auto& [query_id, row] : sweep.rows) {
    if (row.error.empty()) ids.push_back(query_id);
  }
  return ids;
}

// Fixed cut-off over the lists of a sweep (depth = row length - 1).
TruncationPrediction FixedOnSweep(const SweepMatrix& sweep, int k,
                                  std::string name) {
  TruncationPrediction p;
  p.method_name = std::move(name);
  for (const auto& [query_id, row] : sweep.rows) {
    if (!row.error.empty()) continue;
    p.cutoffs[query_id] = std::min(k, static_cast<int>(row.values.size()) - 1);
  }
  return p;
}

std::string CostLabel(const ExperimentConfig& config) {
  return fmt::format("{} ({} s/item)", config.cost_model_name,
                     config.cost_model.per_item_latency);
}

std::vector<std::filesystem::path> DefaultPredictionFiles(
    const ExperimentConfig& config) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(config.PredictionsDir())) {
    for (const auto& entry :
         std::filesystem::directory_iterator(config.PredictionsDir())) {
      if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return NaturalLess(a.filename().string(), b.filename().string());
  });
  files.insert(files.end(), config.paths.extra_predictions.begin(),
               config.paths.extra_predictions.end());
  return files;
}

// w/o re-ranking, one row per prediction file, Oracle; on the test split.
std::vector<EvaluationRow> EvaluateAll(
    const ExperimentConfig& config, const SweepMatrix& sweep,
    const std::vector<std::filesystem::path>& prediction_files,
    std::vector<TruncationPrediction>* predictions_out) {
  const QuerySplit split = SplitQueries(SweepQueries(sweep), config.train_fraction);
  std::vector<EvaluationRow> rows;
  rows.push_back(EvaluatePrediction(
      FixedOnSweep(sweep, 0, std::string(kNoRerankingRow)), sweep,
      config.cost_model, split.test));
  for (const auto& file : prediction_files) {
    TruncationPrediction prediction = ReadPredictionFile(file);
    try {
      rows.push_back(
          EvaluatePrediction(prediction, sweep, config.cost_model, split.test));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", file.string(), e.what()));
    }
    if (predictions_out != nullptr) predictions_out->push_back(std::move(prediction));
  }
  rows.push_back(EvaluatePrediction(OraclePrediction(sweep), sweep,
                                    config.cost_model, split.test));
  return rows;
}

}  // namespace

bool NaturalLess(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i);
      std::string nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo, fmt::format("cannot write {}", tmp.string()));
    }
    writer(out);
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo, fmt::format("write to {} failed", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path);
}

LoadedPair LoadPair(const ExperimentConfig& config) {
  RunSet retrieved = ParseRunFile(
      config.paths.retrieved_run,
      ParseRunOptions{static_cast<std::size_t>(config.list_depth)});
  RunSet reranked = ParseRunFile(config.paths.reranked_run, ParseRunOptions{0});
  if (!retrieved.truncated_queries.empty()) {
    RunSet capped;
    for (const auto& q : retrieved.truncated_queries) {
      capped.lists.emplace(q, retrieved.lists.at(q));
    }
    RunSet restricted = RestrictToDocs(reranked, capped);
    for (const auto& q : retrieved.truncated_queries) {
      if (restricted.lists.count(q)) reranked.lists[q] = restricted.lists.at(q);
    }
  }
  QrelsSet qrels = ParseQrelsFile(config.paths.qrels, config.relevance_threshold);
  return LoadedPair{PairRuns(retrieved, reranked), std::move(qrels)};
}

SweepMatrix LoadSweepCache(const ExperimentConfig& config) {
  const auto path = config.SweepCachePath();
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo,
                fmt::format("sweep cache {} missing; run the sweep command first",
                            path.string()));
  }
  SweepMatrix sweep = ReadSweepCsv(in);
  if (!(sweep.metric == config.metric)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("sweep cache holds {} but the config asks for {}",
                            sweep.metric.Name(), config.metric.Name()));
  }
  return sweep;
}

void RunSweep(const ExperimentConfig& config) {
  const LoadedPair data = LoadPair(config);
  const SweepMatrix sweep =
      Sweep(data.pair, data.qrels, config.metric, config.threads);
  WriteFileAtomically(config.SweepCachePath(),
                      [&](std::ostream& out) { WriteSweepCsv(sweep, out); });
  spdlog::info("sweep: {} queries -> {}", sweep.rows.size(),
               config.SweepCachePath().string());
}

OracleSummary RunOracle(const ExperimentConfig& config) {
  const SweepMatrix sweep = LoadSweepCache(config);
  const TruncationPrediction oracle = OraclePrediction(sweep);
  WriteFileAtomically(config.OracleDir() / "oracle.tsv",
                      [&](std::ostream& out) { WritePrediction(oracle, out); });
  WriteFileAtomically(config.OracleDir() / "oracle_cdf.csv", [&](std::ostream& out) {
    out << "k,fraction\n";
    for (const auto& p : CutoffCdf(oracle)) {
      out << fmt::format("{},{:.6f}\n", p.k, p.fraction);
    }
  });

  const EvaluationRow row = EvaluatePrediction(oracle, sweep, config.cost_model);
  OracleSummary summary;
  summary.queries = static_cast<int>(row.query_ids.size());
  summary.mean_k = row.avg_k;
  summary.mean_metric = row.mean_metric;
  int zeros = 0;
  for (int k : row.cutoffs) zeros += k == 0 ? 1 : 0;
  summary.fraction_zero = summary.queries > 0
                              ? static_cast<double>(zeros) / summary.queries
                              : 0.0;
  nlohmann::ordered_json j;
  j["queries"] = summary.queries;
  j["metric"] = sweep.metric.Name();
  j["mean_oracle_k"] = summary.mean_k;
  j["fraction_k_zero"] = summary.fraction_zero;
  j["mean_metric_at_oracle"] = summary.mean_metric;
  WriteText(config.OracleDir() / "summary.json", j.dump(2) + "\n");
  spdlog::info("oracle: {} queries, mean k {:.1f}, {:.1f}% need no re-ranking",
               summary.queries, summary.mean_k, 100.0 * summary.fraction_zero);
  return summary;
}

void RunTargets(const ExperimentConfig& config) {
  const SweepMatrix sweep = LoadSweepCache(config);
  for (const auto& preset : config.eet_presets) {
    const TargetVector targets = BuildTargets(sweep, config.EetFor(preset));
    WriteFileAtomically(config.TargetPath(preset),
                        [&](std::ostream& out) { WriteTargets(targets, out); });
    spdlog::info("targets: beta={} alpha={} -> {}", preset.beta, preset.alpha,
                 config.TargetPath(preset).string());
  }
}

void RunFeatures(const ExperimentConfig& config, std::optional<double> beta) {
  if (!config.paths.corpus) {
    throw Error(ErrorCode::kConfig, "features needs paths.corpus in the config");
  }
  const EetPreset& preset =
      beta ? config.PresetForBeta(*beta) : config.eet_presets.front();
  const LoadedPair data = LoadPair(config);
  const Corpus corpus = ParseCorpusFile(*config.paths.corpus);
  const TfidfVectorizer vectorizer = TfidfVectorizer::Build(corpus);
  const TargetVector targets = ReadTargetsFile(config.TargetPath(preset));
  std::optional<EmbeddingStore> embeddings;
  if (config.paths.embeddings) {
    embeddings = ReadEmbeddingsFile(*config.paths.embeddings);
  }
  const std::vector<FeatureList> lists =
      BuildFeatureLists(data.pair, corpus, vectorizer, data.qrels, &targets,
                        embeddings ? &*embeddings : nullptr, config.threads);
  const auto path =
      config.FeaturesDir() / fmt::format("features_beta{}.jsonl", preset.beta);
  WriteFileAtomically(path, [&](std::ostream& out) {
    WriteFeaturesJsonl(lists, vectorizer, &targets, embeddings.has_value(), out);
  });
  spdlog::info("features: {} queries -> {}", lists.size(), path.string());
}

std::vector<std::filesystem::path> RunTruncate(const ExperimentConfig& config,
                                               const TruncateOptions& options) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const TruncationPrediction& p, const std::string& file) {
    const auto path = config.PredictionsDir() / file;
    WriteFileAtomically(path, [&](std::ostream& out) { WritePrediction(p, out); });
    written.push_back(path);
    spdlog::info("truncate: {} -> {}", p.method_name, path.string());
  };

  if (options.method == "fixed-k") {
    const RunSet retrieved = ParseRunFile(
        config.paths.retrieved_run,
        ParseRunOptions{static_cast<std::size_t>(config.list_depth)});
    std::vector<int> ks = options.k ? std::vector<int>{*options.k} : config.fixed_k;
    for (int k : ks) emit(FixedK(retrieved, k), fmt::format("fixed-k_{}.tsv", k));
  } else if (options.method == "greedy-k") {
    const RunSet retrieved = ParseRunFile(
        config.paths.retrieved_run,
        ParseRunOptions{static_cast<std::size_t>(config.list_depth)});
    std::vector<EetPreset> presets;
    if (options.beta) {
      presets.push_back(config.PresetForBeta(*options.beta));
    } else {
      presets = config.eet_presets;
    }
    for (const auto& preset : presets) {
      const TargetVector targets = ReadTargetsFile(config.TargetPath(preset));
      std::vector<std::string> ids;
      for (const auto& [query_id, t] : targets.targets) ids.push_back(query_id);
      const QuerySplit split = SplitQueries(ids, config.train_fraction);
      const int k = GreedyK(targets, split.train);
      spdlog::info("greedy-k: beta={} -> k={} on {} training queries", preset.beta,
                   k, split.train.size());
      emit(GreedyKPrediction(retrieved, k,
                             fmt::format("Greedy-k (beta={})", preset.beta)),
           fmt::format("greedy-k_beta{}.tsv", preset.beta));
    }
  } else if (options.method == "surprise") {
    const RunSet retrieved = ParseRunFile(
        config.paths.retrieved_run,
        ParseRunOptions{static_cast<std::size_t>(config.list_depth)});
    std::ostringstream diagnostics;
    const TruncationPrediction p =
        SurprisePrediction(retrieved, config.surprise, &diagnostics, config.threads);
    WriteText(config.DiagnosticsDir() / "surprise.jsonl", diagnostics.str());
    emit(p, "surprise.tsv");
  } else {
    throw Error(ErrorCode::kConfig,
                fmt::format("unknown truncation method '{}' (fixed-k, greedy-k, "
                            "surprise)",
                            options.method));
  }
  return written;
}

ReportTable RunEvaluate(const ExperimentConfig& config,
                        std::vector<std::filesystem::path> prediction_files) {
  const SweepMatrix sweep = LoadSweepCache(config);
  if (prediction_files.empty()) prediction_files = DefaultPredictionFiles(config);
  std::vector<EvaluationRow> rows =
      EvaluateAll(config, sweep, prediction_files, nullptr);
  const ReportTable table =
      BuildReport(config.dataset, config.metric, CostLabel(config),
                  std::move(rows), config.baselines);
  WriteText(config.ReportDir() / "report.csv",
            TextOf([&](std::ostream& out) { WriteReportCsv(table, out); }));
  const std::string text =
      TextOf([&](std::ostream& out) { WriteReportText(table, out); });
  WriteText(config.ReportDir() / "report.txt", text);
  spdlog::info("evaluate: {} rows -> {}", table.rows.size(),
               config.ReportDir().string());
  return table;
}

void RunPlotData(const ExperimentConfig& config, bool svg) {
  const SweepMatrix sweep = LoadSweepCache(config);
  std::vector<TruncationPrediction> predictions;
  const std::vector<EvaluationRow> rows =
      EvaluateAll(config, sweep, DefaultPredictionFiles(config), &predictions);
  const QuerySplit split = SplitQueries(SweepQueries(sweep), config.train_fraction);
  const std::string metric_label = config.metric.DisplayName();

  std::vector<ScatterPoint> scatter;
  for (const auto& r : rows) {
    scatter.push_back({r.method, r.avg_k, r.mean_metric, r.mean_latency});
  }
  std::vector<ScatterPoint> frontier;
  for (int k : config.frontier_grid) {
    const EvaluationRow r = EvaluatePrediction(
        FixedOnSweep(sweep, k, fmt::format("Fixed-k ({})", k)), sweep,
        config.cost_model, split.test);
    frontier.push_back({fmt::format("{}", k), r.avg_k, r.mean_metric, r.mean_latency});
  }
  auto scatter_csv = [&](const std::vector<ScatterPoint>& points, const char* first) {
    return TextOf([&](std::ostream& out) {
      out << first << ",avg_k," << config.metric.Name() << ",latency\n";
      for (const auto& p : points) {
        out << fmt::format("\"{}\",{:.6f},{:.6f},{:.6f}\n", p.label, p.avg_k,
                           p.metric, p.latency);
      }
    });
  };
  WriteText(config.PlotsDir() / "tradeoff_scatter.csv", scatter_csv(scatter, "method"));
  WriteText(config.PlotsDir() / "fixed_k_frontier.csv", scatter_csv(frontier, "k"));

  // Predicted cut-off distributions: every prediction file, then Oracle.
  std::vector<std::pair<std::string, Histogram>> histograms;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const EvaluationRow& r = rows[i + 1];
    histograms.emplace_back(predictions[i].method_name,
                            CutoffHistogram(r.cutoffs, config.list_depth));
  }
  histograms.emplace_back(std::string(kOracleRow),
                          CutoffHistogram(rows.back().cutoffs, config.list_depth));
  WriteText(config.PlotsDir() / "cutoff_histograms.csv",
            TextOf([&](std::ostream& out) {
              out << "method,bin,bin_lo,bin_hi,count\n";
              for (const auto& [label, h] : histograms) {
                for (std::size_t b = 0; b < h.counts.size(); ++b) {
                  out << fmt::format("\"{}\",{},{:.6g},{:.6g},{}\n", label, b,
                                     h.bin_width * b, h.bin_width * (b + 1),
                                     h.counts[b]);
                }
              }
            }));

  // Mean metric over all queries at each cut-off; short lists hold their
  // last value.
  std::size_t longest = 0;
  for (const auto& [q, row] : sweep.rows) longest = std::max(longest, row.values.size());
  const std::vector<std::string> all_ids = SweepQueries(sweep);
  WriteText(config.PlotsDir() / "sweep_curve.csv", TextOf([&](std::ostream& out) {
              out << "k,mean_" << config.metric.Name() << '\n';
              for (std::size_t k = 0; k < longest; ++k) {
                double sum = 0.0;
                for (const auto& q : all_ids) {
                  const auto& v = sweep.rows.at(q).values;
                  sum += v[std::min(k, v.size() - 1)];
                }
                out << fmt::format("{},{:.6f}\n", k, sum / all_ids.size());
              }
            }));

  const std::vector<CdfPoint> cdf = CutoffCdf(OraclePrediction(sweep));
  WriteText(config.PlotsDir() / "oracle_cdf.csv", TextOf([&](std::ostream& out) {
              out << "k,fraction\n";
              for (const auto& p : cdf) out << fmt::format("{},{:.6f}\n", p.k, p.fraction);
            }));

  if (svg) {
    WriteText(config.PlotsDir() / "tradeoff.svg",
              RenderTradeoffSvg(scatter, frontier,
                                fmt::format("{}: {} vs. re-ranking latency",
                                            config.dataset, metric_label),
                                metric_label));
    WriteText(config.PlotsDir() / "cutoff_histograms.svg",
              RenderHistogramsSvg(histograms, config.list_depth,
                                  fmt::format("{}: predicted re-ranking cut-offs",
                                              config.dataset)));
    WriteText(config.PlotsDir() / "oracle_cdf.svg",
              RenderCdfSvg(cdf, config.list_depth,
                           fmt::format("{}: CDF of oracle cut-offs", config.dataset)));
  }
  spdlog::info("plotdata: figures -> {}", config.PlotsDir().string());
}

}  // namespace rlt
