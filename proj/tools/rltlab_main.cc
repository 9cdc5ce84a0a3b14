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

// rltlab: sweep | oracle | targets | features | truncate | evaluate | plotdata
//
// Every subcommand takes --config PATH. Exit status: 0 on success, 2 when the
// command line or the config is invalid, 1 for any other failure. Logs go to
// stderr; results go to files under the config's output directory.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "rlt/commands.h"
#include "rlt/config.h"
#include "rlt/error.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct GlobalFlags {
  std::string config_path;
  std::optional<int> threads;
  std::string log_level = "info";
};

rlt::ExperimentConfig Load(const GlobalFlags& flags) {
  rlt::ExperimentConfig config = rlt::LoadConfig(flags.config_path);
  if (flags.threads) {
    if (*flags.threads < 1) {
      throw rlt::Error(rlt::ErrorCode::kConfig, "--threads must be >= 1");
    }
    config.threads = *flags.threads;
  }
  return config;
}

void AddCommonFlags(CLI::App* sub, GlobalFlags& flags) {
  sub->add_option("--config", flags.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--threads", flags.threads,
                  "worker threads (overrides the config)");
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_logger_mt("rltlab");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  CLI::App app{"Re-ranking cut-off experiment harness"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--log-level", flags.log_level,
                 "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto* sweep = app.add_subcommand("sweep", "metric at every re-ranking cut-off");
  AddCommonFlags(sweep, flags);

  auto* oracle = app.add_subcommand("oracle", "oracle cut-offs and their CDF");
  AddCommonFlags(oracle, flags);

  auto* targets = app.add_subcommand("targets", "EET target vectors per preset");
  AddCommonFlags(targets, flags);

  std::optional<double> beta;
  auto* features = app.add_subcommand("features", "feature JSONL for trainers");
  AddCommonFlags(features, flags);
  features->add_option("--beta", beta, "EET preset whose targets are attached");

  rlt::TruncateOptions truncate_options;
  auto* truncate = app.add_subcommand("truncate", "unsupervised cut-off predictions");
  AddCommonFlags(truncate, flags);
  truncate->add_option("--method", truncate_options.method)
      ->required()
      ->check(CLI::IsMember({"fixed-k", "greedy-k", "surprise"}));
  truncate->add_option("--k", truncate_options.k, "fixed-k depth")
      ->check(CLI::NonNegativeNumber);
  truncate->add_option("--beta", truncate_options.beta, "greedy-k EET preset");

  std::vector<std::string> prediction_files;
  auto* evaluate = app.add_subcommand("evaluate", "report table with significance marks");
  AddCommonFlags(evaluate, flags);
  evaluate->add_option("predictions", prediction_files,
                       "prediction files (default: predictions/*.tsv and "
                       "paths.extra_predictions)")
      ->check(CLI::ExistingFile);

  bool svg = false;
  auto* plotdata = app.add_subcommand("plotdata", "figure data (CSV, optional SVG)");
  AddCommonFlags(plotdata, flags);
  plotdata->add_flag("--svg", svg, "also render SVG figures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : kExitValidation;
  }
  spdlog::set_level(spdlog::level::from_str(flags.log_level));

  try {
    const rlt::ExperimentConfig config = Load(flags);
    if (*sweep) {
      rlt::RunSweep(config);
    } else if (*oracle) {
      rlt::RunOracle(config);
    } else if (*targets) {
      rlt::RunTargets(config);
    } else if (*features) {
      rlt::RunFeatures(config, beta);
    } else if (*truncate) {
      if (truncate_options.k && truncate_options.method != "fixed-k") {
        throw rlt::Error(rlt::ErrorCode::kConfig, "--k applies to fixed-k only");
      }
      if (truncate_options.beta && truncate_options.method != "greedy-k") {
        throw rlt::Error(rlt::ErrorCode::kConfig, "--beta applies to greedy-k only");
      }
      rlt::RunTruncate(config, truncate_options);
    } else if (*evaluate) {
      std::vector<std::filesystem::path> files(prediction_files.begin(),
                                               prediction_files.end());
      rlt::RunEvaluate(config, files);
    } else if (*plotdata) {
      rlt::RunPlotData(config, svg);
    }
  } catch (const rlt::Error& e) {
    spdlog::error("{}", e.what());
    return e.code() == rlt::ErrorCode::kConfig ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return EXIT_SUCCESS;
}
