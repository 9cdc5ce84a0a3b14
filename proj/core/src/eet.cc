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

#include "rlt/eet.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "rlt/error.h"

namespace rlt {

void EetConfig::Validate() const {
  if (!(beta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("EET beta must be >= 0, got {}", beta));
  }
  if (!(alpha <= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("EET alpha must be <= 0, got {}", alpha));
  }
}

double EfficiencyDecay(int k, double alpha) {
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("efficiency decay at negative cut-off {}", k));
  }
  return std::exp(alpha * k);
}

double RerankGain(std::span<const double> sweep_row, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= sweep_row.size()) {
    throw Error(ErrorCode::kCutoffOutOfRange,
                fmt::format("gain at cut-off {} of a {}-entry sweep", k,
                            sweep_row.size()));
  }
  return sweep_row[k] - sweep_row[0];
}

double Eet(double sigma, double gamma, double beta) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("EET needs gamma > 0, got {}", gamma));
  }
  const double gain = std::max(sigma, 0.0);
  if (gain == 0.0) return 0.0;
  if (beta == 0.0) return gain;
  const double b2 = beta * beta;
  return (1.0 + b2) * (gamma * gain) / (b2 * gain + gamma);
}

TargetVector BuildTargets(const SweepMatrix& sweep, const EetConfig& config) {
  config.Validate();
  TargetVector out;
  out.config = config;
  out.config.metric = sweep.metric;
  for (const auto& [query_id, row] : sweep.rows) {
    if (!row.error.empty()) continue;
    std::vector<double> t(row.values.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const int cut = static_cast<int>(k);
      t[k] = Eet(RerankGain(row.values, cut), EfficiencyDecay(cut, config.alpha),
                 config.beta);
    }
    out.targets.emplace(query_id, std::move(t));
  }
  return out;
}

TargetVector BuildTargets(const RerankPair& pair, const QrelsSet& qrels,
                          const EetConfig& config) {
  return BuildTargets(Sweep(pair, qrels, config.metric), config);
}

void WriteTargets(const TargetVector& targets, std::ostream& out) {
  out << fmt::format("# beta={} alpha={} metric={}\n", targets.config.beta,
                     targets.config.alpha, targets.config.metric.Name());
  for (const auto& [query_id, t] : targets.targets) {
    out << query_id;
    for (double v : t) out << ' ' << fmt::format("{:.9g}", v);
    out << '\n';
  }
}

TargetVector ReadTargets(std::istream& in) {
  TargetVector out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string field;
      while (header >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "beta") out.config.beta = std::stod(value);
        if (key == "alpha") out.config.alpha = std::stod(value);
        if (key == "metric") out.config.metric = MetricId::Parse(value);
      }
      have_header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string query_id;
    fields >> query_id;
    std::vector<double> t;
    std::string token;
    while (fields >> token) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::kMalformedLine,
                    fmt::format("target line {}: bad value '{}'", line_no, token));
      }
      t.push_back(v);
    }
    if (t.empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("target line {}: no values", line_no));
    }
    out.targets[query_id] = std::move(t);
  }
  if (!have_header) {
    throw Error(ErrorCode::kMalformedLine, "target file lacks its header line");
  }
  return out;
}

TargetVector ReadTargetsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  return ReadTargets(in);
}

}  // namespace rlt
