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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "rlt/corpus_io.h"
#include "rlt/features.h"
#include "rlt/gpd.h"
#include "rlt/metrics.h"
#include "rlt/rerank_sim.h"

namespace rlt {
namespace {

struct Instance {
  RerankPair pair;
  QrelsSet qrels{2};
};

Instance MakeInstance(int queries, int depth) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> grade(0, 3);
  Instance inst;
  RunSet retrieved, reranked;
  for (int q = 0; q < queries; ++q) {
    const std::string qid = "q" + std::to_string(q);
    std::vector<RankedItem> a, b;
    for (int i = 0; i < depth; ++i) {
      const std::string doc = "d" + std::to_string(i);
      a.push_back({doc, static_cast<double>(depth - i), 0});
      b.push_back({doc, noise(rng), 0});
      if (i % 3 == 0) inst.qrels.Add(qid, doc, grade(rng));
    }
    retrieved.lists.emplace(qid, RankedList::FromScored(qid, std::move(a)));
    reranked.lists.emplace(qid, RankedList::FromScored(qid, std::move(b)));
  }
  inst.pair = PairRuns(retrieved, reranked);
  return inst;
}

void BM_Sweep(benchmark::State& state) {
  const Instance inst = MakeInstance(10, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Sweep(inst.pair, inst.qrels, MetricId{}));
  }
  state.SetItemsProcessed(state.iterations() * 10 * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(100)->Arg(1000);

void BM_FitGpd(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (double& v : x) v = (std::pow(1.0 - unit(rng), -0.2) - 1.0) / 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(FitGpd(x));
}
BENCHMARK(BM_FitGpd)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TfidfBuild(benchmark::State& state) {
  std::mt19937_64 rng(9);
  Corpus corpus;
  for (int d = 0; d < state.range(0); ++d) {
    std::string text;
    for (int t = 0; t < 60; ++t) text += "w" + std::to_string(rng() % 2000) + " ";
    corpus["d" + std::to_string(d)] = text;
  }
  for (auto _ : state) benchmark::DoNotOptimize(TfidfVectorizer::Build(corpus));
}
BENCHMARK(BM_TfidfBuild)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rlt

BENCHMARK_MAIN();
