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

// Writes the bundled synthetic dataset: retrieved and re-ranked runs, graded
// qrels, a corpus, dense embeddings, a config and one prediction file that
// stands in for a model trained elsewhere.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "rlt/commands.h"
#include "rlt/corpus_io.h"
#include "rlt/metrics.h"
#include "rlt/rerank_sim.h"

namespace {

struct Options {
  std::filesystem::path out = "data/synthetic";
  std::uint64_t seed = 20240712;
  int queries = 50;
  int depth = 100;
  int vocabulary = 400;
  int embedding_dim = 4;
};

struct Doc {
  std::string id;
  int grade = 0;
  double retrieval_score = 0.0;
  double rerank_score = 0.0;
  bool judged = false;
};

std::string Word(int i) { return fmt::format("w{:03d}", i); }

void Write(const std::filesystem::path& path, const std::string& text) {
  rlt::WriteFileAtomically(path, [&](std::ostream& out) { out << text; });
}

int Generate(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> word(0, opt.vocabulary - 1);
  std::uniform_int_distribution<int> doc_length(20, 80);

  std::ostringstream retrieved, reranked, qrels, corpus, embeddings;
  embeddings << fmt::format("{{\"dimension\": {}}}\n", opt.embedding_dim);
  const char* decorations[] = {"", ",", ".", "!", ";"};

  for (int q = 1; q <= opt.queries; ++q) {
    const std::string qid = fmt::format("q{:02d}", q);
    std::vector<int> topic(5);
    for (int& t : topic) t = word(rng);
    std::vector<double> query_embedding(opt.embedding_dim);
    for (double& x : query_embedding) x = normal(rng);

    // Strong re-rankers on most queries; a noisy one on the rest so some
    // queries are better left alone.
    const bool noisy_reranker = unit(rng) < 0.35;
    const double retrieval_noise = 1.0 + 1.5 * unit(rng);
    const double rerank_noise = noisy_reranker ? 1.0 : 0.6;
    const double rerank_signal = noisy_reranker ? 0.0 : 1.6;

    std::vector<Doc> docs(opt.depth);
    for (int i = 0; i < opt.depth; ++i) {
      Doc& d = docs[i];
      d.id = fmt::format("{}-d{:03d}", qid, i + 1);
      const double u = unit(rng);
      d.grade = u < 0.03 ? 3 : u < 0.09 ? 2 : u < 0.20 ? 1 : 0;
      d.retrieval_score = 10.0 + 1.1 * d.grade + retrieval_noise * normal(rng);
      d.rerank_score = rerank_signal * d.grade + rerank_noise * normal(rng);
    }
    std::sort(docs.begin(), docs.end(), [](const Doc& a, const Doc& b) {
      return a.retrieval_score > b.retrieval_score;
    });

    for (int i = 0; i < opt.depth; ++i) {
      Doc& d = docs[i];
      d.judged = d.grade > 0 || unit(rng) < (i < 30 ? 0.8 : 0.3);
      retrieved << fmt::format("{} Q0 {} {} {:.4f} bm25-synth\n", qid, d.id, i + 1,
                               d.retrieval_score);
      if (d.judged) qrels << fmt::format("{} 0 {} {}\n", qid, d.id, d.grade);

      std::vector<std::string> tokens;
      const int length = doc_length(rng);
      const double topical = 0.04 + 0.12 * d.grade;
      for (int t = 0; t < length; ++t) {
        const int w = unit(rng) < topical ? topic[t % topic.size()] : word(rng);
        std::string token = Word(w);
        if (t == 0) token[0] = 'W';
        token += decorations[static_cast<std::size_t>(unit(rng) * 5) % 5];
        tokens.push_back(std::move(token));
      }
      corpus << d.id << '\t';
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        corpus << (t ? " " : "") << tokens[t];
      }
      corpus << '\n';

      std::vector<double> doc_embedding(opt.embedding_dim);
      for (int j = 0; j < opt.embedding_dim; ++j) {
        doc_embedding[j] = 0.3 * d.grade * query_embedding[j] + normal(rng);
      }
      auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t j = 0; j < v.size(); ++j) {
          s += fmt::format("{}{:.6f}", j ? ", " : "", v[j]);
        }
        return s;
      };
      embeddings << fmt::format(
          "{{\"query_id\": \"{}\", \"doc_id\": \"{}\", \"query_embedding\": [{}], "
          "\"doc_embedding\": [{}]}}\n",
          qid, d.id, join(query_embedding), join(doc_embedding));
    }
    std::vector<Doc> by_rerank = docs;
    std::sort(by_rerank.begin(), by_rerank.end(), [](const Doc& a, const Doc& b) {
      return a.rerank_score > b.rerank_score;
    });
    for (int i = 0; i < opt.depth; ++i) {
      reranked << fmt::format("{} Q0 {} {} {:.4f} reranker-synth\n", qid,
                              by_rerank[i].id, i + 1, by_rerank[i].rerank_score);
    }
    // Relevant documents the retriever missed.
    const int missed = static_cast<int>(unit(rng) * 3);
    for (int m = 1; m <= missed; ++m) {
      qrels << fmt::format("{} 0 {}-u{} {}\n", qid, qid, m, 1 + m % 3);
    }
  }

  std::filesystem::create_directories(opt.out);
  Write(opt.out / "retrieved.run", retrieved.str());
  Write(opt.out / "reranked.run", reranked.str());
  Write(opt.out / "qrels.txt", qrels.str());
  Write(opt.out / "corpus.tsv", corpus.str());
  Write(opt.out / "embeddings.jsonl", embeddings.str());

  // External prediction: oracle cut-offs perturbed by up to +-8.
  std::istringstream retrieved_in(retrieved.str());
  std::istringstream reranked_in(reranked.str());
  std::istringstream qrels_in(qrels.str());
  const rlt::RerankPair pair =
      rlt::PairRuns(rlt::ParseRun(retrieved_in), rlt::ParseRun(reranked_in));
  const rlt::SweepMatrix sweep =
      rlt::Sweep(pair, rlt::ParseQrels(qrels_in, 2), rlt::MetricId{});
  rlt::TruncationPrediction external = rlt::OraclePrediction(sweep);
  external.method_name = "Example-External";
  std::uniform_int_distribution<int> jitter(-8, 8);
  for (auto& [qid, k] : external.cutoffs) {
    k = std::clamp(k + jitter(rng), 0, opt.depth);
  }
  rlt::WriteFileAtomically(opt.out / "external" / "example_external.tsv",
                           [&](std::ostream& out) {
                             rlt::WritePrediction(external, out);
                           });

  Write(opt.out / "config.json", fmt::format(R"json({{
  "schema_version": 1,
  "dataset": "synthetic",
  "paths": {{
    "retrieved_run": "retrieved.run",
    "reranked_run": "reranked.run",
    "qrels": "qrels.txt",
    "corpus": "corpus.tsv",
    "embeddings": "embeddings.jsonl",
    "output_dir": "out",
    "extra_predictions": ["external/example_external.tsv"]
  }},
  "metric": "ndcg@10",
  "gain": "linear",
  "relevance_threshold": 2,
  "list_depth": {},
  "eet_presets": [
    {{"beta": 0, "alpha": -0.001}},
    {{"beta": 1, "alpha": -0.001}},
    {{"beta": 2, "alpha": -0.001}}
  ],
  "cost_model": {{"name": "llm", "per_item_latency": 0.02977, "fixed_overhead": 0}},
  "fixed_k": [10, 20, 50, 100],
  "baselines": ["Fixed-k (20)", "Fixed-k (100)"],
  "split": {{"train_fraction": 0.5}},
  "threads": 1
}}
)json",
                                             opt.depth));
  std::cerr << "wrote " << opt.queries << " queries to " << opt.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic retrieve-then-re-rank dataset generator"};
  Options opt;
  app.add_option("--out", opt.out, "output directory");
  app.add_option("--seed", opt.seed);
  app.add_option("--queries", opt.queries)->check(CLI::PositiveNumber);
  app.add_option("--depth", opt.depth)->check(CLI::Range(10, 1000));
  CLI11_PARSE(app, argc, argv);
  return Generate(opt);
}
