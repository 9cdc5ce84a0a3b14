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

#ifndef RLT_FEATURES_H_
#define RLT_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlt/corpus_io.h"
#include "rlt/eet.h"

namespace rlt {

// Lowercases ASCII and splits on every byte that is not an ASCII letter or
// digit. Bytes of multi-byte UTF-8 sequences are kept inside tokens.
std::vector<std::string> Tokenize(std::string_view text);

// Sorted by term id.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

struct CosineResult {
  double value = 0.0;
  bool zero_vector = false;  // one side was all zeros; value is 0
};

CosineResult Cosine(const SparseVector& a, const SparseVector& b);
CosineResult Cosine(std::span<const double> a, std::span<const double> b);

// Corpus-wide tf-idf with idf(t) = ln(N / df(t)) + 1 and raw term counts,
// L2-normalised. Immutable once built.
class TfidfVectorizer {
 public:
  static TfidfVectorizer Build(const Corpus& corpus);

  SparseVector Transform(std::string_view text) const;
  // Throws kInvalidArgument for an out-of-vocabulary term.
  double Idf(std::string_view term) const;
  std::size_t vocabulary_size() const { return idf_.size(); }
  std::size_t document_count() const { return document_count_; }

 private:
  std::map<std::string, std::uint32_t, std::less<>> term_ids_;
  std::vector<double> idf_;
  std::size_t document_count_ = 0;
};

struct NeighborSimilarity {
  double prev = 0.0;
  double next = 0.0;
  bool zero_vector = false;
};

// Cosine with the rank-adjacent items. The first item copies its next
// similarity into prev, the last copies prev into next, and a single item
// gets 0 for both.
std::vector<NeighborSimilarity> NeighborSimilarities(
    std::span<const SparseVector> vectors);
std::vector<NeighborSimilarity> NeighborSimilarities(
    std::span<const std::vector<double>> vectors);

// Maps max to 1 and min to 0; a constant list maps to 0.5 everywhere.
std::vector<double> MinMaxNormalize(std::span<const double> scores);

// Query and document embeddings from a dense retriever.
// JSON lines: {"dimension": d} first, then
// {"query_id", "doc_id", "query_embedding": [...], "doc_embedding": [...]}.
struct EmbeddingStore {
  int dimension = 0;
  std::map<std::string, std::vector<double>> query_embeddings;
  std::map<std::pair<std::string, std::string>, std::vector<double>>
      doc_embeddings;

  const std::vector<double>* Doc(const std::string& query_id,
                                 const std::string& doc_id) const;
};

EmbeddingStore ReadEmbeddings(std::istream& in);
EmbeddingStore ReadEmbeddingsFile(const std::filesystem::path& path);

struct FeatureRecord {
  std::string doc_id;
  double retrieval_score = 0.0;  // min-max normalised within the list
  int length_tokens = 0;
  int unique_tokens = 0;
  double tfidf_sim_prev = 0.0;
  double tfidf_sim_next = 0.0;
  std::optional<double> embed_sim_prev;
  std::optional<double> embed_sim_next;
  // Query embedding followed by the document embedding.
  std::optional<std::vector<double>> dense_embedding;
};

struct FeatureList {
  std::string query_id;
  std::vector<FeatureRecord> records;  // retrieved order
  std::vector<int> labels;             // 1 if relevant
  std::vector<double> targets;         // empty without a target file
};

inline constexpr std::string_view kFeatureSchemaVersion = "v1";

// Throws kMissingDocText, kMissingEmbedding, kMissingQuery (targets).
std::vector<FeatureList> BuildFeatureLists(
    const RerankPair& pair, const Corpus& corpus,
    const TfidfVectorizer& vectorizer, const QrelsSet& qrels,
    const TargetVector* targets, const EmbeddingStore* embeddings,
    int threads = 1);

// Header record, then one object per query in query_id order.
void WriteFeaturesJsonl(std::span<const FeatureList> lists,
                        const TfidfVectorizer& vectorizer,
                        const TargetVector* targets, bool with_embeddings,
                        std::ostream& out);

}  // namespace rlt

#endif  // RLT_FEATURES_H_
