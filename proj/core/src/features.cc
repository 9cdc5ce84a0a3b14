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

#include "rlt/features.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include "json.hpp"

#include "rlt/error.h"
#include "rlt/parallel.h"

namespace rlt {
namespace {

bool IsTokenByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

double ClampUnit(double v) { return std::clamp(v, -1.0, 1.0); }

template <typename Vec>
std::vector<NeighborSimilarity> Neighbors(std::span<const Vec> vectors) {
  const std::size_t n = vectors.size();
  std::vector<NeighborSimilarity> out(n);
  if (n <= 1) return out;
  // between[i] = cos(v_i, v_{i+1})
  std::vector<CosineResult> between(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    between[i] = Cosine(vectors[i], vectors[i + 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const CosineResult* prev = i > 0 ? &between[i - 1] : nullptr;
    const CosineResult* next = i + 1 < n ? &between[i] : nullptr;
    if (prev == nullptr) prev = next;
    if (next == nullptr) next = prev;
    out[i].prev = prev->value;
    out[i].next = next->value;
    out[i].zero_vector = prev->zero_vector || next->zero_vector;
  }
  return out;
}

std::vector<double> ParseVector(const nlohmann::json& value, int dimension,
                                std::size_t line_no, const char* field) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kMalformedLine,
                fmt::format("embeddings line {}: '{}' is not an array", line_no,
                            field));
  }
  std::vector<double> v = value.get<std::vector<double>>();
  if (static_cast<int>(v.size()) != dimension) {
    throw Error(ErrorCode::kMalformedLine,
                fmt::format("embeddings line {}: '{}' has {} values, header "
                            "declares {}",
                            line_no, field, v.size(), dimension));
  }
  return v;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsTokenByte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CosineResult Cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [id, v] : a) na += v * v;
  for (const auto& [id, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return {0.0, true};
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      dot += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return {ClampUnit(dot / (std::sqrt(na) * std::sqrt(nb))), false};
}

CosineResult Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("cosine of vectors of size {} and {}", a.size(),
                            b.size()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return {0.0, true};
  return {ClampUnit(dot / (std::sqrt(na) * std::sqrt(nb))), false};
}

TfidfVectorizer TfidfVectorizer::Build(const Corpus& corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "tf-idf needs at least one document");
  }
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& [doc_id, text] : corpus) {
    std::vector<std::string> tokens = Tokenize(text);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) ++df[std::move(t)];
  }
  TfidfVectorizer v;
  v.document_count_ = corpus.size();
  const auto n = static_cast<double>(corpus.size());
  v.idf_.reserve(df.size());
  std::uint32_t next_id = 0;
  for (const auto& [term, count] : df) {
    v.term_ids_.emplace(term, next_id++);
    v.idf_.push_back(std::log(n / static_cast<double>(count)) + 1.0);
  }
  return v;
}

SparseVector TfidfVectorizer::Transform(std::string_view text) const {
  std::map<std::uint32_t, int> counts;
  for (const auto& token : Tokenize(text)) {
    auto it = term_ids_.find(token);
    if (it != term_ids_.end()) ++counts[it->second];
  }
  SparseVector out;
  out.reserve(counts.size());
  double norm = 0.0;
  for (const auto& [id, tf] : counts) {
    const double w = tf * idf_[id];
    out.emplace_back(id, w);
    norm += w * w;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& entry : out) entry.second /= norm;
  }
  return out;
}

double TfidfVectorizer::Idf(std::string_view term) const {
  auto it = term_ids_.find(term);
  if (it == term_ids_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("term '{}' not in vocabulary", term));
  }
  return idf_[it->second];
}

std::vector<NeighborSimilarity> NeighborSimilarities(
    std::span<const SparseVector> vectors) {
  return Neighbors(vectors);
}

std::vector<NeighborSimilarity> NeighborSimilarities(
    std::span<const std::vector<double>> vectors) {
  return Neighbors(vectors);
}

std::vector<double> MinMaxNormalize(std::span<const double> scores) {
  std::vector<double> out(scores.size(), 0.5);
  if (scores.empty()) return out;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double range = *hi - *lo;
  if (range == 0.0) return out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = (scores[i] - *lo) / range;
  }
  return out;
}

const std::vector<double>* EmbeddingStore::Doc(const std::string& query_id,
                                               const std::string& doc_id) const {
  auto it = doc_embeddings.find({query_id, doc_id});
  return it == doc_embeddings.end() ? nullptr : &it->second;
}

EmbeddingStore ReadEmbeddings(std::istream& in) {
  EmbeddingStore store;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("embeddings line {}: {}", line_no, e.what()));
    }
    if (!have_header) {
      if (!record.contains("dimension") || !record["dimension"].is_number_integer() ||
          record["dimension"].get<int>() < 1) {
        throw Error(ErrorCode::kMalformedLine,
                    "embeddings file must start with {\"dimension\": d}");
      }
      store.dimension = record["dimension"].get<int>();
      have_header = true;
      continue;
    }
    if (!record.contains("query_id") || !record.contains("doc_id") ||
        !record.contains("query_embedding") || !record.contains("doc_embedding")) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("embeddings line {}: missing field", line_no));
    }
    const auto query_id = record["query_id"].get<std::string>();
    const auto doc_id = record["doc_id"].get<std::string>();
    store.query_embeddings[query_id] = ParseVector(
        record["query_embedding"], store.dimension, line_no, "query_embedding");
    store.doc_embeddings[{query_id, doc_id}] = ParseVector(
        record["doc_embedding"], store.dimension, line_no, "doc_embedding");
  }
  if (!have_header) {
    throw Error(ErrorCode::kEmptyInput, "embeddings file is empty");
  }
  return store;
}

EmbeddingStore ReadEmbeddingsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  return ReadEmbeddings(in);
}

std::vector<FeatureList> BuildFeatureLists(
    const RerankPair& pair, const Corpus& corpus,
    const TfidfVectorizer& vectorizer, const QrelsSet& qrels,
    const TargetVector* targets, const EmbeddingStore* embeddings,
    int threads) {
  const std::vector<std::string> ids = pair.QueryIds();
  std::vector<FeatureList> out(ids.size());
  ParallelFor(ids.size(), threads, [&](std::size_t q) {
    const RankedList& list = *pair.retrieved().Find(ids[q]);
    FeatureList& features = out[q];
    features.query_id = list.query_id;
    const std::size_t n = list.size();

    std::vector<double> scores(n);
    std::vector<SparseVector> tfidf(n);
    features.records.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const RankedItem& item = list.items[i];
      auto text = corpus.find(item.doc_id);
      if (text == corpus.end()) {
        throw Error(ErrorCode::kMissingDocText,
                    fmt::format("query {}: no corpus text for {}",
                                list.query_id, item.doc_id));
      }
      const std::vector<std::string> tokens = Tokenize(text->second);
      std::unordered_set<std::string_view> unique(tokens.begin(), tokens.end());
      FeatureRecord& record = features.records[i];
      record.doc_id = item.doc_id;
      record.length_tokens = static_cast<int>(tokens.size());
      record.unique_tokens = static_cast<int>(unique.size());
      scores[i] = item.score;
      tfidf[i] = vectorizer.Transform(text->second);
      features.labels.push_back(qrels.IsRelevant(list.query_id, item.doc_id) ? 1 : 0);
    }
    const std::vector<double> normalized = MinMaxNormalize(scores);
    const auto sims = NeighborSimilarities(std::span<const SparseVector>(tfidf));
    for (std::size_t i = 0; i < n; ++i) {
      features.records[i].retrieval_score = normalized[i];
      features.records[i].tfidf_sim_prev = sims[i].prev;
      features.records[i].tfidf_sim_next = sims[i].next;
    }

    if (embeddings != nullptr) {
      auto query_it = embeddings->query_embeddings.find(list.query_id);
      std::vector<std::vector<double>> doc_vectors(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double>* doc = embeddings->Doc(list.query_id, list.items[i].doc_id);
        if (doc == nullptr || query_it == embeddings->query_embeddings.end()) {
          throw Error(ErrorCode::kMissingEmbedding,
                      fmt::format("no embedding for query {} doc {}",
                                  list.query_id, list.items[i].doc_id));
        }
        doc_vectors[i] = *doc;
      }
      const auto dense_sims =
          NeighborSimilarities(std::span<const std::vector<double>>(doc_vectors));
      for (std::size_t i = 0; i < n; ++i) {
        FeatureRecord& record = features.records[i];
        record.embed_sim_prev = dense_sims[i].prev;
        record.embed_sim_next = dense_sims[i].next;
        std::vector<double> joined = query_it->second;
        joined.insert(joined.end(), doc_vectors[i].begin(), doc_vectors[i].end());
        record.dense_embedding = std::move(joined);
      }
    }

    if (targets != nullptr) {
      auto it = targets->targets.find(list.query_id);
      if (it == targets->targets.end()) {
        throw Error(ErrorCode::kMissingQuery,
                    fmt::format("target file has no query {}", list.query_id));
      }
      features.targets = it->second;
    }
  });
  return out;
}

void WriteFeaturesJsonl(std::span<const FeatureList> lists,
                        const TfidfVectorizer& vectorizer,
                        const TargetVector* targets, bool with_embeddings,
                        std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json header;
  header["schema_version"] = kFeatureSchemaVersion;
  header["type"] = "header";
  header["score_normalization"] = "per_list_min_max";
  header["constant_score_value"] = 0.5;
  header["tfidf_idf"] = "ln(N/df)+1";
  header["tfidf_documents"] = vectorizer.document_count();
  header["tfidf_vocabulary_size"] = vectorizer.vocabulary_size();
  header["embeddings"] = with_embeddings;
  if (targets != nullptr) {
    header["target_beta"] = targets->config.beta;
    header["target_alpha"] = targets->config.alpha;
    header["target_metric"] = targets->config.metric.Name();
  }
  header["query_count"] = lists.size();
  out << header.dump() << '\n';

  for (const FeatureList& list : lists) {
    ordered_json obj;
    obj["schema_version"] = kFeatureSchemaVersion;
    obj["query_id"] = list.query_id;
    ordered_json records = ordered_json::array();
    for (const FeatureRecord& r : list.records) {
      ordered_json rec;
      rec["doc_id"] = r.doc_id;
      rec["retrieval_score"] = r.retrieval_score;
      rec["length_tokens"] = r.length_tokens;
      rec["unique_tokens"] = r.unique_tokens;
      rec["tfidf_sim_prev"] = r.tfidf_sim_prev;
      rec["tfidf_sim_next"] = r.tfidf_sim_next;
      rec["embed_sim_prev"] = r.embed_sim_prev ? ordered_json(*r.embed_sim_prev) : ordered_json();
      rec["embed_sim_next"] = r.embed_sim_next ? ordered_json(*r.embed_sim_next) : ordered_json();
      rec["dense_embedding"] = r.dense_embedding ? ordered_json(*r.dense_embedding) : ordered_json();
      records.push_back(std::move(rec));
    }
    obj["records"] = std::move(records);
    obj["labels"] = list.labels;
    obj["targets"] = list.targets;
    out << obj.dump() << '\n';
  }
}

}  // namespace rlt
