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

#ifndef RLT_CORPUS_IO_H_
#define RLT_CORPUS_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rlt {

struct RankedItem {
  std::string doc_id;
  double score = 0.0;
  int rank = 0;  // 1-based

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

// One query's ranked result. Canonical order is score descending with
// doc_id ascending as tie-break; ranks are 1..n.
struct RankedList {
  std::string query_id;
  std::vector<RankedItem> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  std::vector<std::string> DocIds() const;

  // Sorts into canonical order and rewrites ranks. Throws kDuplicateDoc.
  static RankedList FromScored(std::string query_id,
                               std::vector<RankedItem> items);

  // Empty string when the invariants hold, otherwise a description of the
  // first violation.
  std::string CheckInvariants() const;

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

struct RunSet {
  std::string tag;
  std::map<std::string, RankedList> lists;
  // Queries whose lists were cut at the configured maximum depth.
  std::set<std::string> truncated_queries;

  const RankedList* Find(std::string_view query_id) const;

  friend bool operator==(const RunSet& a, const RunSet& b) {
    return a.tag == b.tag && a.lists == b.lists;
  }
};

struct ParseRunOptions {
  // 0 disables the cap.
  std::size_t max_depth = 1000;
};

RunSet ParseRun(std::istream& in, const ParseRunOptions& options = {});
RunSet ParseRunFile(const std::filesystem::path& path,
                    const ParseRunOptions& options = {});

// Six columns per line; rank rewritten, score with six decimals.
void WriteRun(const RunSet& run, std::ostream& out);

class QrelsSet {
 public:
  using Judgments = std::map<std::string, int, std::less<>>;

  explicit QrelsSet(int relevance_threshold = 2);

  int relevance_threshold() const { return relevance_threshold_; }

  void Add(const std::string& query_id, const std::string& doc_id, int grade);

  // Judgments for one query, or nullptr when the query has none.
  const Judgments* ForQuery(std::string_view query_id) const;
  std::optional<int> Grade(std::string_view query_id,
                           std::string_view doc_id) const;
  bool IsRelevant(std::string_view query_id, std::string_view doc_id) const;
  bool IsRelevantGrade(int grade) const {
    return grade >= relevance_threshold_;
  }

  const std::map<std::string, Judgments, std::less<>>& all() const {
    return judgments_;
  }

 private:
  int relevance_threshold_;
  std::map<std::string, Judgments, std::less<>> judgments_;
};

QrelsSet ParseQrels(std::istream& in, int relevance_threshold = 2);
QrelsSet ParseQrelsFile(const std::filesystem::path& path,
                        int relevance_threshold = 2);

// A retrieved run and the full-depth re-ranking of it. Only PairRuns
// constructs one, so every query has identical doc sets on both sides.
class RerankPair {
 public:
  const RunSet& retrieved() const { return retrieved_; }
  const RunSet& reranked() const { return reranked_; }
  std::vector<std::string> QueryIds() const;

 private:
  friend RerankPair PairRuns(const RunSet& retrieved, const RunSet& reranked);
  RunSet retrieved_;
  RunSet reranked_;
};

RerankPair PairRuns(const RunSet& retrieved, const RunSet& reranked);

// Keeps only the docs of `reference` in each matching list of `run`. Used
// when the retrieved run was cut at the maximum depth but the re-ranked
// run was not.
RunSet RestrictToDocs(const RunSet& run, const RunSet& reference);

using Corpus = std::map<std::string, std::string, std::less<>>;

// "docid<TAB>text" per line.
Corpus ParseCorpus(std::istream& in);
Corpus ParseCorpusFile(const std::filesystem::path& path);

}  // namespace rlt

#endif  // RLT_CORPUS_IO_H_
