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

#include "rlt/corpus_io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "rlt/error.h"

namespace rlt {
namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

template <typename T>
bool ParseNumber(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  return in;
}

bool CanonicalLess(const RankedItem& a, const RankedItem& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

}  // namespace

std::vector<std::string> RankedList::DocIds() const {
  std::vector<std::string> ids;
  ids.reserve(items.size());
  for (const auto& item : items) ids.push_back(item.doc_id);
  return ids;
}

RankedList RankedList::FromScored(std::string query_id,
                                  std::vector<RankedItem> items) {
  std::sort(items.begin(), items.end(), CanonicalLess);
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!seen.insert(items[i].doc_id).second) {
      throw Error(ErrorCode::kDuplicateDoc,
                  fmt::format("query {} lists {} more than once", query_id,
                              items[i].doc_id));
    }
    items[i].rank = static_cast<int>(i) + 1;
  }
  return RankedList{std::move(query_id), std::move(items)};
}

std::string RankedList::CheckInvariants() const {
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].rank != static_cast<int>(i) + 1) {
      return fmt::format("rank {} at position {}", items[i].rank, i + 1);
    }
    if (i > 0 && items[i].score > items[i - 1].score) {
      return fmt::format("score increases at rank {}", i + 1);
    }
    if (!seen.insert(items[i].doc_id).second) {
      return fmt::format("duplicate doc {}", items[i].doc_id);
    }
  }
  return {};
}

const RankedList* RunSet::Find(std::string_view query_id) const {
  auto it = lists.find(std::string(query_id));
  return it == lists.end() ? nullptr : &it->second;
}

RunSet ParseRun(std::istream& in, const ParseRunOptions& options) {
  std::map<std::string, std::vector<RankedItem>> pending;
  RunSet run;
  bool have_tag = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto fields = SplitWhitespace(line);
    if (fields.size() != 6) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: expected 6 columns, found {}", line_no,
                              fields.size()));
    }
    long rank = 0;
    double score = 0.0;
    if (!ParseNumber(fields[3], rank)) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: non-numeric rank '{}'", line_no,
                              fields[3]));
    }
    if (!ParseNumber(fields[4], score) || !std::isfinite(score)) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: non-numeric score '{}'", line_no,
                              fields[4]));
    }
    if (!have_tag) {
      run.tag = std::string(fields[5]);
      have_tag = true;
    }
    pending[std::string(fields[0])].push_back(
        RankedItem{std::string(fields[2]), score, 0});
  }
  if (pending.empty()) {
    throw Error(ErrorCode::kEmptyInput, "run contains no entries");
  }
  for (auto& [query_id, items] : pending) {
    RankedList list = RankedList::FromScored(query_id, std::move(items));
    if (options.max_depth > 0 && list.size() > options.max_depth) {
      spdlog::warn("query {}: list of {} items truncated to depth {}",
                   query_id, list.size(), options.max_depth);
      list.items.resize(options.max_depth);
      run.truncated_queries.insert(query_id);
    }
    run.lists.emplace(query_id, std::move(list));
  }
  return run;
}

RunSet ParseRunFile(const std::filesystem::path& path,
                    const ParseRunOptions& options) {
  auto in = OpenOrThrow(path);
  try {
    return ParseRun(in, options);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void WriteRun(const RunSet& run, std::ostream& out) {
  for (const auto& [query_id, list] : run.lists) {
    for (const auto& item : list.items) {
      out << fmt::format("{} Q0 {} {} {:.6f} {}\n", query_id, item.doc_id,
                         item.rank, item.score, run.tag);
    }
  }
}

QrelsSet::QrelsSet(int relevance_threshold)
    : relevance_threshold_(relevance_threshold) {
  if (relevance_threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("relevance threshold must be >= 1, got {}",
                            relevance_threshold));
  }
}

void QrelsSet::Add(const std::string& query_id, const std::string& doc_id,
                   int grade) {
  if (grade < 0) {
    throw Error(ErrorCode::kNegativeGrade,
                fmt::format("{} {} has grade {}", query_id, doc_id, grade));
  }
  judgments_[query_id][doc_id] = grade;
}

const QrelsSet::Judgments* QrelsSet::ForQuery(std::string_view query_id) const {
  auto it = judgments_.find(query_id);
  return it == judgments_.end() ? nullptr : &it->second;
}

std::optional<int> QrelsSet::Grade(std::string_view query_id,
                                   std::string_view doc_id) const {
  const Judgments* judged = ForQuery(query_id);
  if (judged == nullptr) return std::nullopt;
  auto it = judged->find(doc_id);
  if (it == judged->end()) return std::nullopt;
  return it->second;
}

bool QrelsSet::IsRelevant(std::string_view query_id,
                          std::string_view doc_id) const {
  auto grade = Grade(query_id, doc_id);
  return grade && IsRelevantGrade(*grade);
}

QrelsSet ParseQrels(std::istream& in, int relevance_threshold) {
  QrelsSet qrels(relevance_threshold);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto fields = SplitWhitespace(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: expected 4 columns, found {}", line_no,
                              fields.size()));
    }
    int grade = 0;
    if (!ParseNumber(fields[3], grade)) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: non-integer grade '{}'", line_no,
                              fields[3]));
    }
    if (grade < 0) {
      throw Error(ErrorCode::kNegativeGrade,
                  fmt::format("line {}: grade {}", line_no, grade));
    }
    qrels.Add(std::string(fields[0]), std::string(fields[2]), grade);
  }
  return qrels;
}

QrelsSet ParseQrelsFile(const std::filesystem::path& path,
                        int relevance_threshold) {
  auto in = OpenOrThrow(path);
  try {
    return ParseQrels(in, relevance_threshold);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::string> RerankPair::QueryIds() const {
  std::vector<std::string> ids;
  for (const auto& [query_id, list] : retrieved_.lists) ids.push_back(query_id);
  return ids;
}

RerankPair PairRuns(const RunSet& retrieved, const RunSet& reranked) {
  RerankPair pair;
  pair.retrieved_.tag = retrieved.tag;
  pair.reranked_.tag = reranked.tag;
  std::vector<std::string> mismatches;
  for (const auto& [query_id, list] : retrieved.lists) {
    const RankedList* other = reranked.Find(query_id);
    if (other == nullptr) continue;
    std::set<std::string> a, b;
    for (const auto& item : list.items) a.insert(item.doc_id);
    for (const auto& item : other->items) b.insert(item.doc_id);
    if (a != b) {
      std::vector<std::string> diff;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                    std::back_inserter(diff));
      mismatches.push_back(
          fmt::format("{}: {{{}}}", query_id, fmt::join(diff, ", ")));
      continue;
    }
    pair.retrieved_.lists.emplace(query_id, list);
    pair.reranked_.lists.emplace(query_id, *other);
  }
  if (!mismatches.empty()) {
    throw Error(ErrorCode::kDocSetMismatch,
                fmt::format("doc sets differ: {}", fmt::join(mismatches, "; ")));
  }
  if (pair.retrieved_.lists.empty()) {
    throw Error(ErrorCode::kEmptyIntersection,
                "retrieved and re-ranked runs share no query");
  }
  return pair;
}

RunSet RestrictToDocs(const RunSet& run, const RunSet& reference) {
  RunSet out;
  out.tag = run.tag;
  for (const auto& [query_id, list] : run.lists) {
    const RankedList* ref = reference.Find(query_id);
    if (ref == nullptr) {
      out.lists.emplace(query_id, list);
      continue;
    }
    std::unordered_set<std::string_view> keep;
    for (const auto& item : ref->items) keep.insert(item.doc_id);
    std::vector<RankedItem> items;
    for (const auto& item : list.items) {
      if (keep.count(item.doc_id)) items.push_back(item);
    }
    out.lists.emplace(query_id, RankedList::FromScored(query_id, std::move(items)));
  }
  return out;
}

Corpus ParseCorpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kMalformedLine,
                  fmt::format("line {}: expected docid<TAB>text", line_no));
    }
    corpus.insert_or_assign(line.substr(0, tab), line.substr(tab + 1));
  }
  return corpus;
}

Corpus ParseCorpusFile(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  return ParseCorpus(in);
}

}  // namespace rlt
