// Copyright 2026 The evoquery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/corpus.hpp"
#include "evoquery/text.hpp"

namespace evoquery {

struct SearchHit {
  std::string doc_url;
  std::string doc_host;
  std::string title;
  std::string snippet;
  std::size_t position = 0;  // 1-based

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// `issued_at` is a logical sequence number for the offline provider and Unix
// milliseconds for network providers.
struct ProviderQueryRecord {
  std::string query_string;
  std::string genome_id;
  std::vector<SearchHit> hits;
  std::string provider_name;
  std::uint64_t issued_at = 0;
};

// Search-provider contract. execute() returns at most `limit` hits with
// contiguous positions 1..n. Throws EmptyQuery, ProviderUnavailable,
// ProtocolError.
class SearchProvider {
 public:
  virtual ~SearchProvider() = default;
  virtual std::vector<SearchHit> execute(std::string_view query, std::size_t limit) = 0;
  virtual std::string name() const = 0;
  // Deterministic providers can be replayed from a ledger.
  virtual bool replayable() const = 0;
  // Safe to call execute() from several threads at once.
  virtual bool concurrent() const = 0;
};

struct Posting {
  std::uint32_t doc = 0;  // index into InvertedIndex::documents()
  std::uint32_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Immutable after construction.
class InvertedIndex {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

  // Indexes title + body of each document. Throws EmptyCorpus.
  static InvertedIndex build(std::vector<Document> docs, const Normalizer& normalizer);
  static InvertedIndex build(std::vector<Document> docs);

  const std::vector<Document>& documents() const noexcept { return docs_; }
  const PostingMap& postings() const noexcept { return postings_; }
  const std::vector<std::uint32_t>& doc_lengths() const noexcept { return lengths_; }
  double average_length() const noexcept { return avg_length_; }
  std::size_t vocabulary_size() const noexcept { return postings_.size(); }
  const std::vector<std::string>& stop_words() const noexcept { return stop_words_; }

  // Position of the document with this id; throws UnknownDocument.
  std::uint32_t doc_index(std::string_view id) const;
  std::uint32_t term_frequency(std::string_view lemma, std::uint32_t doc) const;
  std::size_t document_frequency(std::string_view lemma) const;

  // ln(1 + (N - n_t + 0.5) / (n_t + 0.5))
  double idf(std::string_view lemma) const;

  void save(const std::filesystem::path& path) const;
  static InvertedIndex load(const std::filesystem::path& path);

  // FNV-1a over the canonical serialization; identifies the index in ledgers.
  std::string digest() const;

 private:
  std::string serialize() const;

  std::vector<Document> docs_;
  PostingMap postings_;
  std::vector<std::uint32_t> lengths_;
  double avg_length_ = 0.0;
  std::vector<std::string> stop_words_;
  std::map<std::string, std::uint32_t, std::less<>> by_id_;
};

// Sum of per-term BM25 contributions; terms absent from the document
// contribute exactly 0. Throws UnknownDocument.
double score_bm25(const InvertedIndex& index, std::span<const std::string> query_lemmas,
                  std::string_view doc_id, Bm25Params params = {});
double bm25_term_score(double idf, double tf, double doc_length, double avg_length, Bm25Params params = {});

// A parsed query: quoted terms are required, bare terms optional.
struct ParsedQuery {
  std::vector<std::string> required;
  std::vector<std::string> optional;

  std::vector<std::string> all_terms() const;
};

// Splits on whitespace, honours double quotes, lowercases ASCII. Terms are
// taken as lemmas verbatim. Throws EmptyQuery.
ParsedQuery parse_query(std::string_view query);

struct OfflineOptions {
  Bm25Params bm25;
  // Snippet length in words; 0 puts the whole body into the snippet.
  std::size_t snippet_words = 40;
};

// BM25 over an in-memory inverted index. Quoted queries are conjunctive,
// bare ones disjunctive. Ties break by document id ascending.
class OfflineProvider final : public SearchProvider {
 public:
  explicit OfflineProvider(std::shared_ptr<const InvertedIndex> index, OfflineOptions options = {});

  std::vector<SearchHit> execute(std::string_view query, std::size_t limit) override;
  std::string name() const override { return "offline"; }
  bool replayable() const override { return true; }
  bool concurrent() const override { return true; }

  const InvertedIndex& index() const noexcept { return *index_; }

 private:
  std::string make_snippet(const Document& doc) const;

  std::shared_ptr<const InvertedIndex> index_;
  OfflineOptions options_;
};

}  // namespace evoquery
