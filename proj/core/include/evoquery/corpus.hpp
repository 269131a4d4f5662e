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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/text.hpp"

namespace evoquery {

struct Document {
  std::string id;
  std::string url;
  std::string host;  // authority component of url
  std::string title;
  std::string body;

  friend bool operator==(const Document&, const Document&) = default;
};

// Authority component of a URL ("http://a.org:80/x" -> "a.org:80"). Empty
// when the URL has no scheme separator.
std::string host_from_url(std::string_view url);

// TF weights of the document body, normalized by lemma count.
// Throws EmptyDocument when the body has no lemmas.
TermVector term_weights(const Document& doc, const Normalizer& normalizer);
TermVector term_weights(const Document& doc);

struct KeywordTerm {
  std::string lemma;
  double weight = 0.0;

  friend bool operator==(const KeywordTerm&, const KeywordTerm&) = default;
};

// Terms sorted by (weight desc, lemma asc), no duplicates.
struct KeywordPool {
  std::vector<KeywordTerm> terms;
  std::vector<std::string> source_doc_ids;

  std::size_t size() const noexcept { return terms.size(); }
  bool contains(std::string_view lemma) const;
};

KeywordPool extract_keywords(const TermVector& vec, std::size_t k);

// Seed material of one topic is concatenated (title and body of every
// document, in order) into a single document before weighting.
Document merge_seed_material(std::span<const Document> seed);
KeywordPool build_keyword_pool(std::span<const Document> seed, std::size_t k,
                               const Normalizer& normalizer);

// Newline-delimited JSON objects with fields id, url, host, title, body.
// Blank lines are skipped; line numbers in errors are physical lines.
std::vector<Document> parse_corpus(std::istream& in);
std::vector<Document> load_corpus(const std::filesystem::path& path);
std::string serialize_document(const Document& doc);
void write_corpus(std::ostream& out, std::span<const Document> docs);
void save_corpus(const std::filesystem::path& path, std::span<const Document> docs);

}  // namespace evoquery
