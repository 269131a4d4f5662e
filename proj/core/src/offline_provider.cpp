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

#include <algorithm>
#include <unordered_map>

#include "evoquery/error.hpp"
#include "evoquery/provider.hpp"

namespace evoquery {

std::vector<std::string> ParsedQuery::all_terms() const {
  std::vector<std::string> out = required;
  out.insert(out.end(), optional.begin(), optional.end());
  return out;
}

ParsedQuery parse_query(std::string_view query) {
  ParsedQuery parsed;
  auto push = [&](std::string term, bool quoted) {
    if (term.empty()) return;
    std::transform(term.begin(), term.end(), term.begin(), [](unsigned char c) {
      return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    auto& target = quoted ? parsed.required : parsed.optional;
    if (std::find(parsed.required.begin(), parsed.required.end(), term) != parsed.required.end()) return;
    if (quoted) {
      auto it = std::find(parsed.optional.begin(), parsed.optional.end(), term);
      if (it != parsed.optional.end()) parsed.optional.erase(it);
    } else if (std::find(parsed.optional.begin(), parsed.optional.end(), term) != parsed.optional.end()) {
      return;
    }
    target.push_back(std::move(term));
  };

  std::size_t i = 0;
  while (i < query.size()) {
    const char c = query[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '"') {
      const auto close = query.find('"', i + 1);
      const auto end = close == std::string_view::npos ? query.size() : close;
      // A quoted phrase of several words requires each of them.
      std::string_view inner = query.substr(i + 1, end - i - 1);
      std::size_t k = 0;
      while (k < inner.size()) {
        const auto ws = inner.find_first_of(" \t", k);
        const auto stop = ws == std::string_view::npos ? inner.size() : ws;
        push(std::string(inner.substr(k, stop - k)), true);
        k = stop + 1;
      }
      i = end + 1;
    } else {
      const auto ws = query.find_first_of(" \t\n\r\"", i);
      const auto stop = ws == std::string_view::npos ? query.size() : ws;
      push(std::string(query.substr(i, stop - i)), false);
      i = stop;
    }
  }
  if (parsed.required.empty() && parsed.optional.empty()) throw Error(ErrorCode::EmptyQuery, "empty query");
  return parsed;
}

OfflineProvider::OfflineProvider(std::shared_ptr<const InvertedIndex> index, OfflineOptions options)
    : index_(std::move(index)), options_(options) {
  if (!index_) throw Error(ErrorCode::InvalidArgument, "offline provider needs an index");
}

std::string OfflineProvider::make_snippet(const Document& doc) const {
  if (options_.snippet_words == 0) return doc.body;
  std::string out;
  std::size_t words = 0;
  std::size_t i = 0;
  const std::string& body = doc.body;
  while (i < body.size() && words < options_.snippet_words) {
    while (i < body.size() && (body[i] == ' ' || body[i] == '\n' || body[i] == '\t' || body[i] == '\r')) ++i;
    if (i >= body.size()) break;
    std::size_t j = i;
    while (j < body.size() && body[j] != ' ' && body[j] != '\n' && body[j] != '\t' && body[j] != '\r') ++j;
    if (!out.empty()) out += ' ';
    out.append(body, i, j - i);
    ++words;
    i = j;
  }
  return out;
}

std::vector<SearchHit> OfflineProvider::execute(std::string_view query, std::size_t limit) {
  if (limit == 0) throw Error(ErrorCode::InvalidArgument, "result limit must be positive");
  const ParsedQuery parsed = parse_query(query);
  const InvertedIndex& idx = *index_;

  struct Acc {
    double score = 0.0;
    std::size_t required_hits = 0;
  };
  std::unordered_map<std::uint32_t, Acc> acc;
  auto accumulate = [&](const std::string& term, bool required) {
    auto it = idx.postings().find(term);
    if (it == idx.postings().end()) return;
    const double idf = idx.idf(term);
    for (const Posting& p : it->second) {
      Acc& a = acc[p.doc];
      a.score += bm25_term_score(idf, p.tf, idx.doc_lengths()[p.doc], idx.average_length(), options_.bm25);
      if (required) ++a.required_hits;
    }
  };
  for (const auto& t : parsed.required) accumulate(t, true);
  for (const auto& t : parsed.optional) accumulate(t, false);

  struct Candidate {
    std::uint32_t doc;
    double score;
  };
  std::vector<Candidate> ranked;
  ranked.reserve(acc.size());
  for (const auto& [doc, a] : acc) {
    if (a.required_hits == parsed.required.size()) ranked.push_back({doc, a.score});
  }
  const auto& docs = idx.documents();
  auto order = [&](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    return docs[x.doc].id < docs[y.doc].id;
  };
  const std::size_t keep = std::min(limit, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(), order);
  ranked.resize(keep);

  std::vector<SearchHit> hits;
  hits.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const Document& d = docs[ranked[i].doc];
    // Documents without a URL are addressed by id.
    hits.push_back({d.url.empty() ? d.id : d.url, d.host, d.title, make_snippet(d), i + 1});
  }
  return hits;
}

}  // namespace evoquery
