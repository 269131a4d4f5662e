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

#include "evoquery/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "evoquery/error.hpp"

namespace evoquery {

std::string host_from_url(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos) return {};
  std::string_view rest = url.substr(scheme + 3);
  const auto end = rest.find_first_of("/?#");
  if (end != std::string_view::npos) rest = rest.substr(0, end);
  // Drop userinfo.
  const auto at = rest.rfind('@');
  if (at != std::string_view::npos) rest = rest.substr(at + 1);
  return std::string(rest);
}

TermVector term_weights(const Document& doc, const Normalizer& normalizer) {
  const auto lemmas = normalizer.normalize(doc.body);
  if (lemmas.empty()) throw Error(ErrorCode::EmptyDocument, "document '" + doc.id + "' has no lemmas");
  return TermVector::from_lemmas(lemmas);
}

TermVector term_weights(const Document& doc) { return term_weights(doc, SuffixNormalizer{}); }

bool KeywordPool::contains(std::string_view lemma) const {
  return std::any_of(terms.begin(), terms.end(), [&](const KeywordTerm& t) { return t.lemma == lemma; });
}

KeywordPool extract_keywords(const TermVector& vec, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "keyword count must be positive");
  KeywordPool pool;
  pool.terms.reserve(vec.size());
  for (const auto& [lemma, w] : vec.entries()) pool.terms.push_back({lemma, w});
  auto order = [](const KeywordTerm& a, const KeywordTerm& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.lemma < b.lemma;
  };
  const std::size_t keep = std::min(k, pool.terms.size());
  std::partial_sort(pool.terms.begin(), pool.terms.begin() + static_cast<std::ptrdiff_t>(keep),
                    pool.terms.end(), order);
  pool.terms.resize(keep);
  return pool;
}

Document merge_seed_material(std::span<const Document> seed) {
  Document merged;
  for (const auto& d : seed) {
    if (!merged.id.empty()) merged.id += "+";
    merged.id += d.id;
    if (!merged.body.empty()) merged.body += "\n";
    merged.body += d.title;
    merged.body += "\n";
    merged.body += d.body;
  }
  if (!seed.empty()) merged.title = seed.front().title;
  return merged;
}

KeywordPool build_keyword_pool(std::span<const Document> seed, std::size_t k,
                               const Normalizer& normalizer) {
  if (seed.empty()) throw Error(ErrorCode::EmptyDocument, "no seed material");
  KeywordPool pool = extract_keywords(term_weights(merge_seed_material(seed), normalizer), k);
  for (const auto& d : seed) pool.source_doc_ids.push_back(d.id);
  return pool;
}

namespace {

std::string field(const nlohmann::json& obj, const char* name, std::size_t line, bool required) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    if (required) throw Error(ErrorCode::ParseError, std::string("missing field '") + name + "'", line);
    return {};
  }
  if (!it->is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' is not a string", line);
  return it->get<std::string>();
}

}  // namespace

std::vector<Document> parse_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what(), line_no);
    }
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, "record is not an object", line_no);
    Document doc;
    doc.id = field(obj, "id", line_no, true);
    doc.url = field(obj, "url", line_no, false);
    doc.host = field(obj, "host", line_no, false);
    doc.title = field(obj, "title", line_no, false);
    doc.body = field(obj, "body", line_no, false);
    if (doc.id.empty()) throw Error(ErrorCode::ParseError, "empty id", line_no);
    if (!doc.url.empty()) {
      const std::string derived = host_from_url(doc.url);
      if (doc.host.empty()) {
        doc.host = derived;
      } else if (doc.host != derived) {
        throw Error(ErrorCode::ParseError, "host '" + doc.host + "' does not match url '" + doc.url + "'", line_no);
      }
    }
    if (!seen.insert(doc.id).second) throw Error(ErrorCode::DuplicateId, "duplicate id '" + doc.id + "'", line_no);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open corpus " + path.string());
  return parse_corpus(in);
}

std::string serialize_document(const Document& doc) {
  nlohmann::ordered_json obj;
  obj["id"] = doc.id;
  obj["url"] = doc.url;
  obj["host"] = doc.host;
  obj["title"] = doc.title;
  obj["body"] = doc.body;
  return obj.dump();
}

void write_corpus(std::ostream& out, std::span<const Document> docs) {
  for (const auto& d : docs) out << serialize_document(d) << '\n';
}

void save_corpus(const std::filesystem::path& path, std::span<const Document> docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write corpus " + path.string());
  write_corpus(out, docs);
}

}  // namespace evoquery
