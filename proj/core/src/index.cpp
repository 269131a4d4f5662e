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
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evoquery/error.hpp"
#include "evoquery/provider.hpp"
#include "util.hpp"

namespace evoquery {

namespace {

constexpr const char* kIndexFormat = "evoquery-index";
constexpr int kIndexVersion = 1;

std::vector<std::string> stop_list(const Normalizer& normalizer) {
  if (const auto* s = dynamic_cast<const SuffixNormalizer*>(&normalizer)) {
    return {s->stop_words().begin(), s->stop_words().end()};
  }
  return {};
}

}  // namespace

InvertedIndex InvertedIndex::build(std::vector<Document> docs, const Normalizer& normalizer) {
  if (docs.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot index an empty corpus");
  InvertedIndex index;
  index.docs_ = std::move(docs);
  index.stop_words_ = stop_list(normalizer);
  index.lengths_.reserve(index.docs_.size());
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < index.docs_.size(); ++i) {
    const Document& d = index.docs_[i];
    if (!index.by_id_.emplace(d.id, i).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate document id '" + d.id + "'");
    }
    const auto lemmas = normalizer.normalize(d.title + "\n" + d.body);
    std::map<std::string_view, std::uint32_t> counts;
    for (const auto& l : lemmas) ++counts[l];
    for (const auto& [lemma, tf] : counts) {
      auto it = index.postings_.find(lemma);
      if (it == index.postings_.end()) it = index.postings_.emplace(std::string(lemma), std::vector<Posting>{}).first;
      it->second.push_back({i, tf});
    }
    index.lengths_.push_back(static_cast<std::uint32_t>(lemmas.size()));
    total += lemmas.size();
  }
  index.avg_length_ = static_cast<double>(total) / static_cast<double>(index.docs_.size());
  return index;
}

InvertedIndex InvertedIndex::build(std::vector<Document> docs) {
  return build(std::move(docs), SuffixNormalizer{});
}

std::uint32_t InvertedIndex::doc_index(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error(ErrorCode::UnknownDocument, "unknown document '" + std::string(id) + "'");
  return it->second;
}

std::uint32_t InvertedIndex::term_frequency(std::string_view lemma, std::uint32_t doc) const {
  auto it = postings_.find(lemma);
  if (it == postings_.end()) return 0;
  auto p = std::lower_bound(it->second.begin(), it->second.end(), doc,
                            [](const Posting& a, std::uint32_t d) { return a.doc < d; });
  return p != it->second.end() && p->doc == doc ? p->tf : 0;
}

std::size_t InvertedIndex::document_frequency(std::string_view lemma) const {
  auto it = postings_.find(lemma);
  return it == postings_.end() ? 0 : it->second.size();
}

double InvertedIndex::idf(std::string_view lemma) const {
  const double n = static_cast<double>(docs_.size());
  const double nt = static_cast<double>(document_frequency(lemma));
  return std::log(1.0 + (n - nt + 0.5) / (nt + 0.5));
}

double bm25_term_score(double idf, double tf, double doc_length, double avg_length, Bm25Params params) {
  if (tf <= 0.0) return 0.0;
  const double ratio = avg_length > 0.0 ? doc_length / avg_length : 1.0;
  const double norm = params.k1 * (1.0 - params.b + params.b * ratio);
  return idf * (tf * (params.k1 + 1.0)) / (tf + norm);
}

double score_bm25(const InvertedIndex& index, std::span<const std::string> query_lemmas,
                  std::string_view doc_id, Bm25Params params) {
  const std::uint32_t doc = index.doc_index(doc_id);
  double score = 0.0;
  for (const auto& lemma : query_lemmas) {
    const auto tf = index.term_frequency(lemma, doc);
    score += bm25_term_score(index.idf(lemma), tf, index.doc_lengths()[doc], index.average_length(), params);
  }
  return score;
}

std::string InvertedIndex::serialize() const {
  nlohmann::ordered_json j;
  j["format"] = kIndexFormat;
  j["version"] = kIndexVersion;
  j["stop_words"] = stop_words_;
  auto& docs = j["documents"] = nlohmann::ordered_json::array();
  for (const auto& d : docs_) {
    docs.push_back({{"id", d.id}, {"url", d.url}, {"host", d.host}, {"title", d.title}, {"body", d.body}});
  }
  j["doc_lengths"] = lengths_;
  auto& postings = j["postings"] = nlohmann::ordered_json::object();
  for (const auto& [lemma, list] : postings_) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
    postings[lemma] = std::move(arr);
  }
  return j.dump();
}

void InvertedIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write index " + path.string());
  out << serialize() << '\n';
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open index " + path.string());
  InvertedIndex index;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != kIndexFormat || j.at("version") != kIndexVersion) {
      throw Error(ErrorCode::ParseError, "not an evoquery index: " + path.string());
    }
    for (const auto& s : j.at("stop_words")) index.stop_words_.push_back(s.get<std::string>());
    for (const auto& d : j.at("documents")) {
      index.docs_.push_back({d.at("id").get<std::string>(), d.at("url").get<std::string>(),
                             d.at("host").get<std::string>(), d.at("title").get<std::string>(),
                             d.at("body").get<std::string>()});
    }
    index.lengths_ = j.at("doc_lengths").get<std::vector<std::uint32_t>>();
    for (const auto& [lemma, arr] : j.at("postings").items()) {
      auto& list = index.postings_[lemma];
      for (const auto& p : arr) list.push_back({p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed index: ") + e.what());
  }
  if (index.docs_.empty()) throw Error(ErrorCode::EmptyCorpus, "index has no documents");
  if (index.lengths_.size() != index.docs_.size()) throw Error(ErrorCode::ParseError, "doc_lengths size mismatch");
  std::uint64_t total = 0;
  for (auto l : index.lengths_) total += l;
  index.avg_length_ = static_cast<double>(total) / static_cast<double>(index.docs_.size());
  for (std::uint32_t i = 0; i < index.docs_.size(); ++i) {
    if (!index.by_id_.emplace(index.docs_[i].id, i).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate document id '" + index.docs_[i].id + "'");
    }
  }
  for (const auto& [lemma, list] : index.postings_) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].doc >= index.docs_.size() || (k > 0 && list[k - 1].doc >= list[k].doc)) {
        throw Error(ErrorCode::ParseError, "corrupt posting list for '" + lemma + "'");
      }
    }
  }
  return index;
}

std::string InvertedIndex::digest() const { return detail::hex64(detail::fnv1a64(serialize())); }

}  // namespace evoquery
