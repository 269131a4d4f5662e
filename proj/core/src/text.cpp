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

#include "evoquery/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "evoquery/error.hpp"

namespace evoquery {

std::size_t utf8_length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

namespace {

bool strip_if(std::string& token, std::string_view suffix) {
  if (token.size() < suffix.size()) return false;
  if (token.compare(token.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
  std::string_view remainder(token.data(), token.size() - suffix.size());
  if (utf8_length(remainder) < 3) return false;
  token.resize(remainder.size());
  return true;
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::string stem_suffix(std::string_view token) {
  std::string out(token);
  if (strip_if(out, "ing")) return out;
  if (strip_if(out, "ed")) return out;
  strip_if(out, "s");
  return out;
}

std::vector<std::string> SuffixNormalizer::normalize(std::string_view raw) const {
  std::vector<std::string> lemmas;
  std::string token;
  auto flush = [&] {
    if (utf8_length(token) >= 2) {
      std::string lemma = stem_suffix(token);
      if (!stop_words_.contains(lemma)) lemmas.push_back(std::move(lemma));
    }
    token.clear();
  };
  for (unsigned char c : raw) {
    if (is_word_byte(c)) {
      token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return lemmas;
}

std::set<std::string, std::less<>> load_stop_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open stop-word list " + path.string());
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::transform(line.begin(), line.end(), line.begin(), [](unsigned char c) {
      return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    words.insert(line);
  }
  return words;
}

std::vector<std::string> normalize_text(std::string_view raw) {
  static const SuffixNormalizer normalizer;
  return normalizer.normalize(raw);
}

TermVector TermVector::from_lemmas(std::span<const std::string> lemmas) {
  TermVector v;
  if (lemmas.empty()) return v;
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& l : lemmas) ++counts[l];
  const double total = static_cast<double>(lemmas.size());
  for (auto& [lemma, count] : counts) v.entries_.emplace(lemma, static_cast<double>(count) / total);
  v.recompute_norm();
  return v;
}

double TermVector::weight(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? 0.0 : it->second;
}

double TermVector::dot(const TermVector& other) const {
  const TermVector& small = size() <= other.size() ? *this : other;
  const TermVector& large = size() <= other.size() ? other : *this;
  double acc = 0.0;
  for (const auto& [lemma, w] : small.entries_) acc += w * large.weight(lemma);
  return acc;
}

double TermVector::sum() const {
  double acc = 0.0;
  for (const auto& [lemma, w] : entries_) acc += w;
  return acc;
}

void TermVector::set(std::string lemma, double weight) {
  if (!std::isfinite(weight) || weight < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "term weight must be finite and non-negative");
  }
  entries_[std::move(lemma)] = weight;
  recompute_norm();
}

void TermVector::erase(std::string_view lemma) {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) return;
  entries_.erase(it);
  recompute_norm();
}

void TermVector::add_scaled(const TermVector& other, double scale) {
  if (!std::isfinite(scale) || scale < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "scale must be finite and non-negative");
  }
  for (const auto& [lemma, w] : other.entries_) entries_[lemma] += scale * w;
  recompute_norm();
}

void TermVector::recompute_norm() {
  double sq = 0.0;
  for (const auto& [lemma, w] : entries_) sq += w * w;
  norm_ = std::sqrt(sq);
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
  if (a.empty() || b.empty() || a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace evoquery
