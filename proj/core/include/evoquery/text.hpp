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
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evoquery {

// Turns raw text into a lemma stream. The default implementation is a
// deterministic suffix stripper; a dictionary lemmatizer can be plugged in
// by implementing this interface.
class Normalizer {
 public:
  virtual ~Normalizer() = default;
  virtual std::vector<std::string> normalize(std::string_view raw) const = 0;
};

// Lowercases ASCII letters, splits on everything that is not a letter (bytes
// >= 0x80 are kept so UTF-8 words survive), drops tokens shorter than two
// code points, strips one of "ing" / "ed" / "s" (first rule that leaves at
// least three code points), then removes stop words.
class SuffixNormalizer final : public Normalizer {
 public:
  SuffixNormalizer() = default;
  explicit SuffixNormalizer(std::set<std::string, std::less<>> stop_words)
      : stop_words_(std::move(stop_words)) {}

  std::vector<std::string> normalize(std::string_view raw) const override;

  const std::set<std::string, std::less<>>& stop_words() const noexcept { return stop_words_; }

 private:
  std::set<std::string, std::less<>> stop_words_;
};

// One word per line; blank lines and lines starting with '#' are ignored.
std::set<std::string, std::less<>> load_stop_words(const std::filesystem::path& path);

// Suffix normalization with an empty stop list.
std::vector<std::string> normalize_text(std::string_view raw);

std::string stem_suffix(std::string_view token);
std::size_t utf8_length(std::string_view s) noexcept;

// Sparse non-negative lemma weights with an eagerly maintained Euclidean norm.
class TermVector {
 public:
  using Entries = std::map<std::string, double, std::less<>>;

  TermVector() = default;

  // Length-normalized term frequencies: count / total. Empty input yields an
  // empty vector.
  static TermVector from_lemmas(std::span<const std::string> lemmas);

  const Entries& entries() const noexcept { return entries_; }
  double norm() const noexcept { return norm_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  double weight(std::string_view lemma) const;
  double dot(const TermVector& other) const;
  double sum() const;

  // Weight must be finite and >= 0.
  void set(std::string lemma, double weight);
  void erase(std::string_view lemma);
  // this += scale * other
  void add_scaled(const TermVector& other, double scale);

  friend bool operator==(const TermVector& a, const TermVector& b) { return a.entries_ == b.entries_; }

 private:
  void recompute_norm();

  Entries entries_;
  double norm_ = 0.0;
};

// Cosine similarity clamped to [0, 1]; 0 when either side is empty.
double cosine_similarity(const TermVector& a, const TermVector& b);

}  // namespace evoquery
