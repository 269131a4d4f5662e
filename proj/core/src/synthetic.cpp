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

#include "evoquery/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "evoquery/error.hpp"
#include "evoquery/rng.hpp"

namespace evoquery {

namespace {

// Consonant-vowel pseudo-words. They end in a vowel, so the suffix stripper
// leaves them unchanged.
std::vector<std::string> make_words(Rng& rng, std::size_t count, std::set<std::string>& taken) {
  static constexpr std::string_view kConsonants = "bdfgklmnprtvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::vector<std::string> words;
  while (words.size() < count) {
    const std::size_t syllables = 2 + rng.uniform_index(3);
    std::string w;
    for (std::size_t s = 0; s < syllables; ++s) {
      w += kConsonants[rng.uniform_index(kConsonants.size())];
      w += kVowels[rng.uniform_index(kVowels.size())];
    }
    if (taken.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

std::vector<double> zipf_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / static_cast<double>(i + 1);
  return w;
}

struct Topic {
  std::vector<std::string> words;
  std::vector<double> weights;
};

std::string draw_text(Rng& rng, std::size_t length, const Topic* topic, double density,
                      const Topic& background) {
  std::string text;
  for (std::size_t i = 0; i < length; ++i) {
    const bool topical = topic != nullptr && rng.bernoulli(density);
    const Topic& src = topical ? *topic : background;
    if (!text.empty()) text += (i % 12 == 0) ? ". " : " ";
    text += src.words[rng.weighted_index(src.weights)];
  }
  if (!text.empty()) text += ".";
  return text;
}

std::string title_from(Rng& rng, const Topic* topic, const Topic& background) {
  const std::size_t n = 4 + rng.uniform_index(3);
  std::string title;
  for (std::size_t i = 0; i < n; ++i) {
    const Topic& src = (topic != nullptr && i % 2 == 0) ? *topic : background;
    if (!title.empty()) title += ' ';
    std::string w = src.words[rng.weighted_index(src.weights)];
    if (i == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    title += w;
  }
  return title;
}

}  // namespace

SyntheticCorpus generate_planted_corpus(const SyntheticSpec& spec) {
  const std::size_t clustered = spec.relevant + spec.distractor_clusters * spec.distractor_size;
  if (clustered > spec.documents) throw Error(ErrorCode::InvalidArgument, "clusters exceed the document count");
  if (spec.shared_with_target > spec.topic_vocabulary || spec.hosts == 0 || spec.min_length == 0 ||
      spec.max_length < spec.min_length) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent synthetic corpus parameters");
  }
  Rng rng(spec.seed);
  std::set<std::string> taken;

  Topic background{make_words(rng, spec.background_vocabulary, taken), zipf_weights(spec.background_vocabulary)};
  Topic target{make_words(rng, spec.topic_vocabulary, taken), zipf_weights(spec.topic_vocabulary)};
  std::vector<Topic> distractors;
  for (std::size_t k = 0; k < spec.distractor_clusters; ++k) {
    Topic t;
    // Borrow a random subset of the target vocabulary.
    std::vector<std::string> pool = target.words;
    for (std::size_t i = 0; i < spec.shared_with_target; ++i) {
      const std::size_t pick = rng.uniform_index(pool.size());
      t.words.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    auto own = make_words(rng, spec.topic_vocabulary - spec.shared_with_target, taken);
    t.words.insert(t.words.end(), own.begin(), own.end());
    t.weights = zipf_weights(t.words.size());
    distractors.push_back(std::move(t));
  }

  // Cluster membership: 0 = background, 1 = relevant, 2 + k = distractor k.
  std::vector<std::size_t> label(spec.documents, 0);
  for (std::size_t i = 0; i < spec.relevant; ++i) label[i] = 1;
  for (std::size_t k = 0; k < spec.distractor_clusters; ++k) {
    for (std::size_t i = 0; i < spec.distractor_size; ++i) label[spec.relevant + k * spec.distractor_size + i] = 2 + k;
  }
  for (std::size_t i = label.size(); i > 1; --i) std::swap(label[i - 1], label[rng.uniform_index(i)]);

  SyntheticCorpus out;
  char id[32];
  for (std::size_t i = 0; i < spec.documents; ++i) {
    std::snprintf(id, sizeof id, "d%04zu", i);
    Document d;
    d.id = id;
    d.host = "host" + std::to_string(rng.uniform_index(spec.hosts)) + ".example";
    d.url = "http://" + d.host + "/" + d.id;
    const Topic* topic = label[i] == 0 ? nullptr : label[i] == 1 ? &target : &distractors[label[i] - 2];
    const std::size_t length = spec.min_length + rng.uniform_index(spec.max_length - spec.min_length + 1);
    d.title = title_from(rng, topic, background);
    d.body = draw_text(rng, length, topic, topic == nullptr ? 0.0 : spec.topic_density, background);

    int specialist = 0;
    int novice = 0;
    if (label[i] == 1) {
      specialist = novice = 3;
      out.relevant_urls.push_back(d.url);
    } else if (label[i] >= 2) {
      specialist = 1;
      novice = 2;
    }
    for (const char* expert : {"e1", "e2"}) {
      out.qrels.push_back({d.url, expert, Persona::Specialist, specialist});
      out.qrels.push_back({d.url, expert, Persona::Novice, novice});
    }
    out.documents.push_back(std::move(d));
  }

  for (std::size_t s = 0; s < spec.seed_documents; ++s) {
    Document d;
    d.id = "seed" + std::to_string(s);
    d.title = title_from(rng, &target, background);
    d.body = draw_text(rng, spec.max_length * 3, &target, spec.topic_density + 0.05, background);
    out.seed_material.push_back(std::move(d));
  }
  return out;
}

}  // namespace evoquery
