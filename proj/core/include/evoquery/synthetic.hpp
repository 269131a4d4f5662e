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
#include <string>
#include <vector>

#include "evoquery/corpus.hpp"
#include "evoquery/evaluation.hpp"

namespace evoquery {

// Planted-topic corpus: a relevant cluster drawn from a target topic,
// distractor clusters whose topics share part of the target vocabulary, and
// background documents drawn from a Zipfian general vocabulary.
struct SyntheticSpec {
  std::size_t documents = 500;
  std::size_t relevant = 25;
  std::size_t distractor_clusters = 4;
  std::size_t distractor_size = 25;
  std::size_t background_vocabulary = 1500;
  std::size_t topic_vocabulary = 30;
  std::size_t shared_with_target = 10;  // target words reused by each distractor topic
  double topic_density = 0.35;  // share of topic words in clustered documents
  std::size_t min_length = 80;
  std::size_t max_length = 160;
  std::size_t hosts = 40;
  std::size_t seed_documents = 2;
  std::uint64_t seed = 7;
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  std::vector<Document> seed_material;
  // Two experts per persona. Relevant cluster: 3 for both personas;
  // distractor clusters: 1 (specialist) and 2 (novice); background: 0.
  std::vector<Judgment> qrels;
  std::vector<std::string> relevant_urls;
};

SyntheticCorpus generate_planted_corpus(const SyntheticSpec& spec);

}  // namespace evoquery
