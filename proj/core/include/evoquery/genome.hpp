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
#include <string_view>
#include <utility>
#include <vector>

#include "evoquery/corpus.hpp"
#include "evoquery/rng.hpp"

namespace evoquery {

// Quoted: every term must match as written. Lemma: word forms allowed.
enum class Variant { Quoted, Lemma };

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view s);

// One GA individual: an ordered list of distinct lemmas. Order only matters
// for rendering; set-level invariants ignore it.
struct QueryGenome {
  std::vector<std::string> terms;
  Variant variant = Variant::Lemma;

  friend bool operator==(const QueryGenome&, const QueryGenome&) = default;
};

struct Population {
  std::vector<QueryGenome> genomes;
  std::uint64_t generation = 0;
};

// g2 genomes of g3 distinct terms, sampled without replacement with
// probability proportional to pool weight. Genome i draws from its own
// stream derived from (rng_seed, i).
Population seed_population(const KeywordPool& pool, std::size_t g2, std::size_t g3,
                           std::uint64_t rng_seed, Variant variant = Variant::Lemma);

// Uniform exchange over the parents' symmetric difference: terms shared by
// both parents stay in both children; the i-th exclusive term of `a` and the
// i-th exclusive term of `b` swap with probability 1/2.
std::pair<QueryGenome, QueryGenome> crossover(const QueryGenome& a, const QueryGenome& b, Rng& rng);

// With probability m1 replaces one uniformly chosen term with a
// weight-proportional draw from pool terms not already in the genome.
QueryGenome mutate(const QueryGenome& g, const KeywordPool& pool, double m1, Rng& rng);

std::string render_query(const QueryGenome& g);

bool has_distinct_terms(const QueryGenome& g);

}  // namespace evoquery
