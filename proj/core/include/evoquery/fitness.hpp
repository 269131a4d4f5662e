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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/provider.hpp"
#include "evoquery/text.hpp"

namespace evoquery {

// Weights of the position, cross-query and semantic components; they must
// sum to 1. host_coeff discounts repeated results from one server.
struct FitnessWeights {
  double w_position = 0.33;
  double w_crossquery = 0.33;
  double w_semantic = 0.34;
  double host_coeff = 0.75;
  std::size_t f1 = 20;  // results per query
  std::size_t f2 = 20;  // results per population
  std::size_t f3 = 20;  // results across all generations

  // Throws ConfigInvalid.
  void validate() const;
};

struct ScoredResult {
  SearchHit hit;
  double f = 0.0;  // provider rank
  double p = 0.0;  // share of the population's queries that returned the url
  double s = 0.0;  // similarity to the reference text
  double a = 1.0;  // environment factor
  double w = 0.0;
};

struct ReferenceContribution {
  std::uint64_t generation = 0;
  std::string doc_url;
};

// Adaptive lemma profile of the target topic, seeded from the expert
// material and extended with top results as the run progresses.
struct ReferenceText {
  TermVector vector;
  std::size_t capacity = 100;
  std::vector<ReferenceContribution> provenance;
  std::uint64_t rounds = 0;

  // Keeps the `capacity` heaviest lemmas (ties by lemma ascending).
  static ReferenceText from_seed(const TermVector& seed, std::size_t capacity);
  std::string digest() const;
};

// (list_length - position + 1) / list_length. Throws PositionOutOfRange.
double position_score(std::size_t position, std::size_t list_length);

// Fraction of records whose hit list contains the url.
double cross_query_score(std::string_view doc_url, std::span<const ProviderQueryRecord> records);

// Cosine between the TF vector of title + snippet and the reference vector.
double semantic_score(const SearchHit& hit, const ReferenceText& ref, const Normalizer& normalizer);
double semantic_score(const SearchHit& hit, const ReferenceText& ref);

// a * (w_position f + w_crossquery p + w_semantic s). Throws
// ComponentOutOfRange when any input leaves [0, 1].
double result_fitness(double f, double p, double s, double a, const FitnessWeights& weights);

// Orders by w descending, url ascending.
void sort_by_fitness(std::vector<ScoredResult>& results);

// Input sorted by w descending. The k-th result of a host (k >= 2, in input
// order) is scaled by host_coeff^(k-1); the list is then re-sorted. Results
// with an empty host never collocate.
std::vector<ScoredResult> apply_host_collocation(std::vector<ScoredResult> results, double host_coeff);

// Mean of w over the query's results; 0 for none.
double query_fitness(std::span<const ScoredResult> results);

// Mean of per-query fitness. Throws WrongPopulationSize when empty or when
// the count differs from `expected_size`.
double population_fitness(std::span<const double> query_fitnesses,
                          std::optional<std::size_t> expected_size = std::nullopt);

// Blends the top (up to 3, deduplicated by url) results into the reference:
// the mean of their TF vectors is added with weight 0.5^round, then the
// lightest lemmas are evicted beyond capacity.
ReferenceText update_reference_text(ReferenceText ref, std::span<const ScoredResult> top_results,
                                    std::uint64_t generation, const Normalizer& normalizer);
ReferenceText update_reference_text(ReferenceText ref, std::span<const ScoredResult> top_results,
                                    std::uint64_t generation);

inline constexpr std::size_t kReferenceContributors = 3;
inline constexpr double kReferenceDecay = 0.5;

// Per population: deduplicate by url keeping the maximum w, then keep the
// top f2.
std::vector<ScoredResult> aggregate_population(std::span<const std::vector<ScoredResult>> per_query,
                                               std::size_t f2);

// Running top-f3 list across generations, deduplicated by url.
class GlobalTopList {
 public:
  explicit GlobalTopList(std::size_t f3) : cap_(f3) {}

  void merge(std::span<const ScoredResult> results);
  const std::vector<ScoredResult>& results() const noexcept { return results_; }

 private:
  std::size_t cap_;
  std::vector<ScoredResult> results_;
};

// Full pipeline: per_generation[g][q] is the scored list of query q in
// generation g (already truncated to f1).
std::vector<ScoredResult> aggregate_results(
    std::span<const std::vector<std::vector<ScoredResult>>> per_generation, const FitnessWeights& caps);

}  // namespace evoquery
