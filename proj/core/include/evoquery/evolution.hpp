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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evoquery/config.hpp"
#include "evoquery/corpus.hpp"
#include "evoquery/fitness.hpp"
#include "evoquery/genome.hpp"
#include "evoquery/provider.hpp"

namespace evoquery {

struct QueryEntry {
  QueryGenome genome;
  ProviderQueryRecord record;  // query string, hits, provider, issue stamp
  std::vector<ScoredResult> results;  // sorted by w descending after host discount
  double fitness = 0.0;  // w_j
};

struct GenerationRecord {
  std::uint64_t generation = 0;
  std::vector<QueryEntry> queries;
  double mean_fitness = 0.0;  // population fitness over queries
  std::string reference_digest;  // reference text used to score this generation
};

struct RunLedger {
  RunConfig config;
  KeywordPool pool;
  std::string provider_name;
  std::vector<GenerationRecord> generations;
  std::vector<ScoredResult> final_results;  // global top-f3

  double best_query_fitness(std::size_t generation) const;
};

// Elitist truncation: the top ceil(g2/2) genomes by fitness (ties by
// rendered query ascending) survive unchanged; the remaining slots are filled
// with children of binary-tournament parents, each child mutated with m1.
// A population of one yields a single mutated copy of its genome.
std::vector<QueryGenome> select_survivors(std::span<const QueryGenome> genomes, std::span<const double> fitness,
                                          const KeywordPool& pool, double m1, Rng& rng);

inline constexpr std::size_t kTournamentSize = 2;

// Binary tournament over the population; returns the winner's index.
std::size_t tournament_pick(std::span<const QueryGenome> genomes, std::span<const double> fitness, Rng& rng);

// Called after each generation is scored.
using GenerationObserver = std::function<void(const GenerationRecord&)>;

// Seeds a population from the seed material's keyword pool and runs e1
// generations against the provider. Deterministic for a deterministic
// provider and fixed rng_seed.
RunLedger run_evolution(const RunConfig& config, SearchProvider& provider, std::span<const Document> seed_material,
                        const Normalizer& normalizer, const GenerationObserver& observer = {});

// No-GA baseline: a single query built from the distinct title lemmas of the
// seed material, one generation, population of one.
RunLedger run_title_baseline(const RunConfig& config, SearchProvider& provider,
                             std::span<const Document> seed_material, const Normalizer& normalizer);

// Scores one population's provider records. `basis` holds the records the
// cross-query component is measured against.
std::vector<QueryEntry> score_population(std::span<const QueryGenome> genomes,
                                         std::vector<ProviderQueryRecord> records,
                                         std::span<const ProviderQueryRecord> basis, const ReferenceText& reference,
                                         const RunConfig& config, const Normalizer& normalizer);

}  // namespace evoquery
