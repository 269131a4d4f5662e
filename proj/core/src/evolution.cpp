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

#include "evoquery/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <set>

#include "evoquery/error.hpp"

namespace evoquery {

double RunLedger::best_query_fitness(std::size_t generation) const {
  const auto& qs = generations.at(generation).queries;
  double best = 0.0;
  for (const auto& q : qs) best = std::max(best, q.fitness);
  return best;
}

namespace {

// Indices ordered by fitness descending, rendered query ascending.
std::vector<std::size_t> rank_order(std::span<const QueryGenome> genomes, std::span<const double> fitness) {
  std::vector<std::string> rendered;
  rendered.reserve(genomes.size());
  for (const auto& g : genomes) rendered.push_back(render_query(g));
  std::vector<std::size_t> idx(genomes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
    return rendered[a] < rendered[b];
  });
  return idx;
}

bool beats(std::span<const QueryGenome> genomes, std::span<const double> fitness, std::size_t a, std::size_t b) {
  if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
  return render_query(genomes[a]) < render_query(genomes[b]);
}

}  // namespace

std::size_t tournament_pick(std::span<const QueryGenome> genomes, std::span<const double> fitness, Rng& rng) {
  const std::size_t n = genomes.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "tournament over an empty population");
  if (n == 1) return 0;
  const std::size_t first = rng.uniform_index(n);
  std::size_t second = rng.uniform_index(n - 1);
  if (second >= first) ++second;
  return beats(genomes, fitness, first, second) ? first : second;
}

std::vector<QueryGenome> select_survivors(std::span<const QueryGenome> genomes, std::span<const double> fitness,
                                          const KeywordPool& pool, double m1, Rng& rng) {
  if (genomes.empty() || genomes.size() != fitness.size()) {
    throw Error(ErrorCode::WrongPopulationSize, "selection needs one fitness value per genome");
  }
  const std::size_t g2 = genomes.size();
  if (g2 == 1) return {mutate(genomes[0], pool, m1, rng)};

  const std::size_t elites = (g2 + 1) / 2;
  const auto order = rank_order(genomes, fitness);
  std::vector<QueryGenome> next;
  next.reserve(g2);
  for (std::size_t i = 0; i < elites; ++i) next.push_back(genomes[order[i]]);
  while (next.size() < g2) {
    const std::size_t pa = tournament_pick(genomes, fitness, rng);
    const std::size_t pb = tournament_pick(genomes, fitness, rng);
    auto [c1, c2] = crossover(genomes[pa], genomes[pb], rng);
    next.push_back(mutate(c1, pool, m1, rng));
    if (next.size() < g2) next.push_back(mutate(c2, pool, m1, rng));
  }
  return next;
}

std::vector<QueryEntry> score_population(std::span<const QueryGenome> genomes,
                                         std::vector<ProviderQueryRecord> records,
                                         std::span<const ProviderQueryRecord> basis, const ReferenceText& reference,
                                         const RunConfig& config, const Normalizer& normalizer) {
  if (genomes.size() != records.size()) throw Error(ErrorCode::InvalidArgument, "one record per genome expected");
  const FitnessWeights weights = config.weights();
  std::vector<QueryEntry> entries;
  entries.reserve(genomes.size());
  for (std::size_t j = 0; j < genomes.size(); ++j) {
    QueryEntry e;
    e.genome = genomes[j];
    e.record = std::move(records[j]);
    for (const auto& hit : e.record.hits) {
      ScoredResult r;
      r.hit = hit;
      r.f = position_score(hit.position, config.f1);
      r.p = cross_query_score(hit.doc_url, basis);
      r.s = semantic_score(hit, reference, normalizer);
      r.a = config.a_factor;
      r.w = result_fitness(r.f, r.p, r.s, r.a, weights);
      e.results.push_back(std::move(r));
    }
    sort_by_fitness(e.results);
    e.results = apply_host_collocation(std::move(e.results), config.f4);
    e.fitness = query_fitness(e.results);
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

std::vector<ProviderQueryRecord> execute_population(std::span<const QueryGenome> genomes, SearchProvider& provider,
                                                    const RunConfig& config, std::uint64_t generation) {
  const bool logical_clock = provider.replayable();
  auto run_one = [&](std::size_t j) {
    ProviderQueryRecord rec;
    rec.query_string = render_query(genomes[j]);
    rec.genome_id = "g" + std::to_string(generation) + "q" + std::to_string(j);
    rec.provider_name = provider.name();
    if (logical_clock) {
      rec.issued_at = generation * genomes.size() + j;
    } else {
      rec.issued_at = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                     std::chrono::system_clock::now().time_since_epoch())
                                                     .count());
    }
    rec.hits = provider.execute(rec.query_string, config.f1);
    if (rec.hits.size() > config.f1) rec.hits.resize(config.f1);
    return rec;
  };

  std::vector<ProviderQueryRecord> records;
  records.reserve(genomes.size());
  if (provider.concurrent() && genomes.size() > 1) {
    std::vector<std::future<ProviderQueryRecord>> futures;
    futures.reserve(genomes.size());
    for (std::size_t j = 0; j < genomes.size(); ++j) futures.push_back(std::async(std::launch::async, run_one, j));
    for (auto& f : futures) records.push_back(f.get());
  } else {
    for (std::size_t j = 0; j < genomes.size(); ++j) records.push_back(run_one(j));
  }
  return records;
}

struct Incumbent {
  QueryGenome genome;
  double fitness = 0.0;
};

RunLedger run_generations(const RunConfig& config, SearchProvider& provider, KeywordPool pool, Population population,
                          ReferenceText reference, const Normalizer& normalizer, const GenerationObserver& observer) {
  RunLedger ledger;
  ledger.config = config;
  ledger.provider_name = provider.name();

  GlobalTopList global(config.f3);
  std::vector<ProviderQueryRecord> frozen_basis;
  std::optional<Incumbent> incumbent;

  for (std::uint64_t gen = 0; gen < config.e1; ++gen) {
    auto records = execute_population(population.genomes, provider, config, gen);
    std::vector<ProviderQueryRecord> basis;
    if (config.freeze_reference && gen > 0) {
      basis = frozen_basis;
    } else {
      basis = records;
      if (config.freeze_reference) frozen_basis = records;
    }

    GenerationRecord rec;
    rec.generation = gen;
    rec.reference_digest = reference.digest();
    rec.queries = score_population(population.genomes, std::move(records), basis, reference, config, normalizer);

    std::vector<double> fitness;
    std::vector<std::vector<ScoredResult>> lists;
    for (const auto& q : rec.queries) {
      fitness.push_back(q.fitness);
      lists.push_back(q.results);
    }
    rec.mean_fitness = population_fitness(fitness, config.g2);

    const double check = std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
    if (std::abs(check - rec.mean_fitness) > 1e-9) {
      throw Error(ErrorCode::LedgerCorrupt, "population fitness disagrees with its query fitnesses");
    }

    const auto population_top = aggregate_population(lists, config.f2);
    global.merge(population_top);

    if (observer) observer(rec);
    ledger.generations.push_back(std::move(rec));

    if (!config.freeze_reference) reference = update_reference_text(std::move(reference), population_top, gen, normalizer);

    if (gen + 1 < config.e1) {
      Rng rng = Rng::derive(config.rng_seed, {1, gen});
      if (config.g2 == 1) {
        // Hill-climb: the mutant challenger replaces the incumbent only when
        // it scores at least as well.
        if (!incumbent || fitness[0] >= incumbent->fitness) incumbent = Incumbent{population.genomes[0], fitness[0]};
        const QueryGenome parent[] = {incumbent->genome};
        const double parent_fitness[] = {incumbent->fitness};
        population.genomes = select_survivors(parent, parent_fitness, pool, config.m1, rng);
      } else {
        population.genomes = select_survivors(population.genomes, fitness, pool, config.m1, rng);
      }
      ++population.generation;
    }
  }
  ledger.pool = std::move(pool);
  ledger.final_results = global.results();
  return ledger;
}

}  // namespace

RunLedger run_evolution(const RunConfig& config, SearchProvider& provider, std::span<const Document> seed_material,
                        const Normalizer& normalizer, const GenerationObserver& observer) {
  config.validate();
  if (seed_material.empty()) throw Error(ErrorCode::ConfigInvalid, "seed material is empty");
  KeywordPool pool = build_keyword_pool(seed_material, config.keyword_pool_size, normalizer);
  auto reference =
      ReferenceText::from_seed(term_weights(merge_seed_material(seed_material), normalizer), config.reference_capacity);
  Population population = seed_population(pool, config.g2, config.g3, config.rng_seed, config.variant);
  return run_generations(config, provider, std::move(pool), std::move(population), std::move(reference), normalizer,
                         observer);
}

RunLedger run_title_baseline(const RunConfig& base, SearchProvider& provider, std::span<const Document> seed_material,
                             const Normalizer& normalizer) {
  if (seed_material.empty()) throw Error(ErrorCode::ConfigInvalid, "seed material is empty");
  RunConfig config = base;
  config.g2 = 1;
  config.e1 = 1;
  QueryGenome genome;
  genome.variant = config.variant;
  std::set<std::string> seen;
  for (const auto& d : seed_material) {
    for (auto& l : normalizer.normalize(d.title)) {
      if (seen.insert(l).second) genome.terms.push_back(std::move(l));
    }
  }
  if (genome.terms.empty()) throw Error(ErrorCode::EmptyDocument, "seed material titles have no lemmas");
  config.g3 = genome.terms.size();
  config.keyword_pool_size = std::max(config.keyword_pool_size, config.g3);
  config.validate();

  KeywordPool pool;
  for (const auto& t : genome.terms) pool.terms.push_back({t, 1.0 / static_cast<double>(genome.terms.size())});
  for (const auto& d : seed_material) pool.source_doc_ids.push_back(d.id);
  auto reference =
      ReferenceText::from_seed(term_weights(merge_seed_material(seed_material), normalizer), config.reference_capacity);
  Population population;
  population.genomes.push_back(std::move(genome));
  return run_generations(config, provider, std::move(pool), std::move(population), std::move(reference), normalizer,
                         {});
}

}  // namespace evoquery
