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

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "evoquery/evaluation.hpp"
#include "evoquery/evolution.hpp"
#include "evoquery/synthetic.hpp"

namespace {

using namespace evoquery;

const SyntheticCorpus& corpus(std::size_t documents) {
  static std::map<std::size_t, SyntheticCorpus> cache;
  auto it = cache.find(documents);
  if (it == cache.end()) {
    SyntheticSpec spec;
    spec.documents = documents;
    it = cache.emplace(documents, generate_planted_corpus(spec)).first;
  }
  return it->second;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto& docs = corpus(static_cast<std::size_t>(state.range(0))).documents;
  for (auto _ : state) benchmark::DoNotOptimize(InvertedIndex::build(docs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_OfflineExecute(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  OfflineProvider provider(std::make_shared<const InvertedIndex>(InvertedIndex::build(c.documents)));
  const auto pool = build_keyword_pool(c.seed_material, 50, SuffixNormalizer{});
  const auto population = seed_population(pool, 64, 6, 3);
  std::vector<std::string> queries;
  for (const auto& g : population.genomes) queries.push_back(render_query(g));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(provider.execute(queries[i++ % queries.size()], 20));
}
BENCHMARK(BM_OfflineExecute)->Arg(500)->Arg(5000)->Unit(benchmark::kMicrosecond);

void BM_RunEvolution(benchmark::State& state) {
  const auto& c = corpus(500);
  OfflineProvider provider(std::make_shared<const InvertedIndex>(InvertedIndex::build(c.documents)));
  RunConfig config;
  config.e1 = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_evolution(config, provider, c.seed_material, SuffixNormalizer{}));
}
BENCHMARK(BM_RunEvolution)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Ndcg(benchmark::State& state) {
  const auto& c = corpus(500);
  const GradeTable grades(c.qrels);
  std::vector<std::string> urls;
  for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) urls.push_back(c.documents[i].url);
  const auto list = make_ranked_list("bench", urls);
  for (auto _ : state) benchmark::DoNotOptimize(ndcg(list, grades, Persona::Specialist, urls.size()));
}
BENCHMARK(BM_Ndcg)->Arg(20)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
