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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "evoquery/error.hpp"
#include "evoquery/fitness.hpp"
#include "evoquery/rng.hpp"

namespace evoquery {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

ScoredResult result(std::string url, std::string host, double w) {
  ScoredResult r;
  r.hit.doc_url = std::move(url);
  r.hit.doc_host = std::move(host);
  r.w = w;
  return r;
}

ProviderQueryRecord record(std::vector<std::string> urls) {
  ProviderQueryRecord r;
  std::size_t pos = 1;
  for (auto& u : urls) r.hits.push_back({std::move(u), "", "", "", pos++});
  return r;
}

TermVector vec(std::initializer_list<std::pair<const char*, double>> entries) {
  TermVector v;
  for (const auto& [k, w] : entries) v.set(k, w);
  return v;
}

TEST(PositionScore, Examples) {
  EXPECT_DOUBLE_EQ(position_score(1, 20), 1.0);
  EXPECT_DOUBLE_EQ(position_score(11, 20), 0.5);
  EXPECT_EQ(code_of([] { position_score(21, 20); }), ErrorCode::PositionOutOfRange);
  EXPECT_EQ(code_of([] { position_score(0, 20); }), ErrorCode::PositionOutOfRange);
}

TEST(PositionScore, StrictlyDecreasing) {
  for (std::size_t p = 1; p < 20; ++p) EXPECT_GT(position_score(p, 20), position_score(p + 1, 20));
  EXPECT_GT(position_score(20, 20), 0.0);
}

TEST(CrossQueryScore, Examples) {
  std::vector<ProviderQueryRecord> recs;
  for (int i = 0; i < 8; ++i) recs.push_back(record(i < 4 ? std::vector<std::string>{"u", "v"} : std::vector<std::string>{"v"}));
  EXPECT_DOUBLE_EQ(cross_query_score("u", recs), 0.5);
  EXPECT_DOUBLE_EQ(cross_query_score("v", recs), 1.0);
  EXPECT_DOUBLE_EQ(cross_query_score("w", recs), 0.0);
}

TEST(SemanticScore, Examples) {
  SearchHit hit{"u", "h", "alpha", "beta", 1};
  ReferenceText ref;
  ref.vector = vec({{"alpha", 1.0}});
  EXPECT_NEAR(semantic_score(hit, ref), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(semantic_score(hit, ref), 0.707107, 5e-7);

  ref.vector = vec({{"alpha", 3.0}, {"beta", 3.0}});
  EXPECT_NEAR(semantic_score(hit, ref), 1.0, 1e-12);

  ref.vector = vec({{"gamma", 1.0}});
  EXPECT_EQ(semantic_score(hit, ref), 0.0);

  ref.vector = TermVector{};
  EXPECT_EQ(semantic_score(hit, ref), 0.0);
  SearchHit empty{"u", "h", "", "", 1};
  ref.vector = vec({{"alpha", 1.0}});
  EXPECT_EQ(semantic_score(empty, ref), 0.0);
}

TEST(ResultFitness, Examples) {
  const FitnessWeights w;
  EXPECT_NEAR(result_fitness(1, 1, 1, 1, w), 1.0, 1e-12);
  EXPECT_EQ(result_fitness(0.7, 0.2, 0.9, 0, w), 0.0);
  EXPECT_NEAR(result_fitness(1, 0, 0, 1, w), 0.33, 1e-12);
  EXPECT_EQ(code_of([&] { result_fitness(1.1, 0, 0, 1, w); }), ErrorCode::ComponentOutOfRange);
  EXPECT_EQ(code_of([&] { result_fitness(0, -0.1, 0, 1, w); }), ErrorCode::ComponentOutOfRange);
  EXPECT_EQ(code_of([&] { result_fitness(0, 0, NAN, 1, w); }), ErrorCode::ComponentOutOfRange);
}

TEST(ResultFitness, MonotoneAndBounded) {
  const FitnessWeights w;
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    double c[4];
    for (double& x : c) x = rng.uniform01();
    const double base = result_fitness(c[0], c[1], c[2], c[3], w);
    ASSERT_GE(base, 0.0);
    ASSERT_LE(base, 1.0);
    for (int k = 0; k < 4; ++k) {
      double d[4] = {c[0], c[1], c[2], c[3]};
      d[k] = d[k] + (1.0 - d[k]) * rng.uniform01();
      ASSERT_GE(result_fitness(d[0], d[1], d[2], d[3], w), base);
    }
  }
}

TEST(FitnessWeights, Validate) {
  FitnessWeights w;
  EXPECT_NO_THROW(w.validate());
  w.w_semantic = 0.5;
  EXPECT_EQ(code_of([&] { w.validate(); }), ErrorCode::ConfigInvalid);
  FitnessWeights h;
  h.host_coeff = 0.0;
  EXPECT_EQ(code_of([&] { h.validate(); }), ErrorCode::ConfigInvalid);
}

TEST(HostCollocation, DistinctHostsUnchanged) {
  std::vector<ScoredResult> in{result("a", "h1", 0.8), result("b", "h2", 0.7)};
  const auto out = apply_host_collocation(in, 0.75);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].w, 0.8);
  EXPECT_EQ(out[1].w, 0.7);
}

TEST(HostCollocation, SameHostExamples) {
  auto out = apply_host_collocation({result("a", "h", 0.8), result("b", "h", 0.8)}, 0.75);
  EXPECT_NEAR(out[1].w, 0.6, 1e-12);
  out = apply_host_collocation({result("a", "h", 0.9), result("b", "h", 0.85), result("c", "h", 0.8)}, 0.75);
  EXPECT_NEAR(out[2].w, 0.45, 1e-12);
  EXPECT_EQ(out[2].hit.doc_url, "c");
}

TEST(HostCollocation, ResortsByAdjustedWeight) {
  const auto out = apply_host_collocation({result("a", "h", 0.8), result("b", "h", 0.79), result("c", "x", 0.7)}, 0.75);
  EXPECT_EQ(out[0].hit.doc_url, "a");
  EXPECT_EQ(out[1].hit.doc_url, "c");
  EXPECT_EQ(out[2].hit.doc_url, "b");
}

TEST(HostCollocation, NeverIncreasesAndIdentityCases) {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<ScoredResult> in;
    const std::size_t n = 1 + rng.uniform_index(20);
    for (std::size_t i = 0; i < n; ++i) {
      in.push_back(result("u" + std::to_string(i), "h" + std::to_string(rng.uniform_index(4)), rng.uniform01()));
    }
    sort_by_fitness(in);
    const auto out = apply_host_collocation(in, 0.75);
    std::map<std::string, double> before;
    for (const auto& r : in) before[r.hit.doc_url] = r.w;
    for (const auto& r : out) EXPECT_LE(r.w, before[r.hit.doc_url]);
    const auto same = apply_host_collocation(in, 1.0);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(same[i].w, in[i].w);
  }
}

TEST(QueryFitness, Examples) {
  std::vector<ScoredResult> rs{result("a", "", 1.0), result("b", "", 0.5), result("c", "", 0.0)};
  EXPECT_DOUBLE_EQ(query_fitness(rs), 0.5);
  std::vector<ScoredResult> one{result("a", "", 0.7)};
  EXPECT_DOUBLE_EQ(query_fitness(one), 0.7);
  EXPECT_EQ(query_fitness({}), 0.0);
}

TEST(PopulationFitness, Examples) {
  const std::vector<double> q{0.2, 0.4, 0.6, 0.8};
  EXPECT_NEAR(population_fitness(q), 0.5, 1e-15);
  const std::vector<double> c(8, 0.37);
  EXPECT_NEAR(population_fitness(c), 0.37, 1e-15);
  EXPECT_EQ(code_of([] { population_fitness({}); }), ErrorCode::WrongPopulationSize);
  EXPECT_EQ(code_of([&] { population_fitness(q, 8); }), ErrorCode::WrongPopulationSize);
}

TEST(FitnessMeans, NaiveOracles) {
  Rng rng(17);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.uniform_index(40);
    std::vector<ScoredResult> rs;
    std::vector<double> ws;
    for (std::size_t i = 0; i < n; ++i) {
      ws.push_back(rng.uniform01());
      rs.push_back(result("u", "", ws.back()));
    }
    double sum = 0.0;
    for (double w : ws) sum += w;
    EXPECT_NEAR(query_fitness(rs), sum / static_cast<double>(n), 1e-12);
    EXPECT_NEAR(population_fitness(ws), sum / static_cast<double>(n), 1e-12);
  }
}

TEST(ReferenceText, EmptyTopResultsUnchanged) {
  auto ref = ReferenceText::from_seed(vec({{"alpha", 0.5}, {"beta", 0.5}}), 100);
  const auto out = update_reference_text(ref, {}, 1);
  EXPECT_EQ(out.vector.entries(), ref.vector.entries());
  EXPECT_EQ(out.rounds, 0u);
  EXPECT_TRUE(out.provenance.empty());
}

TEST(ReferenceText, EvictsMinimumAtCapacity) {
  auto ref = ReferenceText::from_seed(vec({{"alpha", 0.5}, {"beta", 0.3}, {"gamma", 0.2}}), 3);
  ScoredResult r = result("http://x.example/1", "x.example", 0.9);
  r.hit.title = "delta";
  const std::vector<ScoredResult> top{r};
  const auto out = update_reference_text(ref, top, 1);
  EXPECT_EQ(out.vector.entries().size(), 3u);
  EXPECT_FALSE(out.vector.entries().contains("gamma"));
  EXPECT_NEAR(out.vector.weight("delta"), 0.5, 1e-15);  // TF 1 at decay 0.5^1
  EXPECT_EQ(out.provenance.size(), 1u);
  EXPECT_EQ(out.provenance[0].generation, 1u);
}

TEST(ReferenceText, DedupesByUrlAndCapsContributors) {
  auto ref = ReferenceText::from_seed(vec({{"alpha", 1.0}}), 100);
  std::vector<ScoredResult> top;
  for (const char* u : {"a", "a", "b", "c", "d"}) {
    auto r = result(u, "", 0.5);
    r.hit.title = std::string("word") + u + u;
    top.push_back(r);
  }
  const auto out = update_reference_text(ref, top, 2);
  ASSERT_EQ(out.provenance.size(), 3u);
  EXPECT_EQ(out.provenance[0].doc_url, "a");
  EXPECT_EQ(out.provenance[1].doc_url, "b");
  EXPECT_EQ(out.provenance[2].doc_url, "c");
  EXPECT_FALSE(out.vector.entries().contains("worddd"));
}

TEST(ReferenceText, CapacityInvariant) {
  Rng rng(8);
  auto ref = ReferenceText::from_seed(vec({{"seedaa", 1.0}}), 5);
  for (std::uint64_t g = 1; g <= 20; ++g) {
    std::vector<ScoredResult> top;
    for (int i = 0; i < 3; ++i) {
      auto r = result("u" + std::to_string(g) + "_" + std::to_string(i), "", 0.5);
      r.hit.title = "lemma" + std::to_string(rng.uniform_index(50)) + "x lemma" + std::to_string(rng.uniform_index(50)) + "x";
      top.push_back(r);
    }
    ref = update_reference_text(ref, top, g);
    ASSERT_LE(ref.vector.entries().size(), 5u);
  }
}

TEST(Aggregate, MaxDedup) {
  std::vector<std::vector<ScoredResult>> per_query{{result("u", "", 0.4)}, {result("u", "", 0.6)}};
  const auto out = aggregate_population(per_query, 20);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].w, 0.6);
}

TEST(Aggregate, PopulationCap) {
  std::vector<std::vector<ScoredResult>> per_query(1);
  for (int i = 0; i < 25; ++i) per_query[0].push_back(result("u" + std::to_string(100 + i), "", i / 25.0));
  const auto out = aggregate_population(per_query, 20);
  ASSERT_EQ(out.size(), 20u);
  EXPECT_EQ(out.front().hit.doc_url, "u124");
  EXPECT_EQ(out.back().hit.doc_url, "u105");
}

TEST(Aggregate, EmptyInputs) {
  EXPECT_TRUE(aggregate_results({}, FitnessWeights{}).empty());
  std::vector<std::vector<std::vector<ScoredResult>>> gens(2);
  EXPECT_TRUE(aggregate_results(gens, FitnessWeights{}).empty());
}

TEST(Aggregate, GlobalCapAcrossGenerations) {
  FitnessWeights caps;
  caps.f1 = 3;
  caps.f2 = 4;
  caps.f3 = 5;
  std::vector<std::vector<std::vector<ScoredResult>>> gens;
  gens.push_back({{result("a", "", 0.1), result("b", "", 0.2), result("c", "", 0.3), result("z", "", 0.99)}});
  gens.push_back({{result("d", "", 0.4), result("e", "", 0.5)}, {result("a", "", 0.9), result("f", "", 0.05)}});
  const auto out = aggregate_results(gens, caps);
  std::vector<std::string> urls;
  for (const auto& r : out) urls.push_back(r.hit.doc_url);
  // z is beyond f1 in its list.
  EXPECT_EQ(urls, (std::vector<std::string>{"a", "e", "d", "c", "b"}));
}

TEST(Aggregate, ScaleInvariantOrder) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<std::vector<ScoredResult>>> gens(3);
    for (auto& g : gens) {
      g.resize(4);
      for (auto& q : g) {
        for (int i = 0; i < 6; ++i) q.push_back(result("u" + std::to_string(rng.uniform_index(30)), "", rng.uniform01()));
      }
    }
    auto scaled = gens;
    const double k = 0.01 + rng.uniform01() * 5.0;
    for (auto& g : scaled)
      for (auto& q : g)
        for (auto& r : q) r.w *= k;
    const auto a = aggregate_results(gens, FitnessWeights{});
    const auto b = aggregate_results(scaled, FitnessWeights{});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].hit.doc_url, b[i].hit.doc_url);
  }
}

}  // namespace
}  // namespace evoquery
