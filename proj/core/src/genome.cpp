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

#include "evoquery/genome.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "evoquery/error.hpp"

namespace evoquery {

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Quoted ? "quoted" : "lemma";
}

Variant parse_variant(std::string_view s) {
  if (s == "quoted" || s == "Quoted") return Variant::Quoted;
  if (s == "lemma" || s == "Lemma") return Variant::Lemma;
  throw Error(ErrorCode::ConfigInvalid, "unknown query variant '" + std::string(s) + "'");
}

namespace {

std::size_t distinct_count(const KeywordPool& pool) {
  std::set<std::string_view> s;
  for (const auto& t : pool.terms) s.insert(t.lemma);
  return s.size();
}

}  // namespace

Population seed_population(const KeywordPool& pool, std::size_t g2, std::size_t g3,
                           std::uint64_t rng_seed, Variant variant) {
  if (g2 == 0 || g3 == 0) throw Error(ErrorCode::InvalidArgument, "g2 and g3 must be positive");
  if (distinct_count(pool) < g3) {
    throw Error(ErrorCode::PoolTooSmall, "keyword pool has " + std::to_string(pool.size()) +
                                             " terms, genome needs " + std::to_string(g3));
  }
  Population pop;
  pop.genomes.reserve(g2);
  for (std::size_t i = 0; i < g2; ++i) {
    Rng rng = Rng::derive(rng_seed, {0, i});
    std::vector<const KeywordTerm*> remaining;
    for (const auto& t : pool.terms) remaining.push_back(&t);
    QueryGenome g;
    g.variant = variant;
    while (g.terms.size() < g3) {
      std::vector<double> weights;
      weights.reserve(remaining.size());
      for (const auto* t : remaining) weights.push_back(t->weight);
      const std::size_t pick = rng.weighted_index(weights);
      const std::string& lemma = remaining[pick]->lemma;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
      if (std::find(g.terms.begin(), g.terms.end(), lemma) == g.terms.end()) g.terms.push_back(lemma);
    }
    pop.genomes.push_back(std::move(g));
  }
  return pop;
}

std::pair<QueryGenome, QueryGenome> crossover(const QueryGenome& a, const QueryGenome& b, Rng& rng) {
  if (a.variant != b.variant) throw Error(ErrorCode::VariantMismatch, "parents use different query variants");
  if (a.terms.size() != b.terms.size()) {
    throw Error(ErrorCode::InvalidArgument, "parents have different genome lengths");
  }
  const std::unordered_set<std::string_view> in_a(a.terms.begin(), a.terms.end());
  const std::unordered_set<std::string_view> in_b(b.terms.begin(), b.terms.end());
  std::vector<std::size_t> a_only;
  std::vector<std::size_t> b_only;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!in_b.contains(a.terms[i])) a_only.push_back(i);
  }
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    if (!in_a.contains(b.terms[i])) b_only.push_back(i);
  }
  QueryGenome c1 = a;
  QueryGenome c2 = b;
  const std::size_t pairs = std::min(a_only.size(), b_only.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    if (rng.bernoulli(0.5)) std::swap(c1.terms[a_only[i]], c2.terms[b_only[i]]);
  }
  return {std::move(c1), std::move(c2)};
}

QueryGenome mutate(const QueryGenome& g, const KeywordPool& pool, double m1, Rng& rng) {
  if (g.terms.empty()) throw Error(ErrorCode::InvalidArgument, "cannot mutate an empty genome");
  std::vector<const KeywordTerm*> candidates;
  std::set<std::string_view> taken(g.terms.begin(), g.terms.end());
  for (const auto& t : pool.terms) {
    if (taken.insert(t.lemma).second) candidates.push_back(&t);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::PoolTooSmall, "keyword pool has no term outside the genome");
  }
  if (!rng.bernoulli(m1)) return g;
  QueryGenome out = g;
  const std::size_t slot = rng.uniform_index(out.terms.size());
  std::vector<double> weights;
  weights.reserve(candidates.size());
  for (const auto* t : candidates) weights.push_back(t->weight);
  out.terms[slot] = candidates[rng.weighted_index(weights)]->lemma;
  return out;
}

std::string render_query(const QueryGenome& g) {
  std::string q;
  for (const auto& t : g.terms) {
    if (!q.empty()) q += ' ';
    if (g.variant == Variant::Quoted) {
      q += '"';
      q += t;
      q += '"';
    } else {
      q += t;
    }
  }
  return q;
}

bool has_distinct_terms(const QueryGenome& g) {
  std::set<std::string_view> s(g.terms.begin(), g.terms.end());
  return s.size() == g.terms.size();
}

}  // namespace evoquery
