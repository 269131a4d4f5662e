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

#include "evoquery/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "evoquery/error.hpp"
#include "util.hpp"

namespace evoquery {

void FitnessWeights::validate() const {
  for (double w : {w_position, w_crossquery, w_semantic}) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::ConfigInvalid, "weights must be non-negative");
  }
  if (std::abs(w_position + w_crossquery + w_semantic - 1.0) > 1e-9) {
    throw Error(ErrorCode::ConfigInvalid, "weights must sum to 1");
  }
  if (!(host_coeff > 0.0 && host_coeff <= 1.0)) {
    throw Error(ErrorCode::ConfigInvalid, "host coefficient must lie in (0, 1]");
  }
  if (f1 == 0 || f2 == 0 || f3 == 0) throw Error(ErrorCode::ConfigInvalid, "result caps must be positive");
}

namespace {

bool heavier(const std::pair<std::string, double>& a, const std::pair<std::string, double>& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first < b.first;
}

// Drops the lightest lemmas (ties: lexicographically last) beyond capacity.
void evict_to_capacity(TermVector& v, std::size_t capacity) {
  if (v.size() <= capacity) return;
  std::vector<std::pair<std::string, double>> items(v.entries().begin(), v.entries().end());
  std::sort(items.begin(), items.end(), heavier);
  TermVector kept;
  for (std::size_t i = 0; i < capacity; ++i) kept.set(items[i].first, items[i].second);
  v = std::move(kept);
}

}  // namespace

ReferenceText ReferenceText::from_seed(const TermVector& seed, std::size_t capacity) {
  if (capacity == 0) throw Error(ErrorCode::ConfigInvalid, "reference capacity must be positive");
  ReferenceText ref;
  ref.capacity = capacity;
  ref.vector = seed;
  evict_to_capacity(ref.vector, capacity);
  return ref;
}

std::string ReferenceText::digest() const {
  std::uint64_t h = detail::fnv1a64("capacity=" + std::to_string(capacity) + ";");
  for (const auto& [lemma, w] : vector.entries()) h = detail::fnv1a64(lemma + "=" + detail::format_double(w) + ";", h);
  return detail::hex64(h);
}

double position_score(std::size_t position, std::size_t list_length) {
  if (list_length == 0 || position == 0 || position > list_length) {
    throw Error(ErrorCode::PositionOutOfRange,
                "position " + std::to_string(position) + " outside 1.." + std::to_string(list_length));
  }
  return static_cast<double>(list_length - position + 1) / static_cast<double>(list_length);
}

double cross_query_score(std::string_view doc_url, std::span<const ProviderQueryRecord> records) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "cross-query score needs at least one record");
  std::size_t containing = 0;
  for (const auto& r : records) {
    if (std::any_of(r.hits.begin(), r.hits.end(), [&](const SearchHit& h) { return h.doc_url == doc_url; })) {
      ++containing;
    }
  }
  return static_cast<double>(containing) / static_cast<double>(records.size());
}

double semantic_score(const SearchHit& hit, const ReferenceText& ref, const Normalizer& normalizer) {
  const auto lemmas = normalizer.normalize(hit.title + " " + hit.snippet);
  return cosine_similarity(TermVector::from_lemmas(lemmas), ref.vector);
}

double semantic_score(const SearchHit& hit, const ReferenceText& ref) {
  return semantic_score(hit, ref, SuffixNormalizer{});
}

double result_fitness(double f, double p, double s, double a, const FitnessWeights& weights) {
  for (double c : {f, p, s, a}) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::ComponentOutOfRange, "fitness components must lie in [0, 1]");
  }
  const double w = a * (weights.w_position * f + weights.w_crossquery * p + weights.w_semantic * s);
  return std::clamp(w, 0.0, 1.0);
}

void sort_by_fitness(std::vector<ScoredResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const ScoredResult& x, const ScoredResult& y) {
    if (x.w != y.w) return x.w > y.w;
    return x.hit.doc_url < y.hit.doc_url;
  });
}

std::vector<ScoredResult> apply_host_collocation(std::vector<ScoredResult> results, double host_coeff) {
  std::unordered_map<std::string, std::size_t> seen;
  for (auto& r : results) {
    if (r.hit.doc_host.empty()) continue;
    const std::size_t k = ++seen[r.hit.doc_host];
    if (k >= 2) r.w *= std::pow(host_coeff, static_cast<double>(k - 1));
  }
  sort_by_fitness(results);
  return results;
}

double query_fitness(std::span<const ScoredResult> results) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) sum += r.w;
  return sum / static_cast<double>(results.size());
}

double population_fitness(std::span<const double> query_fitnesses, std::optional<std::size_t> expected_size) {
  if (query_fitnesses.empty()) throw Error(ErrorCode::WrongPopulationSize, "population is empty");
  if (expected_size && query_fitnesses.size() != *expected_size) {
    throw Error(ErrorCode::WrongPopulationSize, "expected " + std::to_string(*expected_size) + " queries, got " +
                                                    std::to_string(query_fitnesses.size()));
  }
  double sum = 0.0;
  for (double w : query_fitnesses) sum += w;
  return sum / static_cast<double>(query_fitnesses.size());
}

ReferenceText update_reference_text(ReferenceText ref, std::span<const ScoredResult> top_results,
                                    std::uint64_t generation, const Normalizer& normalizer) {
  std::vector<const ScoredResult*> chosen;
  std::set<std::string_view> urls;
  for (const auto& r : top_results) {
    if (chosen.size() == kReferenceContributors) break;
    if (urls.insert(r.hit.doc_url).second) chosen.push_back(&r);
  }
  if (chosen.empty()) return ref;

  ++ref.rounds;
  const double scale = std::pow(kReferenceDecay, static_cast<double>(ref.rounds)) / static_cast<double>(chosen.size());
  TermVector addition;
  for (const auto* r : chosen) {
    const auto lemmas = normalizer.normalize(r->hit.title + " " + r->hit.snippet);
    addition.add_scaled(TermVector::from_lemmas(lemmas), scale);
    ref.provenance.push_back({generation, r->hit.doc_url});
  }
  ref.vector.add_scaled(addition, 1.0);
  evict_to_capacity(ref.vector, ref.capacity);
  return ref;
}

ReferenceText update_reference_text(ReferenceText ref, std::span<const ScoredResult> top_results,
                                    std::uint64_t generation) {
  return update_reference_text(std::move(ref), top_results, generation, SuffixNormalizer{});
}

namespace {

void merge_max(std::map<std::string, ScoredResult, std::less<>>& best, const ScoredResult& r) {
  auto it = best.find(r.hit.doc_url);
  if (it == best.end()) {
    best.emplace(r.hit.doc_url, r);
  } else if (r.w > it->second.w) {
    it->second = r;
  }
}

std::vector<ScoredResult> top_of(std::map<std::string, ScoredResult, std::less<>>& best, std::size_t cap) {
  std::vector<ScoredResult> out;
  out.reserve(best.size());
  for (auto& [url, r] : best) out.push_back(std::move(r));
  sort_by_fitness(out);
  if (out.size() > cap) out.resize(cap);
  return out;
}

}  // namespace

std::vector<ScoredResult> aggregate_population(std::span<const std::vector<ScoredResult>> per_query,
                                               std::size_t f2) {
  std::map<std::string, ScoredResult, std::less<>> best;
  for (const auto& list : per_query) {
    for (const auto& r : list) merge_max(best, r);
  }
  return top_of(best, f2);
}

void GlobalTopList::merge(std::span<const ScoredResult> results) {
  std::map<std::string, ScoredResult, std::less<>> best;
  for (const auto& r : results_) best.emplace(r.hit.doc_url, r);
  for (const auto& r : results) merge_max(best, r);
  results_ = top_of(best, cap_);
}

std::vector<ScoredResult> aggregate_results(
    std::span<const std::vector<std::vector<ScoredResult>>> per_generation, const FitnessWeights& caps) {
  GlobalTopList global(caps.f3);
  for (const auto& generation : per_generation) {
    std::vector<std::vector<ScoredResult>> capped;
    capped.reserve(generation.size());
    for (const auto& list : generation) {
      capped.emplace_back(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(std::min(list.size(), caps.f1)));
    }
    global.merge(aggregate_population(capped, caps.f2));
  }
  return global.results();
}

}  // namespace evoquery
