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

// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// non-zero when any selected criterion fails. Usage: acceptance [N ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "evoquery/cli.hpp"
#include "evoquery/error.hpp"
#include "evoquery/evaluation.hpp"
#include "evoquery/evolution.hpp"
#include "evoquery/fitness.hpp"
#include "evoquery/ledger.hpp"
#include "evoquery/rng.hpp"
#include "evoquery/synthetic.hpp"

namespace fs = std::filesystem;
using namespace evoquery;

namespace {

const fs::path kSourceDir = EVOQUERY_SOURCE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("evoquery_acceptance_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "evoquery");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  if (out_text != nullptr) *out_text = out.str();
  if (code != 0) std::cerr << "  cli " << args[1] << " exited " << code << ": " << err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1. Metric oracles.
Outcome metric_oracles() {
  std::vector<Judgment> js{{"a", "e1", Persona::Specialist, 3}, {"b", "e1", Persona::Specialist, 2}};
  const GradeTable grades(js);
  const auto list = make_ranked_list("x", {"a", "b"});
  const double d = dcg(list, grades, Persona::Specialist, 20).value;
  const double nd = ndcg(list, grades, Persona::Specialist, 20).value;
  const std::vector<double> x{0.4, 1.3, 2.7, 0.1}, e1{1, 0}, e2{0, 1}, ones{1, 1};
  const double r_same = rho12(x, x);
  const double r_orth = rho12(e1, e2);
  const double r_half = rho12(ones, e1);
  const bool pass = std::abs(d - 8.892789) <= 1e-6 && nd == 1.0 && std::abs(r_same - 1.0) <= 1e-12 &&
                    std::abs(r_orth) <= 1e-12 && std::abs(r_half - 0.707107) <= 1e-6;
  return {pass, "dcg=" + fmt("%.9f", d) + " ndcg(ideal)=" + fmt("%.17g", nd) + " rho(x,x)=" + fmt("%.17g", r_same) +
                    " rho(orth)=" + fmt("%.3g", r_orth) + " rho([1,1],[1,0])=" + fmt("%.9f", r_half)};
}

// 2. Query and population fitness against naive means.
Outcome fitness_means() {
  Rng rng(20260101);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t g2 = 1 + rng.uniform_index(12);
    std::vector<double> wj;
    double pop_sum = 0.0;
    for (std::size_t q = 0; q < g2; ++q) {
      const std::size_t p = rng.uniform_index(21);
      std::vector<ScoredResult> results(p);
      double sum = 0.0;
      for (auto& r : results) {
        r.w = rng.uniform01();
        sum += r.w;
      }
      const double naive = p == 0 ? 0.0 : sum / static_cast<double>(p);
      const double got = query_fitness(results);
      worst = std::max(worst, std::abs(got - naive));
      wj.push_back(got);
      pop_sum += got;
    }
    worst = std::max(worst, std::abs(population_fitness(wj, g2) - pop_sum / static_cast<double>(g2)));
  }
  return {worst <= 1e-12, "1000 tables, max deviation " + fmt("%.3g", worst)};
}

// 3. No permutation beats the grade-descending order.
Outcome ideal_permutation() {
  std::size_t vectors = 0;
  std::size_t permutations = 0;
  std::size_t violations = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Judgment> js;
      std::vector<std::string> urls;
      std::vector<double> gs;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i) {
        urls.push_back("u" + std::to_string(i));
        gs.push_back(static_cast<double>(c % 4));
        js.push_back({urls.back(), "e", Persona::Specialist, static_cast<int>(c % 4)});
        c /= 4;
      }
      const GradeTable grades(js);
      std::vector<double> desc = gs;
      std::sort(desc.begin(), desc.end(), std::greater<>());
      double ideal = 0.0;
      for (std::size_t p = 0; p < len; ++p) ideal += (std::pow(2.0, desc[p]) - 1.0) / std::log2(2.0 + static_cast<double>(p));
      std::sort(urls.begin(), urls.end());
      do {
        ++permutations;
        const double d = dcg(RankedList{"p", urls}, grades, Persona::Specialist, len).value;
        if (d > ideal + 1e-12) ++violations;
      } while (std::next_permutation(urls.begin(), urls.end()));
      ++vectors;
    }
  }
  return {violations == 0, std::to_string(vectors) + " grade vectors, " + std::to_string(permutations) +
                               " orderings, " + std::to_string(violations) + " beat the ideal"};
}

// 4. Two CLI evolve runs produce identical ledgers; replay verifies.
Outcome determinism() {
  const fs::path dir = scratch("determinism");
  const auto data = kSourceDir / "data";
  const auto index = (dir / "index.json").string();
  if (cli({"index", "--corpus", (data / "corpus.jsonl").string(), "--out", index}) != 0) return {false, "index failed"};
  for (const char* run : {"run_a", "run_b"}) {
    if (cli({"evolve", "--config", (data / "config.json").string(), "--seed-material", (data / "seed.jsonl").string(),
             "--index", index, "--out", (dir / run).string()}) != 0) {
      return {false, std::string("evolve ") + run + " failed"};
    }
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "run_a")) {
    const auto other = dir / "run_b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      return {false, "ledger file " + entry.path().filename().string() + " differs"};
    }
    ++files;
  }
  std::size_t files_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir / "run_b")) ++files_b;
  if (files != files_b) return {false, "ledgers hold different file sets"};
  const auto loaded = read_ledger(dir / "run_a");
  if (loaded.ledger.generations.size() != 10) return {false, "expected 10 generations"};
  std::string replay_out;
  if (cli({"replay", "--ledger", (dir / "run_a").string()}, &replay_out) != 0) return {false, "replay diverged"};
  return {replay_out.find("0 divergences") != std::string::npos,
          std::to_string(files) + " ledger files byte-identical; " +
              replay_out.substr(0, replay_out.find('\n'))};
}

// Specialist precision@20 at threshold 2 of a url list.
double precision_at_20(const std::vector<std::string>& urls, const GradeTable& grades) {
  return precision(make_ranked_list("x", urls).truncated(20), grades, Persona::Specialist, 2).value;
}

// 5. Evolved results beat g2 random same-length queries.
Outcome ga_effectiveness() {
  SyntheticSpec spec;  // 500 documents, 25 planted relevant
  const auto corpus = generate_planted_corpus(spec);
  const GradeTable grades(corpus.qrels);
  auto index = std::make_shared<const InvertedIndex>(InvertedIndex::build(corpus.documents));
  OfflineProvider provider(index);
  const SuffixNormalizer normalizer;

  double evolved_sum = 0.0;
  double random_sum = 0.0;
  constexpr int kSeeds = 20;
  for (int s = 1; s <= kSeeds; ++s) {
    RunConfig config;
    config.rng_seed = static_cast<std::uint64_t>(s);
    const auto ledger = run_evolution(config, provider, corpus.seed_material, normalizer);
    std::vector<std::string> evolved;
    for (const auto& r : ledger.final_results) evolved.push_back(r.hit.doc_url);
    evolved_sum += precision_at_20(evolved, grades);

    // Baseline: g2 random genomes drawn exactly as the GA seeds its first
    // population, pooled round-robin by provider rank.
    const auto pool = build_keyword_pool(corpus.seed_material, config.keyword_pool_size, normalizer);
    const auto random = seed_population(pool, config.g2, config.g3, splitmix64(0xBA5E11E + s), config.variant);
    std::vector<std::vector<SearchHit>> lists;
    for (const auto& g : random.genomes) lists.push_back(provider.execute(render_query(g), config.f1));
    std::vector<std::string> pooled;
    std::set<std::string> seen;
    for (std::size_t pos = 0; pos < config.f1 && pooled.size() < 20; ++pos) {
      for (const auto& l : lists) {
        if (pos < l.size() && pooled.size() < 20 && seen.insert(l[pos].doc_url).second) pooled.push_back(l[pos].doc_url);
      }
    }
    random_sum += precision_at_20(pooled, grades);
  }
  const double evolved = evolved_sum / kSeeds;
  const double random = random_sum / kSeeds;
  return {evolved - random >= 0.10, "mean P@20 evolved " + fmt("%.4f", evolved) + " vs random " + fmt("%.4f", random) +
                                        " (gap " + fmt("%.4f", evolved - random) + ", need >= 0.10)"};
}

// 6. Best query fitness never drops in freeze-reference mode.
Outcome monotonicity() {
  SyntheticSpec spec;
  const auto corpus = generate_planted_corpus(spec);
  OfflineProvider provider(std::make_shared<const InvertedIndex>(InvertedIndex::build(corpus.documents)));
  std::size_t violations = 0;
  std::size_t checks = 0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    RunConfig config;
    config.rng_seed = s;
    config.freeze_reference = true;
    const auto ledger = run_evolution(config, provider, corpus.seed_material, SuffixNormalizer{});
    for (std::size_t g = 1; g < ledger.generations.size(); ++g) {
      ++checks;
      if (ledger.best_query_fitness(g) < ledger.best_query_fitness(g - 1)) ++violations;
    }
  }
  return {violations == 0, "20 seeds x 10 generations, " + std::to_string(checks) + " transitions, " +
                               std::to_string(violations) + " violations"};
}

// 7. Fitness bounds and the host discount.
Outcome fitness_bounds() {
  Rng rng(77);
  std::size_t out_of_range = 0;
  for (int i = 0; i < 10000; ++i) {
    FitnessWeights w;
    if (i % 2 == 1) {
      const double a = rng.uniform01();
      const double b = rng.uniform01() * (1.0 - a);
      w.w_position = a;
      w.w_crossquery = b;
      w.w_semantic = 1.0 - a - b;
    }
    const double v = result_fitness(rng.uniform01(), rng.uniform01(), rng.uniform01(), rng.uniform01(), w);
    if (!(v >= 0.0 && v <= 1.0)) ++out_of_range;
  }

  std::vector<ScoredResult> same(3);
  for (std::size_t i = 0; i < 3; ++i) {
    same[i].hit.doc_url = "http://h.example/" + std::to_string(i);
    same[i].hit.doc_host = "h.example";
    same[i].w = 1.0;
  }
  const auto spot = apply_host_collocation(same, 0.75);
  std::map<std::string, double> by_url;
  for (const auto& r : spot) by_url[r.hit.doc_url] = r.w;
  double spot_err = std::abs(by_url["http://h.example/0"] - 1.0) + 0.0;
  spot_err = std::max(spot_err, std::abs(by_url["http://h.example/1"] - 0.75));
  spot_err = std::max(spot_err, std::abs(by_url["http://h.example/2"] - 0.5625));

  double worst = 0.0;
  for (int t = 0; t < 2000; ++t) {
    std::vector<ScoredResult> rs(1 + rng.uniform_index(20));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      rs[i].hit.doc_url = "u" + std::to_string(i);
      rs[i].hit.doc_host = "h" + std::to_string(rng.uniform_index(4));
      rs[i].w = rng.uniform01();
    }
    sort_by_fitness(rs);
    std::map<std::string, int> seen;
    std::map<std::string, double> expected;
    for (const auto& r : rs) {
      const int k = ++seen[r.hit.doc_host];
      expected[r.hit.doc_url] = r.w * std::pow(0.75, k - 1);
    }
    for (const auto& r : apply_host_collocation(rs, 0.75)) {
      worst = std::max(worst, std::abs(r.w - expected[r.hit.doc_url]));
    }
  }
  return {out_of_range == 0 && spot_err <= 1e-12 && worst <= 1e-12,
          "10000 tuples, " + std::to_string(out_of_range) + " outside [0,1]; spot 1, 0.75, 0.5625 err " +
              fmt("%.3g", spot_err) + "; random lists max err " + fmt("%.3g", worst)};
}

// 8. index -> evolve -> evaluate -> report, golden metrics.
Outcome end_to_end() {
  const fs::path dir = scratch("end_to_end");
  const auto data = kSourceDir / "data";
  const auto index = (dir / "index.json").string();
  const auto seed = (data / "seed.jsonl").string();
  const auto metrics = dir / "metrics.csv";
  if (cli({"index", "--corpus", (data / "corpus.jsonl").string(), "--out", index}) != 0) return {false, "index failed"};
  if (cli({"evolve", "--seed-material", seed, "--index", index, "--out", (dir / "engine").string()}) != 0) {
    return {false, "evolve failed"};
  }
  if (cli({"evolve", "--baseline-title", "--seed-material", seed, "--index", index, "--out",
           (dir / "provider").string()}) != 0) {
    return {false, "baseline failed"};
  }
  if (cli({"evaluate", "--ledger", (dir / "engine").string(), "--ledger", (dir / "provider").string(), "--qrels",
           (data / "qrels.tsv").string(), "--persona", "both", "--out", metrics.string()}) != 0) {
    return {false, "evaluate failed"};
  }
  if (cli({"report", "--metrics", metrics.string(), "--out", (dir / "report").string(), "--format", "svg"}) != 0) {
    return {false, "report failed"};
  }

  std::ifstream in(metrics, std::ios::binary);
  const auto rows = parse_metrics_csv(in);
  std::set<std::pair<std::string, std::string>> present;
  for (const auto& r : rows) present.insert({r.metric, r.persona});
  std::vector<std::string> missing;
  for (const char* family : {"mean_relevance", "precision", "dcg", "ndcg", "rho12", "overlap_percent"}) {
    for (const char* persona : {"S", "N"}) {
      if (!present.contains({family, persona})) missing.push_back(std::string(family) + "/" + persona);
      else if (persona[0] == 'S' && !fs::exists(dir / "report" / (std::string(family) + ".svg"))) {
        missing.push_back(std::string(family) + ".svg");
      }
    }
  }
  if (!missing.empty()) {
    std::string m;
    for (const auto& s : missing) m += " " + s;
    return {false, "missing:" + m};
  }
  const auto golden = kSourceDir / "tests" / "golden" / "metrics.csv";
  if (slurp(metrics) != slurp(golden)) return {false, "metrics.csv differs from " + golden.string()};
  return {true, std::to_string(rows.size()) + " rows, 6 families x 2 personas, golden match"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "metric oracles", 1.0, metric_oracles},
      {2, "fitness mean oracles", 5.0, fitness_means},
      {3, "ideal permutation", 60.0, ideal_permutation},
      {4, "determinism and replay", 30.0, determinism},
      {5, "GA effectiveness", 300.0, ga_effectiveness},
      {6, "monotonicity", 120.0, monotonicity},
      {7, "fitness bounds and host penalty", 5.0, fitness_bounds},
      {8, "end-to-end format fidelity", 60.0, end_to_end},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    std::printf("AC%d %s  %s  (%.3f s, limit %.0f s)  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.limit_seconds, in_time ? o.detail.c_str() : (o.detail + "; over time limit").c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  fs::remove_all(fs::temp_directory_path() / ("evoquery_acceptance_" + std::to_string(::getpid())));
  return failures == 0 ? 0 : 1;
}
