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

#include "evoquery/ledger.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "evoquery/error.hpp"
#include "json_writer.hpp"
#include "util.hpp"

namespace evoquery {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ojson hit_to_json(const SearchHit& h) {
  ojson j;
  j["url"] = h.doc_url;
  j["host"] = h.doc_host;
  j["title"] = h.title;
  j["snippet"] = h.snippet;
  j["position"] = h.position;
  return j;
}

SearchHit hit_from_json(const json& j) {
  return {j.at("url").get<std::string>(), j.at("host").get<std::string>(), j.at("title").get<std::string>(),
          j.at("snippet").get<std::string>(), j.at("position").get<std::size_t>()};
}

ojson components_to_json(const ScoredResult& r) {
  ojson j;
  j["url"] = r.hit.doc_url;
  j["f"] = r.f;
  j["p"] = r.p;
  j["s"] = r.s;
  j["a"] = r.a;
  j["w"] = r.w;
  return j;
}

void components_from_json(const json& j, ScoredResult& r) {
  r.f = j.at("f").get<double>();
  r.p = j.at("p").get<double>();
  r.s = j.at("s").get<double>();
  r.a = j.at("a").get<double>();
  r.w = j.at("w").get<double>();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::LedgerCorrupt, "missing ledger file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string serialize_generation(const GenerationRecord& record) {
  ojson j;
  j["generation"] = record.generation;
  j["population_fitness"] = record.mean_fitness;
  j["reference_digest"] = record.reference_digest;
  auto& queries = j["queries"] = ojson::array();
  for (const auto& q : record.queries) {
    ojson e;
    e["genome_id"] = q.record.genome_id;
    e["terms"] = q.genome.terms;
    e["variant"] = std::string(to_string(q.genome.variant));
    e["query"] = q.record.query_string;
    e["provider"] = q.record.provider_name;
    e["issued_at"] = q.record.issued_at;
    auto& hits = e["hits"] = ojson::array();
    for (const auto& h : q.record.hits) hits.push_back(hit_to_json(h));
    auto& results = e["results"] = ojson::array();
    for (const auto& r : q.results) results.push_back(components_to_json(r));
    e["query_fitness"] = q.fitness;
    queries.push_back(std::move(e));
  }
  return detail::dump_json(j);
}

GenerationRecord parse_generation(std::string_view line) {
  try {
    const json j = json::parse(line);
    GenerationRecord rec;
    rec.generation = j.at("generation").get<std::uint64_t>();
    rec.mean_fitness = j.at("population_fitness").get<double>();
    rec.reference_digest = j.at("reference_digest").get<std::string>();
    for (const auto& e : j.at("queries")) {
      QueryEntry q;
      q.genome.terms = e.at("terms").get<std::vector<std::string>>();
      q.genome.variant = parse_variant(e.at("variant").get<std::string>());
      q.record.genome_id = e.at("genome_id").get<std::string>();
      q.record.query_string = e.at("query").get<std::string>();
      q.record.provider_name = e.at("provider").get<std::string>();
      q.record.issued_at = e.at("issued_at").get<std::uint64_t>();
      std::map<std::string, SearchHit> by_url;
      for (const auto& h : e.at("hits")) {
        q.record.hits.push_back(hit_from_json(h));
        by_url.emplace(q.record.hits.back().doc_url, q.record.hits.back());
      }
      for (const auto& r : e.at("results")) {
        ScoredResult s;
        auto it = by_url.find(r.at("url").get<std::string>());
        if (it == by_url.end()) throw Error(ErrorCode::LedgerCorrupt, "result url missing from hits");
        s.hit = it->second;
        components_from_json(r, s);
        q.results.push_back(std::move(s));
      }
      q.fitness = e.at("query_fitness").get<double>();
      rec.queries.push_back(std::move(q));
    }
    return rec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LedgerCorrupt, std::string("malformed generation record: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LedgerCorrupt) throw;
    throw Error(ErrorCode::LedgerCorrupt, e.what());
  }
}

std::string serialize_final_results(std::span<const ScoredResult> results) {
  ojson j;
  auto& arr = j["results"] = ojson::array();
  std::size_t rank = 0;
  for (const auto& r : results) {
    ojson e;
    e["rank"] = ++rank;
    e["url"] = r.hit.doc_url;
    e["host"] = r.hit.doc_host;
    e["title"] = r.hit.title;
    e["snippet"] = r.hit.snippet;
    e["position"] = r.hit.position;
    e["f"] = r.f;
    e["p"] = r.p;
    e["s"] = r.s;
    e["a"] = r.a;
    e["w"] = r.w;
    arr.push_back(std::move(e));
  }
  return detail::dump_json(j);
}

std::vector<ScoredResult> parse_final_results(std::string_view text) {
  try {
    const json j = json::parse(text);
    std::vector<ScoredResult> out;
    for (const auto& e : j.at("results")) {
      ScoredResult r;
      r.hit = hit_from_json(e);
      components_from_json(e, r);
      out.push_back(std::move(r));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LedgerCorrupt, std::string("malformed final results: ") + e.what());
  }
}

std::string seed_digest(std::span<const Document> seed_material) {
  std::uint64_t h = detail::fnv1a64("");
  for (const auto& d : seed_material) h = detail::fnv1a64(serialize_document(d) + "\n", h);
  return detail::hex64(h);
}

namespace {

std::string serialize_inputs(const RunInputs& inputs, const RunLedger& ledger) {
  ojson j;
  j["mode"] = inputs.mode;
  j["provider"] = ledger.provider_name;
  j["index_path"] = inputs.index_path;
  j["index_digest"] = inputs.index_digest;
  j["endpoint"] = inputs.endpoint;
  j["seed_digest"] = inputs.seed_digest;
  auto& pool = j["keyword_pool"] = ojson::array();
  for (const auto& t : ledger.pool.terms) pool.push_back(ojson::array({t.lemma, t.weight}));
  j["seed_ids"] = ledger.pool.source_doc_ids;
  return detail::dump_json(j);
}

}  // namespace

void write_ledger(const fs::path& dir, const RunLedger& ledger, const RunInputs& inputs,
                  std::span<const Document> seed_material) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create ledger directory " + dir.string() + ": " + ec.message());

  for (const auto& g : ledger.generations) {
    double sum = 0.0;
    for (const auto& q : g.queries) sum += q.fitness;
    if (g.queries.size() != ledger.config.g2 ||
        std::abs(sum / static_cast<double>(g.queries.size()) - g.mean_fitness) > 1e-9) {
      throw Error(ErrorCode::LedgerCorrupt, "generation " + std::to_string(g.generation) + " is inconsistent");
    }
  }

  write_file(dir / "config.json", serialize_run_config(ledger.config) + "\n");
  write_file(dir / "run.json", serialize_inputs(inputs, ledger) + "\n");
  std::ostringstream seed;
  write_corpus(seed, seed_material);
  write_file(dir / "seed_material.jsonl", seed.str());
  std::string lines;
  for (const auto& g : ledger.generations) lines += serialize_generation(g) + "\n";
  write_file(dir / "generations.jsonl", lines);
  write_file(dir / "final_results.json", serialize_final_results(ledger.final_results) + "\n");
}

LoadedLedger read_ledger(const fs::path& dir) {
  LoadedLedger out;
  try {
    out.ledger.config = parse_run_config(read_file(dir / "config.json"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LedgerCorrupt) throw;
    throw Error(ErrorCode::LedgerCorrupt, std::string("config.json: ") + e.what());
  }
  try {
    const json run = json::parse(read_file(dir / "run.json"));
    out.inputs.mode = run.at("mode").get<std::string>();
    out.ledger.provider_name = run.at("provider").get<std::string>();
    out.inputs.index_path = run.at("index_path").get<std::string>();
    out.inputs.index_digest = run.at("index_digest").get<std::string>();
    out.inputs.endpoint = run.at("endpoint").get<std::string>();
    out.inputs.seed_digest = run.at("seed_digest").get<std::string>();
    for (const auto& t : run.at("keyword_pool")) {
      out.ledger.pool.terms.push_back({t.at(0).get<std::string>(), t.at(1).get<double>()});
    }
    out.ledger.pool.source_doc_ids = run.at("seed_ids").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LedgerCorrupt, std::string("run.json: ") + e.what());
  }
  try {
    std::istringstream seed(read_file(dir / "seed_material.jsonl"));
    out.seed_material = parse_corpus(seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LedgerCorrupt) throw;
    throw Error(ErrorCode::LedgerCorrupt, std::string("seed_material.jsonl: ") + e.what());
  }
  for (const auto& line : split_lines(read_file(dir / "generations.jsonl"))) {
    out.ledger.generations.push_back(parse_generation(line));
  }
  out.ledger.final_results = parse_final_results(read_file(dir / "final_results.json"));
  return out;
}

ReplayReport replay_ledger(const fs::path& dir, const std::optional<fs::path>& index_override) {
  const LoadedLedger loaded = read_ledger(dir);
  if (loaded.ledger.provider_name != "offline") {
    throw Error(ErrorCode::NotReplayable, "ledger was produced by the '" + loaded.ledger.provider_name +
                                              "' provider; only offline runs can be re-executed");
  }
  if (seed_digest(loaded.seed_material) != loaded.inputs.seed_digest) {
    throw Error(ErrorCode::LedgerCorrupt, "seed material does not match its recorded digest");
  }
  const fs::path index_path = index_override.value_or(fs::path(loaded.inputs.index_path));
  auto index = std::make_shared<const InvertedIndex>(InvertedIndex::load(index_path));
  if (index->digest() != loaded.inputs.index_digest) {
    throw Error(ErrorCode::DivergenceDetected, "index " + index_path.string() + " differs from the one recorded");
  }

  const RunConfig& config = loaded.ledger.config;
  SuffixNormalizer normalizer({config.stop_words.begin(), config.stop_words.end()});
  OfflineOptions options;
  options.snippet_words = config.snippet_words;
  OfflineProvider provider(index, options);
  const RunLedger rerun = loaded.inputs.mode == "title_baseline"
                              ? run_title_baseline(config, provider, loaded.seed_material, normalizer)
                              : run_evolution(config, provider, loaded.seed_material, normalizer);

  const auto recorded = split_lines(read_file(dir / "generations.jsonl"));
  ReplayReport report;
  const std::size_t n = std::max(recorded.size(), rerun.generations.size());
  for (std::size_t g = 0; g < n; ++g) {
    if (g >= recorded.size() || g >= rerun.generations.size()) {
      throw Error(ErrorCode::DivergenceDetected, "generation " + std::to_string(g) + ": generation count differs");
    }
    const std::string fresh = serialize_generation(rerun.generations[g]);
    if (fresh != recorded[g]) {
      std::string field = "<bytes>";
      try {
        field = detail::first_difference(json::parse(recorded[g]), json::parse(fresh));
        if (field.empty()) field = "<formatting>";
      } catch (const json::exception&) {
        field = "<unparseable>";
      }
      throw Error(ErrorCode::DivergenceDetected, "generation " + std::to_string(g) + " field " + field);
    }
    ++report.generations_verified;
  }
  const auto recorded_final = split_lines(read_file(dir / "final_results.json"));
  if (recorded_final.size() != 1 || recorded_final[0] != serialize_final_results(rerun.final_results)) {
    throw Error(ErrorCode::DivergenceDetected, "final results differ");
  }
  return report;
}

}  // namespace evoquery
