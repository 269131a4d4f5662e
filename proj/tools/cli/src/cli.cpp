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

#include "evoquery/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "evoquery/config.hpp"
#include "evoquery/corpus.hpp"
#include "evoquery/error.hpp"
#include "evoquery/evolution.hpp"
#include "evoquery/http_provider.hpp"
#include "evoquery/ledger.hpp"
#include "evoquery/provider.hpp"
#include "evoquery/text.hpp"

namespace evoquery::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ProviderUnavailable:
    case ErrorCode::ProtocolError:
      return kEnvironment;
    default:
      return kUsage;
  }
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

SuffixNormalizer make_normalizer(const std::string& stop_words_path) {
  if (stop_words_path.empty()) return SuffixNormalizer{};
  return SuffixNormalizer(load_stop_words(stop_words_path));
}

struct IndexArgs {
  std::string corpus;
  std::string out;
  std::string stop_words;
};

int cmd_index(const IndexArgs& a, std::ostream& out) {
  auto docs = load_corpus(a.corpus);
  const auto index = InvertedIndex::build(std::move(docs), make_normalizer(a.stop_words));
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  index.save(a.out);
  out << "indexed " << index.documents().size() << " documents\n";
  out << "vocabulary " << index.vocabulary_size() << " lemmas\n";
  return kOk;
}

struct KeywordsArgs {
  std::string seed_material;
  std::size_t k = 50;
  std::string stop_words;
};

int cmd_keywords(const KeywordsArgs& a, std::ostream& out) {
  const auto seed = load_corpus(a.seed_material);
  if (seed.empty()) throw Error(ErrorCode::EmptyDocument, "seed material is empty");
  const auto pool = build_keyword_pool(seed, a.k, make_normalizer(a.stop_words));
  for (const auto& t : pool.terms) out << t.lemma << '\t' << fixed(t.weight, 8) << '\n';
  return kOk;
}

struct EvolveArgs {
  std::string config;
  std::string seed_material;
  std::string index;
  std::string endpoint;
  std::string out;
  bool baseline_title = false;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.index.empty() == a.endpoint.empty()) {
    err << "error: exactly one of --index or --endpoint is required\n";
    return kUsage;
  }
  RunConfig config = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  if (!a.endpoint.empty()) {
    config.provider.kind = ProviderKind::Http;
    config.provider.endpoint = a.endpoint;
  } else {
    config.provider.kind = ProviderKind::Offline;
    config.provider.endpoint.clear();
  }
  config.validate();

  const auto seed = load_corpus(a.seed_material);
  if (seed.empty()) throw Error(ErrorCode::ConfigInvalid, "seed material is empty");
  const SuffixNormalizer normalizer({config.stop_words.begin(), config.stop_words.end()});

  RunInputs inputs;
  inputs.mode = a.baseline_title ? "title_baseline" : "evolve";
  inputs.seed_digest = seed_digest(seed);

  std::unique_ptr<SearchProvider> provider;
  if (!a.index.empty()) {
    auto index = std::make_shared<const InvertedIndex>(InvertedIndex::load(a.index));
    inputs.index_path = fs::weakly_canonical(a.index).string();
    inputs.index_digest = index->digest();
    OfflineOptions options;
    options.snippet_words = config.snippet_words;
    provider = std::make_unique<OfflineProvider>(std::move(index), options);
  } else {
    HttpEndpoint endpoint;
    endpoint.url = a.endpoint;
    endpoint.api_key_header = config.provider.api_key_header;
    if (!endpoint.api_key_header.empty()) {
      const char* key = std::getenv("EVOQUERY_API_KEY");
      if (key == nullptr) {
        err << "error: config names key header " << endpoint.api_key_header << " but EVOQUERY_API_KEY is unset\n";
        return kEnvironment;
      }
      endpoint.api_key = key;
    }
    endpoint.requests_per_second = config.provider.requests_per_second;
    inputs.endpoint = a.endpoint;
    provider = std::make_unique<HttpProvider>(std::move(endpoint));
  }

  const auto observer = [&out](const GenerationRecord& g) {
    out << "generation " << g.generation << ": population fitness " << fixed(g.mean_fitness) << '\n';
  };
  const RunLedger ledger = a.baseline_title ? run_title_baseline(config, *provider, seed, normalizer)
                                            : run_evolution(config, *provider, seed, normalizer, observer);
  write_ledger(a.out, ledger, inputs, seed);

  out << "final population fitness " << fixed(ledger.generations.back().mean_fitness) << '\n';
  out << "top " << ledger.final_results.size() << " results:\n";
  for (std::size_t i = 0; i < ledger.final_results.size(); ++i) {
    const auto& r = ledger.final_results[i];
    out << "  " << (i + 1) << '\t' << fixed(r.w) << '\t' << r.hit.doc_url << '\n';
  }
  out << "ledger written to " << a.out << '\n';
  return kOk;
}

struct EvaluateArgs {
  std::vector<std::string> ledgers;
  std::vector<std::string> lists;
  std::string qrels;
  std::string persona = "both";
  std::size_t n = 20;
  int threshold = 2;
  std::string out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.ledgers.empty() && a.lists.empty()) {
    err << "error: at least one --ledger or --list is required\n";
    return kUsage;
  }
  const auto judgments = load_qrels(a.qrels);
  const GradeTable grades(judgments);

  std::vector<RankedList> orderings;
  std::set<std::string> names;
  auto add = [&](RankedList list) {
    if (!names.insert(list.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate ordering name " + list.name);
    orderings.push_back(std::move(list));
  };
  for (const auto& arg : a.ledgers) {
    const auto np = parse_named_path(arg);
    add(ledger_ranked_list(np.path, np.name));
  }
  for (const auto& arg : a.lists) {
    const auto np = parse_named_path(arg);
    add(load_ranked_list(np.path, np.name));
  }

  EvaluationOptions options;
  options.cutoff = a.n;
  options.threshold = a.threshold;
  if (a.persona == "both") {
    options.personas = {Persona::Specialist, Persona::Novice};
  } else {
    options.personas = {parse_persona(a.persona)};
  }
  const auto report = evaluate_orderings(orderings, grades, options);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';

  if (a.out.empty()) {
    write_metrics_csv(out, report);
  } else {
    if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + a.out);
    write_metrics_csv(f, report);
    out << "wrote " << report.rows.size() << " metric rows to " << a.out << '\n';
  }
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> metrics;
  std::string out;
  std::string format = "svg";
};

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<ReportRow> rows;
  std::set<std::string> runs;
  for (const auto& arg : a.metrics) {
    const auto np = parse_named_path(arg);
    if (!runs.insert(np.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate run name " + np.name);
    std::ifstream in(np.path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + np.path.string());
    for (auto& r : parse_metrics_csv(in)) rows.push_back({np.name, std::move(r)});
  }
  fs::create_directories(a.out);
  if (rows.empty()) err << "warning: no metric rows in input; report is empty\n";

  if (a.format == "csv") {
    const auto path = fs::path(a.out) / "report.csv";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    write_report_csv(f, rows);
    out << "wrote " << path.string() << '\n';
    return kOk;
  }
  const auto charts = render_svg_report(rows);
  for (const auto& [family, svg] : charts) {
    const auto path = fs::path(a.out) / (family + ".svg");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << svg;
    out << "wrote " << path.string() << '\n';
  }
  return kOk;
}

struct ReplayArgs {
  std::string ledger;
  std::string index;
};

int cmd_replay(const ReplayArgs& a, std::ostream& out) {
  const auto report =
      replay_ledger(a.ledger, a.index.empty() ? std::nullopt : std::optional<fs::path>(a.index));
  out << "replay verified " << report.generations_verified << " generations, 0 divergences\n";
  return kOk;
}

}  // namespace

NamedPath parse_named_path(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq != std::string::npos && eq > 0 && arg.substr(0, eq).find('/') == std::string::npos) {
    return {arg.substr(0, eq), fs::path(arg.substr(eq + 1))};
  }
  fs::path p(arg);
  std::string name = p.filename().empty() ? p.parent_path().filename().string() : p.stem().string();
  return {name, p};
}

RankedList ledger_ranked_list(const fs::path& dir, std::string name) {
  const auto loaded = read_ledger(dir);
  std::vector<std::string> urls;
  if (loaded.inputs.mode == "title_baseline") {
    if (loaded.ledger.generations.empty() || loaded.ledger.generations[0].queries.empty()) {
      throw Error(ErrorCode::LedgerCorrupt, "title baseline ledger has no query");
    }
    for (const auto& h : loaded.ledger.generations[0].queries[0].record.hits) urls.push_back(h.doc_url);
  } else {
    for (const auto& r : loaded.ledger.final_results) urls.push_back(r.hit.doc_url);
  }
  return make_ranked_list(std::move(name), std::move(urls));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Query evolution and retrieval evaluation", "evoquery"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "evoquery 0.1.0");

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Build an inverted index from a JSONL corpus");
  index->add_option("--corpus", index_args.corpus, "Corpus JSONL file")->required();
  index->add_option("--out", index_args.out, "Index output file")->required();
  index->add_option("--stop-words", index_args.stop_words, "Stop-word list, one per line");

  KeywordsArgs keywords_args;
  auto* keywords = app.add_subcommand("keywords", "Print the keyword pool of seed material");
  keywords->add_option("--seed-material", keywords_args.seed_material, "Seed documents (JSONL)")->required();
  keywords->add_option("--k", keywords_args.k, "Pool size")->check(CLI::PositiveNumber);
  keywords->add_option("--stop-words", keywords_args.stop_words, "Stop-word list, one per line");

  EvolveArgs evolve_args;
  auto* evolve = app.add_subcommand("evolve", "Evolve queries and write a run ledger");
  evolve->add_option("--config", evolve_args.config, "Run config JSON (defaults when omitted)");
  evolve->add_option("--seed-material", evolve_args.seed_material, "Seed documents (JSONL)")->required();
  evolve->add_option("--index", evolve_args.index, "Offline index file");
  evolve->add_option("--endpoint", evolve_args.endpoint, "HTTP search endpoint");
  evolve->add_option("--out", evolve_args.out, "Ledger directory")->required();
  evolve->add_flag("--baseline-title", evolve_args.baseline_title, "Single title-keyword query instead of evolution");

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Compute metrics for rankings against qrels");
  evaluate->add_option("--ledger", evaluate_args.ledgers, "Ledger directory, optionally name=dir");
  evaluate->add_option("--list", evaluate_args.lists, "Ranked url list, optionally name=path");
  evaluate->add_option("--qrels", evaluate_args.qrels, "Judgments TSV")->required();
  evaluate->add_option("--persona", evaluate_args.persona, "S, N or both")
      ->check(CLI::IsMember({"S", "N", "both"}));
  evaluate->add_option("--n", evaluate_args.n, "Cutoff")->check(CLI::PositiveNumber);
  evaluate->add_option("--threshold", evaluate_args.threshold, "Relevance threshold")->check(CLI::Range(0, 3));
  evaluate->add_option("--out", evaluate_args.out, "Metrics CSV (stdout when omitted)");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Render metrics CSVs as charts or a merged CSV");
  report->add_option("--metrics", report_args.metrics, "Metrics CSV, optionally name=path")->required();
  report->add_option("--out", report_args.out, "Output directory")->required();
  report->add_option("--format", report_args.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Re-execute an offline ledger and compare");
  replay->add_option("--ledger", replay_args.ledger, "Ledger directory")->required();
  replay->add_option("--index", replay_args.index, "Index file overriding the recorded path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? e.what() : app.help()) << '\n';
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*index) return cmd_index(index_args, out);
    if (*keywords) return cmd_keywords(keywords_args, out);
    if (*evolve) return cmd_evolve(evolve_args, out, err);
    if (*evaluate) return cmd_evaluate(evaluate_args, out, err);
    if (*report) return cmd_report(report_args, out, err);
    if (*replay) return cmd_replay(replay_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironment;
  }
  return kUsage;
}

}  // namespace evoquery::cli
