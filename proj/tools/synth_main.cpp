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

// Writes a planted-topic corpus, its seed material and generator qrels.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "evoquery/corpus.hpp"
#include "evoquery/error.hpp"
#include "evoquery/synthetic.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  evoquery::SyntheticSpec spec;
  std::string out_dir = "data";

  CLI::App app{"Generate a synthetic corpus with a planted relevant cluster", "evoquery-synth"};
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--documents", spec.documents, "Corpus size");
  app.add_option("--relevant", spec.relevant, "Planted relevant cluster size");
  app.add_option("--clusters", spec.distractor_clusters, "Distractor clusters");
  app.add_option("--cluster-size", spec.distractor_size, "Documents per distractor cluster");
  app.add_option("--shared-terms", spec.shared_with_target, "Target terms reused by each distractor topic");
  app.add_option("--density", spec.topic_density, "Share of topic words in clustered documents");
  app.add_option("--hosts", spec.hosts, "Distinct hosts");
  app.add_option("--seed-documents", spec.seed_documents, "Seed material documents");
  app.add_option("--seed", spec.seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto corpus = evoquery::generate_planted_corpus(spec);
    fs::create_directories(out_dir);
    evoquery::save_corpus(fs::path(out_dir) / "corpus.jsonl", corpus.documents);
    evoquery::save_corpus(fs::path(out_dir) / "seed.jsonl", corpus.seed_material);
    std::ofstream qrels(fs::path(out_dir) / "qrels.tsv", std::ios::binary | std::ios::trunc);
    qrels << "# url\texpert\tpersona\tgrade\n";
    for (const auto& j : corpus.qrels) {
      qrels << j.doc_url << '\t' << j.expert_id << '\t' << evoquery::persona_code(j.persona) << '\t' << j.grade << '\n';
    }
    std::cout << "wrote " << corpus.documents.size() << " documents, " << corpus.seed_material.size()
              << " seed documents, " << corpus.qrels.size() << " judgments to " << out_dir << '\n';
  } catch (const evoquery::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
