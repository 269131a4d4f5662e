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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/corpus.hpp"
#include "evoquery/evolution.hpp"

namespace evoquery {

// Where a run's inputs came from; stored as run.json next to config.json.
struct RunInputs {
  std::string mode = "evolve";  // or "title_baseline"
  std::string index_path;
  std::string index_digest;
  std::string endpoint;
  std::string seed_digest;
};

// Ledger directory layout:
//   config.json          the RunConfig, every field explicit
//   run.json             RunInputs and the keyword pool
//   seed_material.jsonl  copy of the seed documents
//   generations.jsonl    one GenerationRecord per line
//   final_results.json   aggregated top-f3 with components
// Floating-point values carry 17 significant digits.
void write_ledger(const std::filesystem::path& dir, const RunLedger& ledger, const RunInputs& inputs,
                  std::span<const Document> seed_material);

struct LoadedLedger {
  RunLedger ledger;
  RunInputs inputs;
  std::vector<Document> seed_material;
};

// Throws LedgerCorrupt.
LoadedLedger read_ledger(const std::filesystem::path& dir);

std::string serialize_generation(const GenerationRecord& record);
GenerationRecord parse_generation(std::string_view line);
std::string serialize_final_results(std::span<const ScoredResult> results);
std::vector<ScoredResult> parse_final_results(std::string_view text);

std::string seed_digest(std::span<const Document> seed_material);

struct ReplayReport {
  std::size_t generations_verified = 0;
};

// Re-runs an offline ledger from its recorded config and inputs and checks
// every generation line and the final results byte for byte. Throws
// NotReplayable for network runs, DivergenceDetected naming the generation
// and field of the first mismatch, LedgerCorrupt for unreadable ledgers.
ReplayReport replay_ledger(const std::filesystem::path& dir,
                           const std::optional<std::filesystem::path>& index_override = std::nullopt);

}  // namespace evoquery
