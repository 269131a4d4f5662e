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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evoquery/fitness.hpp"
#include "evoquery/genome.hpp"

namespace evoquery {

enum class ProviderKind { Offline, Http };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::Offline;
  std::string endpoint;
  std::string api_key_header;  // key value comes from EVOQUERY_API_KEY
  double requests_per_second = 1.0;
};

// Run parameters. Defaults reproduce the reference parameterization: an empty
// JSON object yields exactly this struct.
struct RunConfig {
  std::size_t g2 = 8;  // queries per population
  std::size_t g3 = 6;  // terms per query
  std::size_t f1 = 20;
  std::size_t f2 = 20;
  std::size_t f3 = 20;
  double f4 = 0.75;  // same-host coefficient
  double f5 = 0.33;  // position weight
  double f6 = 0.33;  // cross-query weight
  double f7 = 0.34;  // semantic weight
  double m1 = 1.0;   // mutation probability
  std::size_t e1 = 10;  // generations
  double a_factor = 1.0;
  std::uint64_t rng_seed = 1;
  Variant variant = Variant::Lemma;
  ProviderConfig provider;
  std::size_t keyword_pool_size = 50;
  int relevance_threshold = 2;

  // Holds the reference text at its seed value and measures the cross-query
  // component against generation 0's result lists.
  bool freeze_reference = false;
  std::size_t reference_capacity = 100;
  std::size_t snippet_words = 40;  // offline snippets; 0 = full body
  std::vector<std::string> stop_words;

  FitnessWeights weights() const;

  // Throws ConfigInvalid.
  void validate() const;
};

// Strict: unknown keys and wrong types are ConfigInvalid.
RunConfig parse_run_config(std::string_view json);
RunConfig load_run_config(const std::filesystem::path& path);
std::string serialize_run_config(const RunConfig& config);

}  // namespace evoquery
