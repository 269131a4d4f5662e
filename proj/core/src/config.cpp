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

#include "evoquery/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "evoquery/error.hpp"
#include "json_writer.hpp"

namespace evoquery {

FitnessWeights RunConfig::weights() const {
  FitnessWeights w;
  w.w_position = f5;
  w.w_crossquery = f6;
  w.w_semantic = f7;
  w.host_coeff = f4;
  w.f1 = f1;
  w.f2 = f2;
  w.f3 = f3;
  return w;
}

void RunConfig::validate() const {
  if (g2 == 0) throw Error(ErrorCode::ConfigInvalid, "g2 must be positive");
  if (g3 == 0) throw Error(ErrorCode::ConfigInvalid, "g3 must be positive");
  if (e1 == 0) throw Error(ErrorCode::ConfigInvalid, "e1 must be positive");
  weights().validate();
  if (!(m1 >= 0.0 && m1 <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "m1 must lie in [0, 1]");
  if (!(a_factor >= 0.0 && a_factor <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "a_factor must lie in [0, 1]");
  if (keyword_pool_size < g3) throw Error(ErrorCode::ConfigInvalid, "keyword_pool_size must be at least g3");
  if (relevance_threshold < 0 || relevance_threshold > 3) {
    throw Error(ErrorCode::ConfigInvalid, "relevance_threshold must lie in 0..3");
  }
  if (reference_capacity == 0) throw Error(ErrorCode::ConfigInvalid, "reference_capacity must be positive");
  if (provider.kind == ProviderKind::Http && provider.endpoint.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "http provider needs an endpoint");
  }
}

namespace {

using json = nlohmann::json;

template <typename T>
T take(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw Error(ErrorCode::ConfigInvalid, std::string("'") + key + "' must be a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!it->is_number_integer()) throw Error(ErrorCode::ConfigInvalid, std::string("'") + key + "' must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (it->is_number_integer() && !it->is_number_unsigned() && it->get<std::int64_t>() < 0) {
          throw Error(ErrorCode::ConfigInvalid, std::string("'") + key + "' must be non-negative");
        }
      }
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw Error(ErrorCode::ConfigInvalid, std::string("'") + key + "' must be a boolean");
    }
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("'") + key + "': " + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.contains(it.key())) throw Error(ErrorCode::ConfigInvalid, "unknown " + where + " key '" + it.key() + "'");
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("config is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  reject_unknown(j,
                 {"g2", "g3", "f1", "f2", "f3", "f4", "f5", "f6", "f7", "m1", "e1", "a_factor", "rng_seed", "variant",
                  "provider", "keyword_pool_size", "relevance_threshold", "freeze_reference", "reference_capacity",
                  "snippet_words", "stop_words"},
                 "config");
  RunConfig c;
  c.g2 = take(j, "g2", c.g2);
  c.g3 = take(j, "g3", c.g3);
  c.f1 = take(j, "f1", c.f1);
  c.f2 = take(j, "f2", c.f2);
  c.f3 = take(j, "f3", c.f3);
  c.f4 = take(j, "f4", c.f4);
  c.f5 = take(j, "f5", c.f5);
  c.f6 = take(j, "f6", c.f6);
  c.f7 = take(j, "f7", c.f7);
  c.m1 = take(j, "m1", c.m1);
  c.e1 = take(j, "e1", c.e1);
  c.a_factor = take(j, "a_factor", c.a_factor);
  c.rng_seed = take(j, "rng_seed", c.rng_seed);
  c.keyword_pool_size = take(j, "keyword_pool_size", c.keyword_pool_size);
  c.relevance_threshold = take(j, "relevance_threshold", c.relevance_threshold);
  c.freeze_reference = take(j, "freeze_reference", c.freeze_reference);
  c.reference_capacity = take(j, "reference_capacity", c.reference_capacity);
  c.snippet_words = take(j, "snippet_words", c.snippet_words);
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw Error(ErrorCode::ConfigInvalid, "'variant' must be a string");
    c.variant = parse_variant(j["variant"].get<std::string>());
  }
  if (j.contains("stop_words")) {
    if (!j["stop_words"].is_array()) throw Error(ErrorCode::ConfigInvalid, "'stop_words' must be an array");
    for (const auto& w : j["stop_words"]) {
      if (!w.is_string()) throw Error(ErrorCode::ConfigInvalid, "'stop_words' entries must be strings");
      c.stop_words.push_back(w.get<std::string>());
    }
  }
  if (j.contains("provider")) {
    const auto& p = j["provider"];
    if (!p.is_object()) throw Error(ErrorCode::ConfigInvalid, "'provider' must be an object");
    reject_unknown(p, {"type", "endpoint", "api_key_header", "requests_per_second"}, "provider");
    const auto type = take<std::string>(p, "type", "offline");
    if (type == "offline") {
      c.provider.kind = ProviderKind::Offline;
    } else if (type == "http") {
      c.provider.kind = ProviderKind::Http;
    } else {
      throw Error(ErrorCode::ConfigInvalid, "unknown provider type '" + type + "'");
    }
    c.provider.endpoint = take<std::string>(p, "endpoint", "");
    c.provider.api_key_header = take<std::string>(p, "api_key_header", "");
    c.provider.requests_per_second = take(p, "requests_per_second", c.provider.requests_per_second);
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string serialize_run_config(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["g2"] = c.g2;
  j["g3"] = c.g3;
  j["f1"] = c.f1;
  j["f2"] = c.f2;
  j["f3"] = c.f3;
  j["f4"] = c.f4;
  j["f5"] = c.f5;
  j["f6"] = c.f6;
  j["f7"] = c.f7;
  j["m1"] = c.m1;
  j["e1"] = c.e1;
  j["a_factor"] = c.a_factor;
  j["rng_seed"] = c.rng_seed;
  j["variant"] = std::string(to_string(c.variant));
  nlohmann::ordered_json p;
  p["type"] = c.provider.kind == ProviderKind::Http ? "http" : "offline";
  if (c.provider.kind == ProviderKind::Http) {
    p["endpoint"] = c.provider.endpoint;
    p["api_key_header"] = c.provider.api_key_header;
    p["requests_per_second"] = c.provider.requests_per_second;
  }
  j["provider"] = p;
  j["keyword_pool_size"] = c.keyword_pool_size;
  j["relevance_threshold"] = c.relevance_threshold;
  j["freeze_reference"] = c.freeze_reference;
  j["reference_capacity"] = c.reference_capacity;
  j["snippet_words"] = c.snippet_words;
  j["stop_words"] = c.stop_words;
  return detail::dump_json(j);
}

}  // namespace evoquery
