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

#include <string>

#include <json.hpp>

namespace evoquery::detail {

// Compact JSON with every floating-point value written with 17 significant
// digits, so ledgers round-trip bit-for-bit.
std::string dump_json(const nlohmann::ordered_json& value);

// Path of the first difference between two documents ("" when equal),
// e.g. "queries[2].results[5].w".
std::string first_difference(const nlohmann::json& a, const nlohmann::json& b, const std::string& path = "");

}  // namespace evoquery::detail
