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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "evoquery/evaluation.hpp"

namespace evoquery::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;        // usage or validation failure
inline constexpr int kEnvironment = 2;  // provider or environment failure

// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// An ordering argument is "name=path" or a bare path; bare paths are named
// after their final component without extension.
struct NamedPath {
  std::string name;
  std::filesystem::path path;
};
NamedPath parse_named_path(const std::string& arg);

// Ranked list recorded in a ledger: the final aggregated list of an evolve
// run, or the provider's own order for a title-baseline run.
RankedList ledger_ranked_list(const std::filesystem::path& dir, std::string name);

struct ReportRow {
  std::string run;
  MetricRow row;
};

inline constexpr std::string_view kReportCsvHeader = "run,metric,ordering,persona,n,value";

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

// One chart per metric family, keyed by family name. Bars group by
// ordering/persona with one series per run; the per-position cumulative DCG
// family is drawn as lines.
std::vector<std::pair<std::string, std::string>> render_svg_report(const std::vector<ReportRow>& rows);

}  // namespace evoquery::cli
