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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evoquery {

enum class Persona { Specialist, Novice };

std::string_view persona_code(Persona p) noexcept;  // "S" or "N"
Persona parse_persona(std::string_view code);

struct Judgment {
  std::string doc_url;
  std::string expert_id;
  Persona persona = Persona::Specialist;
  int grade = 0;  // 0..3

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Tab-separated: doc_url, expert_id, persona (S|N), grade (0-3). Lines
// starting with '#' and blank lines are skipped.
std::vector<Judgment> parse_qrels(std::istream& in);
std::vector<Judgment> load_qrels(const std::filesystem::path& path);

// Arithmetic mean of the grades. Throws NoJudgments.
double consensus_grade(std::span<const Judgment> judgments);

// Consensus grade per (url, persona).
class GradeTable {
 public:
  GradeTable() = default;
  explicit GradeTable(std::span<const Judgment> judgments);

  std::optional<double> grade(std::string_view url, Persona persona) const;

 private:
  std::map<std::pair<std::string, Persona>, double, std::less<>> grades_;
};

struct RankedList {
  std::string name;
  std::vector<std::string> urls;  // rank order, no duplicates

  RankedList truncated(std::size_t n) const;
};

// Throws InvalidArgument on duplicate urls.
RankedList make_ranked_list(std::string name, std::vector<std::string> urls);
// One url per line; '#' comments and blank lines skipped. Throws ParseError.
RankedList load_ranked_list(const std::filesystem::path& path, std::string name);

enum MetricFlag : unsigned {
  kNoFlags = 0,
  kEmptyList = 1u << 0,
  kAllZeroGrades = 1u << 1,
  kMissingJudgments = 1u << 2,
};

// A metric value with the number of urls that had no judgment (scored as 0)
// and warning flags.
struct MetricValue {
  double value = 0.0;
  std::size_t missing = 0;
  unsigned flags = kNoFlags;
};

MetricValue mean_relevance(const RankedList& list, const GradeTable& grades, Persona persona);
// Share of urls whose consensus grade is at least `threshold`.
MetricValue precision(const RankedList& list, const GradeTable& grades, Persona persona, int threshold = 2);
// Sum over 0-based positions p < min(n, len) of (2^gr(p) - 1) / log2(2 + p).
MetricValue dcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n);
// dcg / dcg of the same urls in grade-descending order (ties by url). 0 and
// kAllZeroGrades when the ideal gain is 0.
MetricValue ndcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n);

// Mean of per-list DCG values (the 1/N averaging over query lists).
double mean_dcg(std::span<const double> per_list_dcg);

// The list reordered by consensus grade descending, ties by url ascending.
RankedList ideal_ordering(const RankedList& list, const GradeTable& grades, Persona persona);

// Cumulative DCG@k for k = 1..n; flat past the end of the list.
std::vector<double> cumulative_dcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n);

// Gain sequence helpers on raw grades, used by the list-based metrics.
double dcg_of_grades(std::span<const double> grades, std::size_t n);

// (1/N) sum x1(n) x2(n + shift); products that fall outside the sequences
// are dropped. Throws LengthMismatch.
double cross_correlation_raw(std::span<const double> x1, std::span<const double> x2, std::ptrdiff_t shift = 0);

// r12(0) / ((1/N) sqrt(sum x1^2 * sum x2^2)). Throws ZeroEnergySequence.
double rho12(std::span<const double> x1, std::span<const double> x2);

// 100 * |A n B| / |A u B| over url sets; 0 and kEmptyList when both are empty.
MetricValue overlap_percent(const RankedList& a, const RankedList& b);

struct MetricRow {
  std::string metric;
  std::string ordering;
  std::string persona;
  std::size_t n = 0;
  double value = 0.0;
};

struct MetricsReport {
  std::vector<MetricRow> rows;
  std::vector<std::string> warnings;
};

struct EvaluationOptions {
  std::vector<Persona> personas{Persona::Specialist, Persona::Novice};
  std::size_t cutoff = 20;
  int threshold = 2;
};

// Per ordering and persona: mean_relevance, precision, dcg, ndcg,
// missing_judgments and the dcg_cumulative series (all at the cutoff), plus
// rho12 against the ordering's expert-ideal reordering. Per ordering pair:
// rho12 of the cumulative DCG series and overlap_percent.
MetricsReport evaluate_orderings(std::span<const RankedList> orderings, const GradeTable& grades,
                                 const EvaluationOptions& options);

inline constexpr std::string_view kMetricsCsvHeader = "metric,ordering,persona,n,value";

void write_metrics_csv(std::ostream& out, const MetricsReport& report);
// Throws ParseError.
std::vector<MetricRow> parse_metrics_csv(std::istream& in);

}  // namespace evoquery
