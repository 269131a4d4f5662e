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

#include "evoquery/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "evoquery/error.hpp"

namespace evoquery {

std::string_view persona_code(Persona p) noexcept { return p == Persona::Specialist ? "S" : "N"; }

Persona parse_persona(std::string_view code) {
  if (code == "S") return Persona::Specialist;
  if (code == "N") return Persona::Novice;
  throw Error(ErrorCode::ParseError, "persona must be S or N, got '" + std::string(code) + "'");
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

std::vector<Judgment> parse_qrels(std::istream& in) {
  std::vector<Judgment> out;
  std::set<std::tuple<std::string, std::string, Persona>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4) throw Error(ErrorCode::ParseError, "expected 4 tab-separated fields", line_no);
    Judgment j;
    j.doc_url = fields[0];
    j.expert_id = fields[1];
    if (j.doc_url.empty() || j.expert_id.empty()) throw Error(ErrorCode::ParseError, "empty url or expert id", line_no);
    try {
      j.persona = parse_persona(fields[2]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, e.what(), line_no);
    }
    const auto& g = fields[3];
    int grade = 0;
    auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
    if (ec != std::errc() || ptr != g.data() + g.size()) {
      throw Error(ErrorCode::ParseError, "grade '" + g + "' is not an integer", line_no);
    }
    if (grade < 0 || grade > 3) throw Error(ErrorCode::GradeOutOfRange, "grade " + g + " outside 0..3", line_no);
    j.grade = grade;
    if (!seen.emplace(j.doc_url, j.expert_id, j.persona).second) {
      throw Error(ErrorCode::DuplicateJudgment, "duplicate judgment for " + j.doc_url + " by " + j.expert_id, line_no);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Judgment> load_qrels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open qrels " + path.string());
  return parse_qrels(in);
}

double consensus_grade(std::span<const Judgment> judgments) {
  if (judgments.empty()) throw Error(ErrorCode::NoJudgments, "no judgments to average");
  double sum = 0.0;
  for (const auto& j : judgments) sum += j.grade;
  return sum / static_cast<double>(judgments.size());
}

GradeTable::GradeTable(std::span<const Judgment> judgments) {
  std::map<std::pair<std::string, Persona>, std::vector<Judgment>> groups;
  for (const auto& j : judgments) groups[{j.doc_url, j.persona}].push_back(j);
  for (const auto& [key, group] : groups) grades_.emplace(key, consensus_grade(group));
}

std::optional<double> GradeTable::grade(std::string_view url, Persona persona) const {
  auto it = grades_.find(std::pair<std::string, Persona>(std::string(url), persona));
  if (it == grades_.end()) return std::nullopt;
  return it->second;
}

RankedList RankedList::truncated(std::size_t n) const {
  RankedList out{name, urls};
  if (out.urls.size() > n) out.urls.resize(n);
  return out;
}

RankedList make_ranked_list(std::string name, std::vector<std::string> urls) {
  std::set<std::string_view> seen;
  for (const auto& u : urls) {
    if (!seen.insert(u).second) throw Error(ErrorCode::InvalidArgument, "duplicate url '" + u + "' in " + name);
  }
  return RankedList{std::move(name), std::move(urls)};
}

RankedList load_ranked_list(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open list " + path.string());
  std::vector<std::string> urls;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen.insert(line).second) throw Error(ErrorCode::ParseError, "duplicate url '" + line + "'", line_no);
    urls.push_back(line);
  }
  return RankedList{std::move(name), std::move(urls)};
}

namespace {

struct Grades {
  std::vector<double> values;
  std::size_t missing = 0;
};

Grades grades_of(const RankedList& list, const GradeTable& table, Persona persona) {
  Grades g;
  g.values.reserve(list.urls.size());
  for (const auto& u : list.urls) {
    auto v = table.grade(u, persona);
    if (!v) ++g.missing;
    g.values.push_back(v.value_or(0.0));
  }
  return g;
}

unsigned base_flags(const Grades& g) {
  unsigned f = kNoFlags;
  if (g.values.empty()) f |= kEmptyList;
  if (g.missing > 0) f |= kMissingJudgments;
  return f;
}

}  // namespace

MetricValue mean_relevance(const RankedList& list, const GradeTable& grades, Persona persona) {
  const Grades g = grades_of(list, grades, persona);
  MetricValue m{0.0, g.missing, base_flags(g)};
  if (g.values.empty()) return m;
  double sum = 0.0;
  for (double v : g.values) sum += v;
  m.value = sum / static_cast<double>(g.values.size());
  return m;
}

MetricValue precision(const RankedList& list, const GradeTable& grades, Persona persona, int threshold) {
  const Grades g = grades_of(list, grades, persona);
  MetricValue m{0.0, g.missing, base_flags(g)};
  if (g.values.empty()) return m;
  const auto relevant = std::count_if(g.values.begin(), g.values.end(),
                                      [&](double v) { return v >= static_cast<double>(threshold); });
  m.value = static_cast<double>(relevant) / static_cast<double>(g.values.size());
  return m;
}

double dcg_of_grades(std::span<const double> grades, std::size_t n) {
  const std::size_t k = std::min(n, grades.size());
  double sum = 0.0;
  for (std::size_t p = 0; p < k; ++p) sum += (std::exp2(grades[p]) - 1.0) / std::log2(2.0 + static_cast<double>(p));
  return sum;
}

MetricValue dcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dcg cutoff must be positive");
  const Grades g = grades_of(list, grades, persona);
  return MetricValue{dcg_of_grades(g.values, n), g.missing, base_flags(g)};
}

RankedList ideal_ordering(const RankedList& list, const GradeTable& grades, Persona persona) {
  std::vector<std::pair<double, std::string>> items;
  for (const auto& u : list.urls) items.emplace_back(grades.grade(u, persona).value_or(0.0), u);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  RankedList out{list.name + ".ideal", {}};
  for (auto& [g, u] : items) out.urls.push_back(std::move(u));
  return out;
}

MetricValue ndcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n) {
  const MetricValue actual = dcg(list, grades, persona, n);
  const MetricValue ideal = dcg(ideal_ordering(list, grades, persona), grades, persona, n);
  MetricValue m{0.0, actual.missing, actual.flags};
  if (ideal.value == 0.0) {
    m.flags |= kAllZeroGrades;
    return m;
  }
  m.value = std::clamp(actual.value / ideal.value, 0.0, 1.0);
  return m;
}

double mean_dcg(std::span<const double> per_list_dcg) {
  if (per_list_dcg.empty()) return 0.0;
  double sum = 0.0;
  for (double v : per_list_dcg) sum += v;
  return sum / static_cast<double>(per_list_dcg.size());
}

std::vector<double> cumulative_dcg(const RankedList& list, const GradeTable& grades, Persona persona, std::size_t n) {
  const Grades g = grades_of(list, grades, persona);
  std::vector<double> series;
  series.reserve(n);
  double acc = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    if (p < g.values.size()) acc += (std::exp2(g.values[p]) - 1.0) / std::log2(2.0 + static_cast<double>(p));
    series.push_back(acc);
  }
  return series;
}

double cross_correlation_raw(std::span<const double> x1, std::span<const double> x2, std::ptrdiff_t shift) {
  if (x1.size() != x2.size()) throw Error(ErrorCode::LengthMismatch, "sequences differ in length");
  if (x1.empty()) throw Error(ErrorCode::InvalidArgument, "sequences are empty");
  const auto n = static_cast<std::ptrdiff_t>(x1.size());
  double sum = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = i + shift;
    if (k < 0 || k >= n) continue;
    sum += x1[static_cast<std::size_t>(i)] * x2[static_cast<std::size_t>(k)];
  }
  return sum / static_cast<double>(n);
}

double rho12(std::span<const double> x1, std::span<const double> x2) {
  const double r = cross_correlation_raw(x1, x2, 0);
  double e1 = 0.0;
  double e2 = 0.0;
  for (double v : x1) e1 += v * v;
  for (double v : x2) e2 += v * v;
  if (e1 == 0.0 || e2 == 0.0) throw Error(ErrorCode::ZeroEnergySequence, "sequence has zero energy");
  const double denom = std::sqrt(e1 * e2) / static_cast<double>(x1.size());
  return std::clamp(r / denom, -1.0, 1.0);
}

MetricValue overlap_percent(const RankedList& a, const RankedList& b) {
  const std::set<std::string_view> sa(a.urls.begin(), a.urls.end());
  const std::set<std::string_view> sb(b.urls.begin(), b.urls.end());
  std::size_t common = 0;
  for (const auto& u : sa) common += sb.contains(u) ? 1 : 0;
  const std::size_t all = sa.size() + sb.size() - common;
  if (all == 0) return MetricValue{0.0, 0, kEmptyList};
  return MetricValue{100.0 * static_cast<double>(common) / static_cast<double>(all), 0, kNoFlags};
}

namespace {

void note(MetricsReport& report, const std::string& what, unsigned flags, std::size_t missing) {
  if (flags & kEmptyList) report.warnings.push_back(what + ": empty list");
  if (flags & kAllZeroGrades) report.warnings.push_back(what + ": all grades are zero");
  if (flags & kMissingJudgments) {
    report.warnings.push_back(what + ": " + std::to_string(missing) + " url(s) without judgments scored as 0");
  }
}

}  // namespace

MetricsReport evaluate_orderings(std::span<const RankedList> orderings, const GradeTable& grades,
                                 const EvaluationOptions& options) {
  if (options.cutoff == 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be positive");
  MetricsReport report;
  const std::size_t n = options.cutoff;
  std::vector<RankedList> cut;
  for (const auto& o : orderings) cut.push_back(o.truncated(n));

  for (Persona persona : options.personas) {
    const std::string pc(persona_code(persona));
    auto row = [&](std::string metric, std::string ordering, std::size_t at, double value) {
      report.rows.push_back({std::move(metric), std::move(ordering), pc, at, value});
    };
    std::vector<std::vector<double>> series;
    for (const auto& list : cut) {
      const auto mr = mean_relevance(list, grades, persona);
      note(report, list.name + "/" + pc, mr.flags, mr.missing);
      row("mean_relevance", list.name, n, mr.value);
      row("precision", list.name, n, precision(list, grades, persona, options.threshold).value);
      row("dcg", list.name, n, dcg(list, grades, persona, n).value);
      const auto nd = ndcg(list, grades, persona, n);
      if (nd.flags & kAllZeroGrades) note(report, list.name + "/" + pc + " ndcg", kAllZeroGrades, 0);
      row("ndcg", list.name, n, nd.value);
      row("missing_judgments", list.name, n, static_cast<double>(mr.missing));

      series.push_back(cumulative_dcg(list, grades, persona, n));
      for (std::size_t k = 0; k < n; ++k) row("dcg_cumulative", list.name, k + 1, series.back()[k]);

      const auto ideal = cumulative_dcg(ideal_ordering(list, grades, persona), grades, persona, n);
      try {
        row("rho12", "expert-ideal~" + list.name, n, rho12(ideal, series.back()));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroEnergySequence) throw;
        report.warnings.push_back("rho12 expert-ideal~" + list.name + "/" + pc + ": zero-energy DCG series");
      }
    }
    for (std::size_t a = 0; a < cut.size(); ++a) {
      for (std::size_t b = a + 1; b < cut.size(); ++b) {
        const std::string pair = cut[a].name + "~" + cut[b].name;
        try {
          row("rho12", pair, n, rho12(series[a], series[b]));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ZeroEnergySequence) throw;
          report.warnings.push_back("rho12 " + pair + "/" + pc + ": zero-energy DCG series");
        }
        const auto ov = overlap_percent(cut[a], cut[b]);
        if (ov.flags & kEmptyList) report.warnings.push_back("overlap " + pair + ": both lists empty");
        row("overlap_percent", pair, n, ov.value);
      }
    }
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsReport& report) {
  out << kMetricsCsvHeader << '\n';
  char buf[64];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.value);
    out << csv_field(r.metric) << ',' << csv_field(r.ordering) << ',' << csv_field(r.persona) << ',' << r.n << ','
        << buf << '\n';
  }
}

std::vector<MetricRow> parse_metrics_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "metrics CSV is empty", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMetricsCsvHeader) throw Error(ErrorCode::ParseError, "unexpected metrics CSV header", 1);
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 5) throw Error(ErrorCode::ParseError, "expected 5 fields", line_no);
    MetricRow r{f[0], f[1], f[2], 0, 0.0};
    auto [p1, e1] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), r.n);
    if (e1 != std::errc() || p1 != f[3].data() + f[3].size()) throw Error(ErrorCode::ParseError, "bad n", line_no);
    try {
      std::size_t used = 0;
      r.value = std::stod(f[4], &used);
      if (used != f[4].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad value '" + f[4] + "'", line_no);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace evoquery
