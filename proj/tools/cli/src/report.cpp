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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "evoquery/cli.hpp"

namespace evoquery::cli {

namespace {

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

constexpr double kWidth = 960;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 200;
constexpr double kTop = 40;
constexpr double kBottom = 110;

struct Axis {
  double lo = 0.0;
  double hi = 1.0;

  double y(double v) const { return kTop + (hi - v) / (hi - lo) * (kHeight - kTop - kBottom); }
};

Axis axis_for(const std::vector<double>& values) {
  Axis a{0.0, 0.0};
  for (double v : values) {
    a.lo = std::min(a.lo, v);
    a.hi = std::max(a.hi, v);
  }
  if (a.hi - a.lo < 1e-12) a.hi = a.lo + 1.0;
  return a;
}

void frame(std::ostringstream& s, const std::string& title, const Axis& axis) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth, 0) << "\" height=\"" << num(kHeight, 0)
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
    << "</text>\n";
  const double plot_right = kWidth - kRight;
  for (int i = 0; i <= 4; ++i) {
    const double v = axis.lo + (axis.hi - axis.lo) * i / 4.0;
    const double y = axis.y(v);
    s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(plot_right) << "\" y2=\"" << num(y)
      << "\" stroke=\"#dddddd\"/>\n";
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v, 3)
      << "</text>\n";
  }
  s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(axis.y(0.0)) << "\" x2=\"" << num(plot_right) << "\" y2=\""
    << num(axis.y(0.0)) << "\" stroke=\"black\"/>\n";
}

void legend(std::ostringstream& s, const std::vector<std::string>& series) {
  const double x = kWidth - kRight + 16;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 18.0 * static_cast<double>(i);
    s << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"12\" height=\"12\" fill=\""
      << kPalette[i % kPaletteSize] << "\"/>\n";
    s << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 10) << "\">" << xml_escape(series[i]) << "</text>\n";
  }
}

std::string bar_chart(const std::string& family, const std::vector<const ReportRow*>& rows) {
  std::vector<std::string> groups;
  std::vector<std::string> runs;
  std::map<std::pair<std::string, std::string>, double> value;
  std::vector<double> all;
  for (const auto* r : rows) {
    const std::string group = r->row.ordering + " / " + r->row.persona;
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) groups.push_back(group);
    if (std::find(runs.begin(), runs.end(), r->run) == runs.end()) runs.push_back(r->run);
    value[{group, r->run}] = r->row.value;
    all.push_back(r->row.value);
  }
  std::sort(groups.begin(), groups.end());

  const Axis axis = axis_for(all);
  std::ostringstream s;
  frame(s, family, axis);
  const double plot_w = kWidth - kLeft - kRight;
  const double group_w = plot_w / static_cast<double>(groups.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(runs.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = kLeft + group_w * static_cast<double>(g) + group_w * 0.1;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const auto it = value.find({groups[g], runs[k]});
      if (it == value.end()) continue;
      const double y0 = axis.y(0.0);
      const double y1 = axis.y(it->second);
      s << "<rect x=\"" << num(gx + bar_w * static_cast<double>(k)) << "\" y=\"" << num(std::min(y0, y1))
        << "\" width=\"" << num(bar_w) << "\" height=\"" << num(std::abs(y1 - y0)) << "\" fill=\""
        << kPalette[k % kPaletteSize] << "\"><title>" << xml_escape(runs[k] + " " + groups[g] + " = " + num(it->second, 6))
        << "</title></rect>\n";
    }
    const double cx = kLeft + group_w * (static_cast<double>(g) + 0.5);
    const double ly = kHeight - kBottom + 14;
    s << "<text x=\"" << num(cx) << "\" y=\"" << num(ly) << "\" text-anchor=\"end\" transform=\"rotate(-35 "
      << num(cx) << " " << num(ly) << ")\">" << xml_escape(groups[g]) << "</text>\n";
  }
  legend(s, runs);
  s << "</svg>\n";
  return s.str();
}

std::string line_chart(const std::string& family, const std::vector<const ReportRow*>& rows) {
  std::map<std::string, std::map<std::size_t, double>> series;
  std::vector<double> all;
  std::size_t max_n = 1;
  for (const auto* r : rows) {
    series[r->run + ": " + r->row.ordering + " / " + r->row.persona][r->row.n] = r->row.value;
    all.push_back(r->row.value);
    max_n = std::max(max_n, r->row.n);
  }
  const Axis axis = axis_for(all);
  std::ostringstream s;
  frame(s, family, axis);
  const double plot_w = kWidth - kLeft - kRight;
  auto x = [&](std::size_t n) {
    return max_n == 1 ? kLeft + plot_w / 2 : kLeft + plot_w * static_cast<double>(n - 1) / static_cast<double>(max_n - 1);
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    s << "<text x=\"" << num(x(n)) << "\" y=\"" << num(kHeight - kBottom + 14) << "\" text-anchor=\"middle\">" << n
      << "</text>\n";
  }
  std::vector<std::string> names;
  std::size_t k = 0;
  for (const auto& [name, points] : series) {
    names.push_back(name);
    s << "<polyline fill=\"none\" stroke=\"" << kPalette[k % kPaletteSize] << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [n, v] : points) {
      s << (first ? "" : " ") << num(x(n)) << ',' << num(axis.y(v));
      first = false;
    }
    s << "\"/>\n";
    ++k;
  }
  legend(s, names);
  s << "</svg>\n";
  return s.str();
}

}  // namespace

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.run) << ',' << csv_field(r.row.metric) << ',' << csv_field(r.row.ordering) << ','
        << csv_field(r.row.persona) << ',' << r.row.n << ',' << num(r.row.value, 6) << '\n';
  }
}

std::vector<std::pair<std::string, std::string>> render_svg_report(const std::vector<ReportRow>& rows) {
  std::map<std::string, std::vector<const ReportRow*>> families;
  for (const auto& r : rows) families[r.row.metric].push_back(&r);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [family, members] : families) {
    out.emplace_back(family, family == "dcg_cumulative" ? line_chart(family, members) : bar_chart(family, members));
  }
  return out;
}

}  // namespace evoquery::cli
