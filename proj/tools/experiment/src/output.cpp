// Copyright 2026 The Free2Shard Lab Authors.
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

#include "free2shard/experiment/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "free2shard/errors.hpp"

namespace f2s::experiment {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_trace_csv(std::ostream& out, const game::GameTrace& trace) {
  if (trace.fraction.empty() && !trace.rounds.empty()) {
    throw ArgumentError("write_trace_csv: trace was recorded without per-shard rows");
  }
  out << kTraceHeader << '\n';
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const auto g = trace.row(trace.honest, r);
    const auto b = trace.row(trace.adversarial, r);
    const auto f = trace.row(trace.fraction, r);
    const auto a = trace.row(trace.average, r);
    for (std::size_t i = 0; i < trace.K; ++i) {
      out << trace.rounds[r].t << ',' << i << ',' << format_number(g[i]) << ',' << format_number(b[i]) << ','
          << format_number(f[i]) << ',' << format_number(a[i]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const game::GameTrace& trace) {
  out << kSummaryHeader << '\n';
  for (const game::RoundSummary& r : trace.rounds) {
    out << r.t << ',' << format_number(r.psi) << ',' << format_number(r.distance) << '\n';
  }
}

void write_batch_csv(std::ostream& out, const game::BatchSummary& batch) {
  out << "seed,psi,distance\n";
  for (const game::RunResult& r : batch.runs) {
    out << r.seed << ',' << (r.psi ? format_number(*r.psi) : "nan") << ','
        << (r.distance ? format_number(*r.distance) : "nan") << '\n';
  }
}

void write_targets_csv(std::ostream& out, const std::vector<double>& targets,
                       const std::vector<double>& achieved) {
  check_dimensions(targets.size(), achieved.size(), "write_targets_csv");
  out << "shard,target,achieved\n";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out << i << ',' << format_number(targets[i]) << ',' << format_number(achieved[i]) << '\n';
  }
}

void write_stats_csv(std::ostream& out, const protocol::WorldReport& report) {
  const protocol::WorldStats& s = report.stats;
  const std::pair<const char*, std::size_t> rows[] = {
      {"blocks_proposed", s.blocks_proposed},
      {"adversarial_blocks_proposed", s.adversarial_blocks_proposed},
      {"blocks_certified", s.blocks_certified},
      {"blocks_unavailable", s.blocks_unavailable},
      {"blocks_fraud_proven", s.blocks_fraud_proven},
      {"blocks_pending", s.blocks_pending},
      {"miscoded_blocks_certified", s.miscoded_blocks_certified},
      {"miscoded_blocks_in_ledger", s.miscoded_blocks_in_ledger},
      {"honest_blocks_in_ledger", s.honest_blocks_in_ledger},
      {"adversarial_blocks_in_ledger", s.adversarial_blocks_in_ledger},
      {"commitments", s.commitments},
      {"bad_commitments", s.bad_commitments},
      {"challenges", s.challenges},
      {"bisection_rounds", s.bisection_rounds},
      {"challenger_wins", s.challenger_wins},
      {"invalid_commitments_finalized", s.invalid_commitments_finalized},
      {"epochs_without_leader", s.epochs_without_leader},
      {"log_entries", report.log.size()},
  };
  out << "key,value\n";
  for (const auto& [key, value] : rows) out << key << ',' << value << '\n';
}

void write_overhead_csv(std::ostream& out, const resources::ResourceCounters& counters) {
  const resources::OverheadRatio ratio = resources::overhead_ratio(counters);
  out << "dimension,ratio\n";
  for (std::size_t d = 0; d < resources::kDimensionCount; ++d) {
    out << resources::dimension_name(static_cast<resources::Dimension>(d)) << ','
        << (ratio.per_dimension[d] ? format_number(*ratio.per_dimension[d]) : "nan") << '\n';
  }
  out << "headline," << (ratio.headline ? format_number(*ratio.headline) : "nan") << '\n';
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ArgumentError("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != table.header.size()) {
      throw ArgumentError("csv: line " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty()) {
        throw ArgumentError("csv: line " + std::to_string(number) + ": not a number '" + c + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (kWidth - kLeft - kRight);
  }
  double py(double y) const { return kTop + (1.0 - (y - y0) / (y1 - y0)) * (kHeight - kTop - kBottom); }
};

void open_svg(std::ostringstream& svg, const ChartLabels& labels) {
  svg << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight
      << R"(" font-family="sans-serif" font-size="12">)" << '\n';
  svg << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  svg << R"(<text x=")" << num(kWidth / 2 - kRight / 2 + kLeft / 2) << R"(" y="22" text-anchor="middle" font-size="15">)"
      << escape(labels.title) << "</text>\n";
}

void axes(std::ostringstream& svg, const Frame& f, const ChartLabels& labels, bool x_ticks) {
  const double left = kLeft;
  const double right = kWidth - kRight;
  const double top = kTop;
  const double bottom = kHeight - kBottom;
  svg << R"(<path d="M)" << num(left) << ' ' << num(top) << " V" << num(bottom) << " H" << num(right)
      << R"(" stroke="black" fill="none"/>)" << '\n';
  for (int k = 0; k <= 5; ++k) {
    const double y = f.y0 + (f.y1 - f.y0) * k / 5.0;
    svg << R"(<line x1=")" << num(left) << R"(" x2=")" << num(right) << R"(" y1=")" << num(f.py(y)) << R"(" y2=")"
        << num(f.py(y)) << R"(" stroke="#ddd"/>)" << '\n';
    svg << R"(<text x=")" << num(left - 6) << R"(" y=")" << num(f.py(y) + 4) << R"(" text-anchor="end">)"
        << tick_label(y) << "</text>\n";
  }
  if (x_ticks) {
    for (int k = 0; k <= 5; ++k) {
      const double x = f.x0 + (f.x1 - f.x0) * k / 5.0;
      svg << R"(<text x=")" << num(f.px(x)) << R"(" y=")" << num(bottom + 18) << R"(" text-anchor="middle">)"
          << tick_label(f.x1 - f.x0 >= 10 ? std::round(x) : std::round(x * 100) / 100) << "</text>\n";
    }
  }
  svg << R"(<text x=")" << num((left + right) / 2) << R"(" y=")" << num(kHeight - 16)
      << R"(" text-anchor="middle">)" << escape(labels.x_label) << "</text>\n";
  svg << R"(<text x="18" y=")" << num((top + bottom) / 2) << R"(" text-anchor="middle" transform="rotate(-90 18 )"
      << num((top + bottom) / 2) << R"lit()">)lit" << escape(labels.y_label) << "</text>\n";
}

void legend(std::ostringstream& svg, const std::vector<std::string>& names) {
  const double x = kWidth - kRight + 16;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 10 + 20.0 * static_cast<double>(i);
    svg << R"(<rect x=")" << num(x) << R"(" y=")" << num(y - 9) << R"(" width="14" height="10" fill=")"
        << kPalette[i % std::size(kPalette)] << R"("/>)" << '\n';
    svg << R"(<text x=")" << num(x + 20) << R"(" y=")" << num(y) << R"(">)" << escape(names[i]) << "</text>\n";
  }
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartLabels& labels) {
  Frame f{0, 1, 0, 1};
  bool first = true;
  for (const Series& s : series) {
    check_dimensions(s.xs.size(), s.ys.size(), "line_chart");
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (first) {
        f.x0 = f.x1 = s.xs[i];
        first = false;
      }
      f.x0 = std::min(f.x0, s.xs[i]);
      f.x1 = std::max(f.x1, s.xs[i]);
      if (std::isfinite(s.ys[i])) f.y1 = std::max(f.y1, s.ys[i]);
    }
  }
  std::ostringstream svg;
  open_svg(svg, labels);
  axes(svg, f, labels, true);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    names.push_back(s.name);
    // Thin long series to at most ~2000 vertices.
    const std::size_t stride = std::max<std::size_t>(1, s.xs.size() / 2000);
    svg << R"(<polyline fill="none" stroke-width="1.5" stroke=")" << kPalette[k % std::size(kPalette)]
        << R"(" points=")";
    for (std::size_t i = 0; i < s.xs.size(); i += stride) {
      if (!std::isfinite(s.ys[i])) continue;
      svg << num(f.px(s.xs[i])) << ',' << num(f.py(s.ys[i])) << ' ';
    }
    if (!s.xs.empty() && (s.xs.size() - 1) % stride != 0 && std::isfinite(s.ys.back())) {
      svg << num(f.px(s.xs.back())) << ',' << num(f.py(s.ys.back()));
    }
    svg << R"("/>)" << '\n';
  }
  legend(svg, names);
  svg << "</svg>\n";
  return svg.str();
}

std::string bar_chart(const std::vector<double>& targets, const std::vector<double>& achieved,
                      const ChartLabels& labels) {
  check_dimensions(targets.size(), achieved.size(), "bar_chart");
  Frame f{0, static_cast<double>(targets.size()), 0, 1};
  for (std::size_t i = 0; i < targets.size(); ++i) f.y1 = std::max({f.y1, targets[i], achieved[i]});
  std::ostringstream svg;
  open_svg(svg, labels);
  axes(svg, f, labels, false);
  const double slot = targets.empty() ? 0.0 : (kWidth - kLeft - kRight) / static_cast<double>(targets.size());
  const double bar = std::max(0.5, slot * 0.4);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double x = kLeft + slot * static_cast<double>(i) + slot * 0.1;
    const double values[2] = {achieved[i], targets[i]};
    for (int k = 0; k < 2; ++k) {
      const double v = std::max(0.0, values[k]);
      svg << R"(<rect x=")" << num(x + bar * k) << R"(" y=")" << num(f.py(v)) << R"(" width=")" << num(bar)
          << R"(" height=")" << num(f.py(0) - f.py(v)) << R"(" fill=")" << kPalette[k] << R"("/>)" << '\n';
    }
  }
  for (int k = 0; k <= 4; ++k) {
    const std::size_t i = targets.empty() ? 0 : (targets.size() - 1) * static_cast<std::size_t>(k) / 4;
    svg << R"(<text x=")" << num(kLeft + slot * (static_cast<double>(i) + 0.5)) << R"(" y=")"
        << num(kHeight - kBottom + 18) << R"(" text-anchor="middle">)" << i + 1 << "</text>\n";
  }
  legend(svg, {"achieved", "target"});
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace f2s::experiment
