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

// CSV writers and readers, plus dependency-free SVG charts.

#ifndef FREE2SHARD_EXPERIMENT_OUTPUT_HPP
#define FREE2SHARD_EXPERIMENT_OUTPUT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "free2shard/game.hpp"
#include "free2shard/protocol/world.hpp"

namespace f2s::experiment {

inline constexpr const char* kTraceHeader = "t,shard,gamma,beta,r,rbar";
inline constexpr const char* kSummaryHeader = "t,psi,distance";

/// Fixed "%.10g" formatting so outputs are byte-stable.
std::string format_number(double v);

/// Needs a trace recorded with record_shards.
void write_trace_csv(std::ostream& out, const game::GameTrace& trace);
void write_summary_csv(std::ostream& out, const game::GameTrace& trace);
void write_batch_csv(std::ostream& out, const game::BatchSummary& batch);
void write_targets_csv(std::ostream& out, const std::vector<double>& targets,
                       const std::vector<double>& achieved);
void write_stats_csv(std::ostream& out, const protocol::WorldReport& report);
void write_overhead_csv(std::ostream& out, const resources::ResourceCounters& counters);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws ArgumentError when the column is missing.
  std::size_t column(const std::string& name) const;
};

/// Numeric CSV with a header line. Throws ArgumentError on malformed input.
Table read_csv(std::istream& in);

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct ChartLabels {
  std::string title;
  std::string x_label = "round t";
  std::string y_label = "fraction";
};

/// Line chart with a legend; y range covers [0, max(1, data)].
std::string line_chart(const std::vector<Series>& series, const ChartLabels& labels);

/// Grouped bars: achieved next to target, one group per shard.
std::string bar_chart(const std::vector<double>& targets, const std::vector<double>& achieved,
                      const ChartLabels& labels);

}  // namespace f2s::experiment

#endif  // FREE2SHARD_EXPERIMENT_OUTPUT_HPP
