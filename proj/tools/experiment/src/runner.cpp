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

#include "free2shard/experiment/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include "free2shard/errors.hpp"
#include "free2shard/experiment/output.hpp"

namespace f2s::experiment {

namespace fs = std::filesystem;

fs::path output_root() {
  const char* env = std::getenv(kOutputRootEnv);
  return env && *env ? fs::path(env) : fs::path("results");
}

std::vector<std::string> policy_labels(const std::vector<policy::PolicySpec>& policies) {
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const policy::PolicySpec& p : policies) {
    std::string label(policy::to_string(p.kind));
    const int n = ++seen[label];
    if (n > 1) label += "-" + std::to_string(n);
    labels.push_back(label);
  }
  return labels;
}

namespace {

class Writer {
 public:
  explicit Writer(fs::path dir) {
    artifacts_.directory = std::move(dir);
    fs::create_directories(artifacts_.directory);
  }

  template <class F>
  void write(const std::string& name, F&& body) {
    const fs::path path = artifacts_.directory / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
    artifacts_.files.push_back(path);
  }

  void text(const std::string& name, const std::string& content) {
    write(name, [&](std::ostream& out) { out << content; });
  }

  RunArtifacts take() { return std::move(artifacts_); }

 private:
  RunArtifacts artifacts_;
};

Series psi_series(const std::string& name, const game::GameTrace& trace) {
  Series s{name, {}, {}};
  s.xs.reserve(trace.rounds.size());
  s.ys.reserve(trace.rounds.size());
  for (const game::RoundSummary& r : trace.rounds) {
    s.xs.push_back(static_cast<double>(r.t));
    s.ys.push_back(r.psi);
  }
  return s;
}

bool heterogeneous(const TargetSet& target) { return !target.homogeneous(); }

void run_game(const ExperimentConfig& cfg, Writer& w, std::ostream& log) {
  const std::vector<game::GameConfig> configs = cfg.game_configs();
  const std::vector<std::string> labels = policy_labels(cfg.policies);
  std::vector<Series> curves;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const game::GameTrace trace = game::run(configs[k]);
    log << cfg.name << '/' << labels[k] << ": T=" << configs[k].T << " psi="
        << (trace.final_psi() ? format_number(*trace.final_psi()) : "n/a") << '\n';
    if (configs[k].record_shards) {
      w.write(labels[k] + "_trace.csv", [&](std::ostream& out) { write_trace_csv(out, trace); });
    }
    w.write(labels[k] + "_summary.csv", [&](std::ostream& out) { write_summary_csv(out, trace); });
    curves.push_back(psi_series(labels[k], trace));

    const TargetSet target = policy::policy_target(configs[k].policy);
    if (heterogeneous(target) && !trace.final_average.empty()) {
      const std::vector<double> lowers(target.lowers().begin(), target.lowers().end());
      w.write(labels[k] + "_targets.csv",
              [&](std::ostream& out) { write_targets_csv(out, lowers, trace.final_average); });
      if (cfg.plots) {
        w.text(labels[k] + "_targets.svg",
               bar_chart(lowers, trace.final_average,
                         {cfg.name + ": achieved vs target (" + labels[k] + ")", "shard", "fraction"}));
      }
    }
  }
  if (cfg.plots) w.text("psi.svg", line_chart(curves, {cfg.name + ": worst-shard average", "round t", "fraction"}));
}

void run_batch(const ExperimentConfig& cfg, Writer& w, std::ostream& log, unsigned workers) {
  const std::vector<game::GameConfig> configs = cfg.game_configs();
  const std::vector<std::string> labels = policy_labels(cfg.policies);
  std::vector<std::pair<std::string, game::BatchSummary>> results;
  std::vector<Series> curves;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    game::GameConfig c = configs[k];
    c.record_shards = false;
    game::BatchSummary batch = game::run_batch(c, cfg.seeds, workers);
    log << cfg.name << '/' << labels[k] << ": " << cfg.seeds.size() << " seeds, psi mean="
        << format_number(batch.psi.mean) << " min=" << format_number(batch.psi.min) << '\n';
    w.write(labels[k] + "_batch.csv", [&](std::ostream& out) { write_batch_csv(out, batch); });
    Series s{labels[k], {}, {}};
    for (const game::RunResult& r : batch.runs) {
      s.xs.push_back(static_cast<double>(r.seed));
      s.ys.push_back(r.psi.value_or(0.0));
    }
    curves.push_back(std::move(s));
    results.emplace_back(labels[k], std::move(batch));
  }
  w.write("batch_summary.csv", [&](std::ostream& out) {
    out << "policy,metric,mean,min,q10,median,q90,max\n";
    for (const auto& [label, b] : results) {
      for (const auto& [metric, q] : {std::pair{"psi", b.psi}, std::pair{"distance", b.distance}}) {
        out << label << ',' << metric << ',' << format_number(q.mean) << ',' << format_number(q.min) << ','
            << format_number(q.q10) << ',' << format_number(q.median) << ',' << format_number(q.q90) << ','
            << format_number(q.max) << '\n';
      }
    }
  });
  if (cfg.plots) w.text("psi_by_seed.svg", line_chart(curves, {cfg.name + ": final psi per seed", "seed", "fraction"}));
}

game::GameConfig with_parameter(game::GameConfig c, const std::string& parameter, double value) {
  const auto whole = [&](const char* name) {
    if (value < 0 || value != static_cast<double>(static_cast<long long>(value))) {
      throw ConfigError(std::string("sweep: ") + name + " needs nonnegative integer values");
    }
    return static_cast<long long>(value);
  };
  if (parameter == "N") {
    c.N = static_cast<std::size_t>(whole("N"));
    c.policy.params.N = 0;
    c.policy.params.n = 0;
  } else if (parameter == "K") {
    c.K = static_cast<std::size_t>(whole("K"));
    if (!c.policy.params.targets.empty()) {
      c.policy.params.targets.assign(c.K, c.policy.params.targets.front());
    }
    if (c.policy.kind == policy::Kind::f2s_dist) c.policy.params.s = std::min(c.policy.params.s, c.K);
  } else if (parameter == "T") {
    c.T = whole("T");
  } else if (parameter == "beta") {
    c.beta = value;
    c.gamma = 1.0 - value;
    c.policy.params.n = 0;
  } else if (parameter == "rotation_interval") {
    c.rotation_interval = whole("rotation_interval");
  } else if (parameter == "compliance") {
    c.compliance = value;
  } else {
    throw ConfigError("sweep: unknown parameter '" + parameter + "'");
  }
  return game::validated(std::move(c));
}

void run_sweep(const ExperimentConfig& cfg, Writer& w, std::ostream& log, unsigned workers) {
  const std::vector<game::GameConfig> base = cfg.game_configs();
  const std::vector<std::string> labels = policy_labels(cfg.policies);
  // Validate every point before running any of them.
  std::vector<std::vector<game::GameConfig>> grid;
  for (double v : cfg.sweep.values) {
    std::vector<game::GameConfig> row;
    for (const game::GameConfig& c : base) {
      game::GameConfig point = with_parameter(c, cfg.sweep.parameter, v);
      point.record_shards = false;
      row.push_back(std::move(point));
    }
    grid.push_back(std::move(row));
  }
  std::vector<Series> curves;
  for (const std::string& l : labels) curves.push_back({l, {}, {}});
  std::vector<std::vector<double>> psi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < grid[i].size(); ++k) {
      double value = 0.0;
      if (cfg.seeds.empty()) {
        value = game::run(grid[i][k]).final_psi().value_or(0.0);
      } else {
        value = game::run_batch(grid[i][k], cfg.seeds, workers).psi.mean;
      }
      log << cfg.name << '/' << labels[k] << ": " << cfg.sweep.parameter << '=' << format_number(cfg.sweep.values[i])
          << " psi=" << format_number(value) << '\n';
      psi[i].push_back(value);
      curves[k].xs.push_back(cfg.sweep.values[i]);
      curves[k].ys.push_back(value);
    }
  }
  w.write("sweep.csv", [&](std::ostream& out) {
    out << cfg.sweep.parameter;
    for (const std::string& l : labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < psi.size(); ++i) {
      out << format_number(cfg.sweep.values[i]);
      for (double v : psi[i]) out << ',' << format_number(v);
      out << '\n';
    }
  });
  if (cfg.plots) {
    w.text("sweep.svg", line_chart(curves, {cfg.name + ": final psi", cfg.sweep.parameter, "fraction"}));
  }
}

void run_protocol(const ExperimentConfig& cfg, Writer& w, std::ostream& log) {
  const protocol::WorldReport report = protocol::simulate(cfg.scenario);
  const resources::OverheadRatio ratio = resources::overhead_ratio(report.counters);
  log << cfg.name << ": " << report.log.size() << " log entries, " << report.stats.blocks_certified << '/'
      << report.stats.blocks_proposed << " blocks certified, overhead ratio "
      << (ratio.headline ? format_number(*ratio.headline) : "n/a") << '\n';
  w.write("log.txt", [&](std::ostream& out) { report.log.dump(out); });
  w.write("resources.csv", [&](std::ostream& out) { report.counters.write_csv(out); });
  w.write("overhead.csv", [&](std::ostream& out) { write_overhead_csv(out, report.counters); });
  w.write("stats.csv", [&](std::ostream& out) { write_stats_csv(out, report); });
  w.write("shards.csv", [&](std::ostream& out) {
    out << "shard,ledger_blocks,transactions,valid_transactions,state_root,last_finalized_root\n";
    for (const protocol::ShardOutcome& s : report.shards) {
      out << s.shard << ',' << s.ledger_blocks << ',' << s.transactions << ',' << s.valid_transactions << ','
          << protocol::to_hex(s.state_root) << ',' << protocol::to_hex(s.last_finalized_root) << '\n';
    }
  });
  w.write("log_bytes.csv", [&](std::ostream& out) {
    out << "smr,bytes\n";
    for (std::size_t i = 0; i < report.log_bytes_per_smr_block.size(); ++i) {
      out << i + 1 << ',' << report.log_bytes_per_smr_block[i] << '\n';
    }
  });
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& cfg, const fs::path& root, std::ostream& log, unsigned workers) {
  Writer w(root / cfg.output);
  switch (cfg.kind) {
    case ExperimentKind::game: run_game(cfg, w, log); break;
    case ExperimentKind::game_batch: run_batch(cfg, w, log, workers); break;
    case ExperimentKind::sweep: run_sweep(cfg, w, log, workers); break;
    case ExperimentKind::protocol: run_protocol(cfg, w, log); break;
  }
  return w.take();
}

fs::path plot_csv(const fs::path& csv, fs::path svg) {
  std::ifstream in(csv);
  if (!in) throw ArgumentError("cannot open " + csv.string());
  const Table table = read_csv(in);
  if (svg.empty()) svg = fs::path(csv).replace_extension(".svg");
  const std::string title = csv.stem().string();
  const auto has = [&](const char* c) {
    return std::find(table.header.begin(), table.header.end(), c) != table.header.end();
  };

  std::string body;
  if (has("shard") && has("target") && has("achieved")) {
    std::vector<double> targets, achieved;
    for (const auto& row : table.rows) {
      targets.push_back(row[table.column("target")]);
      achieved.push_back(row[table.column("achieved")]);
    }
    body = bar_chart(targets, achieved, {title + ": achieved vs target", "shard", "fraction"});
  } else if (has("t") && has("shard") && has("rbar")) {
    // Trace: worst and mean shard average per round.
    std::map<double, std::pair<double, std::pair<double, int>>> per_round;
    const std::size_t tc = table.column("t");
    const std::size_t rc = table.column("rbar");
    for (const auto& row : table.rows) {
      auto [it, fresh] = per_round.try_emplace(row[tc], row[rc], std::pair{0.0, 0});
      if (!fresh) it->second.first = std::min(it->second.first, row[rc]);
      it->second.second.first += row[rc];
      it->second.second.second += 1;
    }
    Series worst{"worst shard (psi)", {}, {}};
    Series mean{"mean shard", {}, {}};
    for (const auto& [t, v] : per_round) {
      worst.xs.push_back(t);
      worst.ys.push_back(v.first);
      mean.xs.push_back(t);
      mean.ys.push_back(v.second.first / v.second.second);
    }
    body = line_chart({worst, mean}, {title, "round t", "fraction"});
  } else if (has("t") && has("psi")) {
    Series psi{"psi", {}, {}};
    for (const auto& row : table.rows) {
      psi.xs.push_back(row[table.column("t")]);
      psi.ys.push_back(row[table.column("psi")]);
    }
    body = line_chart({psi}, {title, "round t", "fraction"});
  } else if (has("seed") && has("psi")) {
    Series psi{"psi", {}, {}};
    for (const auto& row : table.rows) {
      psi.xs.push_back(row[table.column("seed")]);
      psi.ys.push_back(row[table.column("psi")]);
    }
    body = line_chart({psi}, {title, "seed", "fraction"});
  } else {
    throw ArgumentError("plot: unrecognised CSV columns in " + csv.string());
  }
  std::ofstream out(svg, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + svg.string());
  out << body;
  return svg;
}

}  // namespace f2s::experiment
