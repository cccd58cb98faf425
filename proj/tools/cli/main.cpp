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

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "free2shard/experiment/config.hpp"
#include "free2shard/experiment/runner.hpp"
#include "free2shard/experiment/verify.hpp"

namespace fx = f2s::experiment;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string output_root;
  bool no_plots = false;
  unsigned workers = 0;
};

int run(fx::ExperimentConfig cfg, const Common& common) {
  if (common.seed) {
    cfg.game.seed = *common.seed;
    cfg.scenario.seed = *common.seed;
  }
  if (common.no_plots) cfg.plots = false;
  const std::filesystem::path root = common.output_root.empty() ? fx::output_root() : std::filesystem::path(common.output_root);
  const fx::RunArtifacts artifacts = fx::run_experiment(cfg, root, std::cerr, common.workers);
  for (const auto& f : artifacts.files) std::cout << f.string() << '\n';
  return 0;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Override the config seed");
  cmd->add_option("--output-root", common.output_root, "Output root (default $F2S_OUTPUT_ROOT or ./results)");
  cmd->add_flag("--no-plots", common.no_plots, "Skip SVG plots");
  cmd->add_option("--workers", common.workers, "Worker threads for batches (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free2shard: dynamic self-allocation games and sharding protocol simulator"};
  app.require_subcommand(1);

  Common common;
  std::string reference;
  std::string seeds;
  std::string suite;
  std::string csv;
  std::string svg;

  CLI::App* game = app.add_subcommand("game", "Allocation game experiments");
  game->require_subcommand(1);
  CLI::App* game_run = game->add_subcommand("run", "Run a game config (file or preset:NAME)");
  game_run->add_option("config", reference, "Config file or preset:NAME")->required();
  add_common(game_run, common);
  CLI::App* game_batch = game->add_subcommand("batch", "Run a config over a seed range");
  game_batch->add_option("config", reference, "Config file or preset:NAME")->required();
  game_batch->add_option("--seeds", seeds, "Seed range a..b or list a,b,c");
  add_common(game_batch, common);

  CLI::App* protocol = app.add_subcommand("protocol", "Protocol simulation");
  protocol->require_subcommand(1);
  CLI::App* protocol_run = protocol->add_subcommand("run", "Simulate a scenario config");
  protocol_run->add_option("scenario", reference, "Scenario config file")->required();
  add_common(protocol_run, common);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name (see --list)");
  bool list = false;
  verify->add_flag("--list", list, "List suite names");
  verify->add_option("--workers", common.workers, "Worker threads for batches (0 = all cores)");

  CLI::App* report = app.add_subcommand("report", "Render outputs");
  report->require_subcommand(1);
  CLI::App* plot = report->add_subcommand("plot", "Render a CSV (trace, summary, targets, batch) as SVG");
  plot->add_option("csv", csv, "CSV file")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--output", svg, "SVG path (default: next to the CSV)");

  CLI::App* presets = app.add_subcommand("presets", "List built-in presets, or print one");
  std::string preset_name;
  presets->add_option("name", preset_name, "Preset to print as YAML");

  CLI11_PARSE(app, argc, argv);

  try {
    if (game_run->parsed()) {
      fx::ExperimentConfig cfg = fx::resolve_config(reference);
      if (cfg.kind == fx::ExperimentKind::protocol) throw fx::ConfigError(reference + ": not a game config");
      if (cfg.kind == fx::ExperimentKind::game_batch) cfg.kind = fx::ExperimentKind::game;
      return run(std::move(cfg), common);
    }
    if (game_batch->parsed()) {
      fx::ExperimentConfig cfg = fx::resolve_config(reference);
      if (cfg.kind == fx::ExperimentKind::protocol) throw fx::ConfigError(reference + ": not a game config");
      cfg.kind = fx::ExperimentKind::game_batch;
      if (!seeds.empty()) cfg.seeds = fx::parse_seed_range(seeds);
      if (cfg.seeds.empty()) throw fx::ConfigError("game batch: no seeds (use --seeds a..b)");
      return run(std::move(cfg), common);
    }
    if (protocol_run->parsed()) {
      fx::ExperimentConfig cfg = fx::resolve_config(reference);
      cfg.kind = fx::ExperimentKind::protocol;
      cfg.scenario.validate();
      return run(std::move(cfg), common);
    }
    if (verify->parsed()) {
      if (list || suite.empty()) {
        for (const std::string& n : fx::suite_names()) std::cout << n << '\n';
        return suite.empty() && !list ? 2 : 0;
      }
      bool ok = true;
      for (const fx::SuiteReport& r : fx::run_suite(suite, common.workers)) {
        fx::print_report(std::cout, r);
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
    if (plot->parsed()) {
      std::cout << fx::plot_csv(csv, svg).string() << '\n';
      return 0;
    }
    if (presets->parsed()) {
      if (preset_name.empty()) {
        for (const std::string& n : fx::preset_names()) std::cout << n << '\n';
      } else {
        std::cout << fx::preset_text(preset_name);
      }
      return 0;
    }
  } catch (const fx::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
