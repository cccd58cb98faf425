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

// Experiment configuration files.
//
// A config is a YAML mapping with the sections `experiment`, `game`,
// `policy` (a mapping or a list of mappings for side-by-side comparison),
// `adversary`, `sweep`, `scenario` and `faults`. Unknown sections and keys
// are rejected with the offending line number.

#ifndef FREE2SHARD_EXPERIMENT_CONFIG_HPP
#define FREE2SHARD_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "free2shard/game.hpp"
#include "free2shard/protocol/world.hpp"

namespace f2s::experiment {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { game, game_batch, protocol, sweep };

std::string_view to_string(ExperimentKind kind);

struct SweepSpec {
  std::string parameter;  // N, K, T, beta, rotation_interval, compliance
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::game;
  std::filesystem::path output;  // relative to the output root
  bool plots = true;
  game::GameConfig game;
  std::vector<policy::PolicySpec> policies;  // at least one for game kinds
  std::vector<std::uint64_t> seeds;
  SweepSpec sweep;
  protocol::Scenario scenario;

  /// One validated GameConfig per policy. Throws the core parameter errors.
  std::vector<game::GameConfig> game_configs() const;
};

/// Targets 1 / (ceil(i / 5) + 1) for shards i = 1..K.
std::vector<double> heterogeneous_targets(std::size_t K);

/// "a..b" (inclusive) or a comma separated list.
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Loads `preset:NAME` references and files alike.
ExperimentConfig resolve_config(const std::string& reference);

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown preset.
ExperimentConfig preset(std::string_view name);
/// YAML text of a preset (what ships under configs/).
std::string preset_text(std::string_view name);

}  // namespace f2s::experiment

#endif  // FREE2SHARD_EXPERIMENT_CONFIG_HPP
