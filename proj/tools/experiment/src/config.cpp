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

#include "free2shard/experiment/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace f2s::experiment {

namespace {

[[noreturn]] void fail(const std::string& origin, const YAML::Node& node, const std::string& message) {
  std::ostringstream out;
  out << origin;
  if (node.Mark().line >= 0) out << ':' << node.Mark().line + 1;
  out << ": " << message;
  throw ConfigError(out.str());
}

void check_keys(const std::string& origin, const YAML::Node& map, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) fail(origin, map, "section '" + section + "' must be a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(origin, kv.first, "unknown key '" + key + "' in section '" + section + "'");
  }
}

template <class T>
T scalar(const std::string& origin, const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(origin, node, "invalid value for '" + key + "'");
  }
}

std::size_t count(const std::string& origin, const YAML::Node& node, const std::string& key) {
  const long long v = scalar<long long>(origin, node, key);
  if (v < 0) fail(origin, node, "'" + key + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

game::Mode parse_mode(const std::string& origin, const YAML::Node& node) {
  const std::string v = scalar<std::string>(origin, node, "mode");
  if (v == "mean-field") return game::Mode::mean_field;
  if (v == "stochastic") return game::Mode::stochastic;
  fail(origin, node, "mode must be 'mean-field' or 'stochastic'");
}

policy::PolicySpec parse_policy(const std::string& origin, const YAML::Node& node, std::size_t K) {
  check_keys(origin, node, "policy", {"kind", "h", "q", "s", "c", "targets"});
  if (!node["kind"]) fail(origin, node, "policy needs a 'kind'");
  policy::PolicySpec spec;
  const std::string kind = scalar<std::string>(origin, node["kind"], "kind");
  const auto parsed = policy::kind_from_string(kind);
  if (!parsed) fail(origin, node["kind"], "unknown policy kind '" + kind + "'");
  spec.kind = *parsed;
  if (node["h"]) spec.params.h = scalar<double>(origin, node["h"], "h");
  if (node["q"]) spec.params.q = scalar<double>(origin, node["q"], "q");
  if (node["s"]) spec.params.s = count(origin, node["s"], "s");
  if (node["c"]) spec.params.c = scalar<double>(origin, node["c"], "c");
  if (const YAML::Node t = node["targets"]) {
    if (t.IsScalar() && t.as<std::string>() == "heterogeneous") {
      spec.params.targets = heterogeneous_targets(K);
    } else if (t.IsScalar()) {
      spec.params.targets.assign(K, scalar<double>(origin, t, "targets"));
    } else if (t.IsSequence()) {
      for (const auto& v : t) spec.params.targets.push_back(scalar<double>(origin, v, "targets"));
    } else {
      fail(origin, t, "targets must be 'heterogeneous', a number or a list");
    }
  }
  return spec;
}

adversary::AdversarySpec parse_adversary(const std::string& origin, const YAML::Node& node) {
  check_keys(origin, node, "adversary", {"kind", "target", "ratio", "selection", "seed"});
  adversary::AdversarySpec spec;
  if (node["kind"]) {
    const std::string kind = scalar<std::string>(origin, node["kind"], "kind");
    const auto parsed = adversary::kind_from_string(kind);
    if (!parsed) fail(origin, node["kind"], "unknown adversary kind '" + kind + "'");
    spec.kind = *parsed;
  }
  if (node["target"]) spec.target = count(origin, node["target"], "target");
  if (node["ratio"]) spec.ratio = scalar<double>(origin, node["ratio"], "ratio");
  if (node["seed"]) spec.seed = scalar<std::uint64_t>(origin, node["seed"], "seed");
  if (node["selection"]) {
    const std::string sel = scalar<std::string>(origin, node["selection"], "selection");
    if (sel == "lowest-average") {
      spec.selection = adversary::CascadeSelection::lowest_average;
    } else if (sel == "nested-lowest-honest") {
      spec.selection = adversary::CascadeSelection::nested_lowest_honest;
    } else {
      fail(origin, node["selection"], "selection must be 'lowest-average' or 'nested-lowest-honest'");
    }
  }
  return spec;
}

void parse_scenario(const std::string& origin, const YAML::Node& node, protocol::Scenario& sc) {
  check_keys(origin, node, "scenario",
             {"nodes", "shards", "beta", "kappa", "smr_blocks", "epoch_length", "block_txs", "accounts",
              "initial_balance", "branching", "data_chunks", "rotation_interval", "expected_leaders", "seed"});
  if (node["nodes"]) sc.nodes = count(origin, node["nodes"], "nodes");
  if (node["shards"]) sc.shards = count(origin, node["shards"], "shards");
  if (node["beta"]) sc.beta = scalar<double>(origin, node["beta"], "beta");
  if (node["kappa"]) sc.kappa = count(origin, node["kappa"], "kappa");
  if (node["smr_blocks"]) sc.smr_blocks = count(origin, node["smr_blocks"], "smr_blocks");
  if (node["epoch_length"]) sc.epoch_length = count(origin, node["epoch_length"], "epoch_length");
  if (node["block_txs"]) sc.block_txs = count(origin, node["block_txs"], "block_txs");
  if (node["accounts"]) sc.accounts = static_cast<std::uint32_t>(count(origin, node["accounts"], "accounts"));
  if (node["initial_balance"]) sc.initial_balance = scalar<std::uint64_t>(origin, node["initial_balance"], "initial_balance");
  if (node["branching"]) sc.branching = count(origin, node["branching"], "branching");
  if (node["data_chunks"]) sc.data_chunks = count(origin, node["data_chunks"], "data_chunks");
  if (node["rotation_interval"]) sc.rotation_interval = count(origin, node["rotation_interval"], "rotation_interval");
  if (node["expected_leaders"]) sc.expected_leaders = scalar<double>(origin, node["expected_leaders"], "expected_leaders");
  if (node["seed"]) sc.seed = scalar<std::uint64_t>(origin, node["seed"], "seed");
}

void parse_faults(const std::string& origin, const YAML::Node& node, protocol::FaultPlan& f) {
  check_keys(origin, node, "faults", {"withhold", "miscode", "bad_commitment", "censor"});
  if (node["withhold"]) f.withhold = scalar<bool>(origin, node["withhold"], "withhold");
  if (node["miscode"]) f.miscode = scalar<bool>(origin, node["miscode"], "miscode");
  if (node["bad_commitment"]) f.bad_commitment = scalar<bool>(origin, node["bad_commitment"], "bad_commitment");
  if (node["censor"]) f.censor = scalar<bool>(origin, node["censor"], "censor");
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::game: return "game";
    case ExperimentKind::game_batch: return "game-batch";
    case ExperimentKind::protocol: return "protocol";
    case ExperimentKind::sweep: return "sweep";
  }
  return "game";
}

std::vector<double> heterogeneous_targets(std::size_t K) {
  std::vector<double> t(K);
  for (std::size_t i = 1; i <= K; ++i) t[i - 1] = 1.0 / (std::ceil(static_cast<double>(i) / 5.0) + 1.0);
  return t;
}

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  const auto number = [&](std::string_view s) {
    if (s.empty()) throw ConfigError("seed list: empty entry in '" + std::string(text) + "'");
    std::size_t used = 0;
    const std::string str(s);
    unsigned long long v = 0;
    try {
      v = std::stoull(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != str.size()) throw ConfigError("seed list: invalid number '" + str + "'");
    return static_cast<std::uint64_t>(v);
  };
  const std::size_t dots = text.find("..");
  if (dots != std::string_view::npos) {
    const std::uint64_t a = number(text.substr(0, dots));
    const std::uint64_t b = number(text.substr(dots + 2));
    if (b < a) throw ConfigError("seed range: end before start in '" + std::string(text) + "'");
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    seeds.push_back(number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return seeds;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(origin + ": top level must be a mapping");
  check_keys(origin, root, "<top>", {"experiment", "game", "policy", "adversary", "sweep", "scenario", "faults"});

  ExperimentConfig cfg;
  if (const YAML::Node e = root["experiment"]) {
    check_keys(origin, e, "experiment", {"name", "kind", "output", "plots", "seeds"});
    if (e["name"]) cfg.name = scalar<std::string>(origin, e["name"], "name");
    if (e["kind"]) {
      const std::string k = scalar<std::string>(origin, e["kind"], "kind");
      if (k == "game") cfg.kind = ExperimentKind::game;
      else if (k == "game-batch") cfg.kind = ExperimentKind::game_batch;
      else if (k == "protocol") cfg.kind = ExperimentKind::protocol;
      else if (k == "sweep") cfg.kind = ExperimentKind::sweep;
      else fail(origin, e["kind"], "unknown experiment kind '" + k + "'");
    }
    if (e["output"]) cfg.output = scalar<std::string>(origin, e["output"], "output");
    if (e["plots"]) cfg.plots = scalar<bool>(origin, e["plots"], "plots");
    if (e["seeds"]) {
      try {
        cfg.seeds = parse_seed_range(scalar<std::string>(origin, e["seeds"], "seeds"));
      } catch (const ConfigError& err) {
        fail(origin, e["seeds"], err.what());
      }
    }
  }
  if (cfg.output.empty()) cfg.output = cfg.name;

  game::GameConfig& g = cfg.game;
  bool gamma_given = false;
  if (const YAML::Node n = root["game"]) {
    check_keys(origin, n, "game",
               {"K", "N", "T", "gamma", "beta", "mode", "rotation_interval", "compliance", "seed", "record_shards"});
    if (n["K"]) g.K = count(origin, n["K"], "K");
    if (n["N"]) g.N = count(origin, n["N"], "N");
    if (n["T"]) g.T = static_cast<long long>(count(origin, n["T"], "T"));
    if (n["beta"]) g.beta = scalar<double>(origin, n["beta"], "beta");
    if (n["gamma"]) {
      g.gamma = scalar<double>(origin, n["gamma"], "gamma");
      gamma_given = true;
    }
    if (n["mode"]) g.mode = parse_mode(origin, n["mode"]);
    if (n["rotation_interval"]) g.rotation_interval = static_cast<long long>(count(origin, n["rotation_interval"], "rotation_interval"));
    if (n["compliance"]) g.compliance = scalar<double>(origin, n["compliance"], "compliance");
    if (n["seed"]) g.seed = scalar<std::uint64_t>(origin, n["seed"], "seed");
    if (n["record_shards"]) g.record_shards = scalar<bool>(origin, n["record_shards"], "record_shards");
  }
  if (!gamma_given) g.gamma = 1.0 - g.beta;

  if (const YAML::Node p = root["policy"]) {
    if (p.IsSequence()) {
      for (const auto& item : p) cfg.policies.push_back(parse_policy(origin, item, g.K));
    } else {
      cfg.policies.push_back(parse_policy(origin, p, g.K));
    }
  }
  if (const YAML::Node a = root["adversary"]) g.adversary = parse_adversary(origin, a);
  if (const YAML::Node s = root["sweep"]) {
    check_keys(origin, s, "sweep", {"parameter", "values"});
    if (s["parameter"]) cfg.sweep.parameter = scalar<std::string>(origin, s["parameter"], "parameter");
    static const std::set<std::string> sweepable = {"N", "K", "T", "beta", "rotation_interval", "compliance"};
    if (!sweepable.count(cfg.sweep.parameter)) fail(origin, s, "sweep parameter must be one of N, K, T, beta, rotation_interval, compliance");
    if (!s["values"] || !s["values"].IsSequence()) fail(origin, s, "sweep needs a list of values");
    for (const auto& v : s["values"]) cfg.sweep.values.push_back(scalar<double>(origin, v, "values"));
  }
  if (const YAML::Node sc = root["scenario"]) parse_scenario(origin, sc, cfg.scenario);
  if (const YAML::Node f = root["faults"]) parse_faults(origin, f, cfg.scenario.faults);

  const bool game_kind = cfg.kind != ExperimentKind::protocol;
  if (game_kind && cfg.policies.empty()) throw ConfigError(origin + ": a game experiment needs a 'policy' section");
  if (cfg.kind == ExperimentKind::game_batch && cfg.seeds.empty()) {
    for (std::uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
  }
  if (cfg.kind == ExperimentKind::sweep && cfg.sweep.values.empty()) {
    throw ConfigError(origin + ": a sweep experiment needs a 'sweep' section");
  }
  // Validate everything before any run starts.
  try {
    if (game_kind) (void)cfg.game_configs();
    else cfg.scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

ExperimentConfig resolve_config(const std::string& reference) {
  constexpr std::string_view kPrefix = "preset:";
  if (reference.rfind(kPrefix, 0) == 0) return preset(std::string_view(reference).substr(kPrefix.size()));
  return load_config(reference);
}

std::vector<game::GameConfig> ExperimentConfig::game_configs() const {
  std::vector<game::GameConfig> out;
  for (const policy::PolicySpec& p : policies) {
    game::GameConfig g = game;
    g.policy = p;
    out.push_back(game::validated(std::move(g)));
  }
  return out;
}

}  // namespace f2s::experiment
