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

#include <array>
#include <utility>

#include "free2shard/experiment/config.hpp"

namespace f2s::experiment {

namespace {

// Kept byte-identical to the files under configs/ (a test checks this).
constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kPresets{{
    {"homogeneous-large",
     R"(# K = 100 shards, N = 1000 nodes, half the power adversarial.
experiment:
  name: homogeneous-large
  kind: game
  output: homogeneous-large

game:
  K: 100
  N: 1000
  T: 2000
  beta: 0.5
  mode: stochastic
  seed: 1

policy:
  - kind: f2s
  - kind: f2s-dist
    h: 0.5
    q: 0.05
    s: 100

adversary:
  kind: cascade
)"},
    {"homogeneous-small",
     R"(# More shards than nodes: the best reachable target is N (1 - beta) / K = 0.05.
experiment:
  name: homogeneous-small
  kind: game
  output: homogeneous-small

game:
  K: 100
  N: 10
  T: 2000
  beta: 0.5
  mode: stochastic
  seed: 1

policy:
  - kind: f2s
    targets: 0.05
  - kind: f2s-dist
    h: 0.05
    q: 0.02
    s: 100

adversary:
  kind: cascade
)"},
    {"heterogeneous",
     R"(# Per-shard targets 1 / (ceil(i / 5) + 1), i = 1..100.
experiment:
  name: heterogeneous
  kind: game
  output: heterogeneous

game:
  K: 100
  N: 10
  T: 2000
  beta: 0.5
  mode: stochastic
  seed: 1

policy:
  kind: f2s
  targets: heterogeneous

adversary:
  kind: cascade
)"},
}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kPresets) names.emplace_back(name);
  return names;
}

std::string preset_text(std::string_view name) {
  for (const auto& [n, text] : kPresets) {
    if (n == name) return std::string(text);
  }
  std::string known;
  for (const auto& [n, text] : kPresets) known += (known.empty() ? "" : ", ") + std::string(n);
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

ExperimentConfig preset(std::string_view name) {
  return parse_config(preset_text(name), "preset:" + std::string(name));
}

}  // namespace f2s::experiment
