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

#ifndef FREE2SHARD_EXPERIMENT_RUNNER_HPP
#define FREE2SHARD_EXPERIMENT_RUNNER_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "free2shard/experiment/config.hpp"

namespace f2s::experiment {

inline constexpr const char* kOutputRootEnv = "F2S_OUTPUT_ROOT";

/// $F2S_OUTPUT_ROOT when set, else ./results.
std::filesystem::path output_root();

/// File-name-safe labels, one per policy ("f2s", "f2s-dist", "f2s-2", ...).
std::vector<std::string> policy_labels(const std::vector<policy::PolicySpec>& policies);

struct RunArtifacts {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;  // in creation order
};

/// Runs the experiment and writes its artifacts under root / cfg.output.
/// `log` receives one progress line per run. `workers` = 0 picks the
/// hardware concurrency for batches.
RunArtifacts run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& root, std::ostream& log,
                            unsigned workers = 0);

/// Renders a trace, summary, targets or batch CSV as SVG next to it (or at
/// `svg` when given). Returns the written path.
std::filesystem::path plot_csv(const std::filesystem::path& csv, std::filesystem::path svg = {});

}  // namespace f2s::experiment

#endif  // FREE2SHARD_EXPERIMENT_RUNNER_HPP
