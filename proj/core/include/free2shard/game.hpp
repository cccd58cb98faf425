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

// The repeated Stackelberg allocation game. Each round the honest policy
// moves (refreshing only every `rotation_interval` rounds), the adversary
// observes the honest allocation and responds, and the per-shard honest
// fractions are folded into the running average.
//
// Mean-field mode plays with power fractions directly. Stochastic mode
// samples n = floor(N gamma) honest nodes onto shards and hands the realised
// allocation Gamma_i = count_i / N to the adversary.

#ifndef FREE2SHARD_GAME_HPP
#define FREE2SHARD_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "free2shard/adversaries.hpp"
#include "free2shard/allocation.hpp"
#include "free2shard/policies.hpp"

namespace f2s::game {

enum class Mode { mean_field, stochastic };

struct GameConfig {
  std::size_t K = 2;
  std::size_t N = 1000;
  long long T = 1000;
  double gamma = 0.5;
  double beta = 0.5;
  Mode mode = Mode::mean_field;
  policy::PolicySpec policy;
  adversary::AdversarySpec adversary;
  long long rotation_interval = 1;
  double compliance = 1.0;
  std::uint64_t seed = 1;
  // Per-round per-shard matrices are kept only when set.
  bool record_shards = true;

  /// Honest node count floor(N gamma).
  std::size_t honest_nodes() const;
};

/// Throws ArgumentError / ParameterError on an inconsistent configuration.
/// Also propagates K and gamma/beta into the policy parameters.
GameConfig validated(GameConfig cfg);

struct RoundSummary {
  long long t = 0;
  double psi = 0.0;
  double distance = 0.0;
};

struct GameTrace {
  std::size_t K = 0;
  std::vector<RoundSummary> rounds;
  // Row-major [round][shard]; empty unless record_shards.
  std::vector<double> honest;
  std::vector<double> adversarial;
  std::vector<double> fraction;
  std::vector<double> average;
  std::vector<double> final_average;

  std::optional<double> final_psi() const;
  std::optional<double> final_distance() const;
  std::span<const double> row(const std::vector<double>& m, std::size_t round_index) const {
    return std::span<const double>(m).subspan(round_index * K, K);
  }
};

struct GameState {
  long long t = 0;  // rounds completed
  FractionVector average;
  AllocationVector honest_mean;  // policy output after compliance blending
  AllocationVector honest_used;  // what the adversary sees: mean or realised
  AllocationVector adversarial;  // last adversary move
  std::vector<std::size_t> counts;
  FractionVector fraction;  // r(t) of the last round
  double distance = 0.0;
  adversary::AdversaryPlayer adversary;
  std::mt19937_64 rng;

  explicit GameState(const GameConfig& cfg);
};

/// Draws `n` i.i.d. shard choices with probabilities proportional to
/// `weights` and returns the per-shard counts.
std::vector<std::size_t> sample_counts(std::span<const double> weights, std::size_t n,
                                       std::mt19937_64& rng);

GameState step_mean_field(GameState state, const GameConfig& cfg);
GameState step_stochastic(GameState state, const GameConfig& cfg);

/// Runs cfg.T rounds. Deterministic given cfg.seed.
GameTrace run(const GameConfig& cfg);

struct RunResult {
  std::uint64_t seed = 0;
  std::optional<double> psi;
  std::optional<double> distance;
};

struct Quantiles {
  double mean = 0.0;
  double min = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

struct BatchSummary {
  std::vector<RunResult> runs;  // in seed order
  Quantiles psi;
  Quantiles distance;
};

Quantiles summarize(std::vector<double> values);

/// Independent runs, one per seed, spread over `workers` threads (0 picks
/// the hardware concurrency). Results are merged in seed order.
BatchSummary run_batch(const GameConfig& cfg, std::span<const std::uint64_t> seeds,
                       unsigned workers = 0);

}  // namespace f2s::game

#endif  // FREE2SHARD_GAME_HPP
