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

// Reference computations used by the verify suites. None of these call the
// library routine they are compared against.

#ifndef FREE2SHARD_EXPERIMENT_ORACLES_HPP
#define FREE2SHARD_EXPERIMENT_ORACLES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "free2shard/protocol/hash.hpp"

namespace f2s::experiment::oracle {

/// sum_i u_i g_i / (g_i + b_i), with 0/0 terms counted as 0.
double allocation_objective(std::span<const double> u, std::span<const double> honest,
                            std::span<const double> adversarial);

struct GridMinimum {
  double value = 0.0;
  std::vector<double> adversarial;
};

/// Minimises allocation_objective over adversarial splits of `beta`: greedy
/// placement of `step`-sized increments (optimal on the grid for separable
/// convex terms), then pairwise exchanges with halving step sizes.
GridMinimum grid_minimum(std::span<const double> u, std::span<const double> honest, double beta,
                         double step = 1e-4);

/// Long-run period average of the escalation adversary's target shard.
double escalation_closed_form(double K, double r);

/// Smallest H with S^H >= B, by repeated multiplication.
std::size_t rounds_to_cover(std::size_t B, std::size_t S);

/// First index where the two root sequences differ; size() when equal.
std::size_t first_divergence(std::span<const protocol::Digest> a, std::span<const protocol::Digest> b);

/// Strict majority of N votes.
bool majority(std::size_t yes, std::size_t N);

/// Honest-side minimum share of chunks p = ceil((1/2 - beta) N) > 0.
std::size_t data_chunk_threshold(std::size_t adversarial, std::size_t N);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace f2s::experiment::oracle

#endif  // FREE2SHARD_EXPERIMENT_ORACLES_HPP
