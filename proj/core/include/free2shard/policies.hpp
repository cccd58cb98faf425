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

// Honest dynamic self-allocation (DSA) policies.
//
// Every policy maps the public history (previous adversarial allocation or
// previous time-averaged honest fractions) to the honest allocation of the
// next round. All functions are pure.

#ifndef FREE2SHARD_POLICIES_HPP
#define FREE2SHARD_POLICIES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "free2shard/allocation.hpp"

namespace f2s::policy {

struct PolicyParams {
  double gamma = 0.5;
  double beta = 0.5;
  std::size_t K = 1;

  // F2S-dist knobs. `h` is the target honest fraction; when absent it is
  // derived with compute_h().
  std::optional<double> h;
  double q = 0.05;
  std::size_t s = 1;
  double c = 0.5;
  std::size_t N = 0;
  std::size_t n = 0;

  // Heterogeneous per-shard targets; replaces gamma (F2S) or h (F2S-dist).
  std::vector<double> targets;

  /// b = q / (1 + 2q), the per-shard floor numerator implied by q.
  double b() const { return q / (1.0 + 2.0 * q); }
};

/// Throws ParameterError unless 0 < q, 0 < b < 1/2, 1 <= s <= K, 0 < c < 1.
void validate_dist_params(const PolicyParams& p);

/// h = (1 - s exp(-n q/((1+2q)s) (1 - c + c ln c))) * c s / (K (1-2q)) * gamma.
/// Throws ParameterError when the result is not positive.
double compute_h(const PolicyParams& p);

/// The target h actually used by f2s_dist: the explicit value or compute_h().
double dist_target(const PolicyParams& p);

AllocationVector static_uniform(const PolicyParams& p);

/// gamma_i = gamma/(2 beta) * beta_prev_i + gamma/(2K).
AllocationVector simple_dynamic(const AllocationVector& beta_prev, const PolicyParams& p);

/// gamma_i = gamma * u_i / sum(u), u_i = (target_i - avg_i)^+.
/// Falls back to static_uniform when every shard meets its target.
AllocationVector f2s(const FractionVector& avg_prev, const PolicyParams& p);

/// The s-focused, floored and rescaled variant. See the implementation for
/// the exact five steps.
AllocationVector f2s_dist(const FractionVector& avg_prev, const PolicyParams& p);

/// Indices of the s largest deficits, ties broken by the lowest index.
std::vector<std::size_t> top_s_indices(const std::vector<double>& deficits, std::size_t s);

enum class Kind { static_uniform, simple_dynamic, f2s, f2s_dist };

std::string_view to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view name);

struct PolicySpec {
  Kind kind = Kind::f2s;
  PolicyParams params;
};

/// Target box the policy tries to approach (gamma, h, or per-shard targets).
TargetSet policy_target(const PolicySpec& spec);

/// Dispatches on spec.kind. `beta_prev` is only read by simple_dynamic.
AllocationVector allocate(const PolicySpec& spec, const FractionVector& avg_prev,
                          const AllocationVector& beta_prev);

}  // namespace f2s::policy

#endif  // FREE2SHARD_POLICIES_HPP
