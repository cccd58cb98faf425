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

// Vector arithmetic of the shard allocation game: per-shard power
// allocations, honest fractions, running averages, deficits and the
// distance of the running average to the target box [h,1]^K.

#ifndef FREE2SHARD_ALLOCATION_HPP
#define FREE2SHARD_ALLOCATION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace f2s {

/// Fractions of total mining power placed on each of K shards.
/// `total_budget` is gamma for the honest side and beta for the adversary.
struct AllocationVector {
  std::vector<double> values;
  double total_budget = 0.0;

  std::size_t size() const { return values.size(); }
  double sum() const;
  double operator[](std::size_t i) const { return values[i]; }
};

/// Per-shard honest fractions in [0,1]: instantaneous r(t) or averages.
struct FractionVector {
  std::vector<double> values;

  FractionVector() = default;
  explicit FractionVector(std::vector<double> v) : values(std::move(v)) {}
  static FractionVector zeros(std::size_t k) { return FractionVector(std::vector<double>(k, 0.0)); }

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// The box [lower_i, 1] per shard. Homogeneous targets use one lower bound.
class TargetSet {
 public:
  TargetSet(double lower, std::size_t k);
  explicit TargetSet(std::vector<double> per_shard_lower);

  std::size_t dimension() const { return lower_.size(); }
  double lower(std::size_t i) const { return lower_[i]; }
  std::span<const double> lowers() const { return lower_; }
  bool homogeneous() const;

 private:
  std::vector<double> lower_;
};

/// u_i = max(target_i - avg_i, 0).
struct DeficitVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double sum() const;
  double operator[](std::size_t i) const { return values[i]; }
};

/// r_i = gamma_i / (gamma_i + beta_i), with 0/0 read as 0.
FractionVector instantaneous_fraction(const AllocationVector& honest,
                                      const AllocationVector& adversarial);
FractionVector instantaneous_fraction(std::span<const double> honest,
                                      std::span<const double> adversarial);

/// ((t-1) * prev + current) / t, entrywise. `t` is the 1-based round index.
FractionVector update_time_average(const FractionVector& prev_avg, const FractionVector& current,
                                   long long t);

DeficitVector deficit(const FractionVector& avg, double target);
DeficitVector deficit(const FractionVector& avg, const TargetSet& target);

/// Euclidean distance from `avg` to the target box.
double distance_to_target(const FractionVector& avg, double target);
double distance_to_target(const FractionVector& avg, const TargetSet& target);

/// Componentwise clamp, i.e. the Euclidean projection onto [lower, upper]^n.
std::vector<double> project_box(std::span<const double> v, double lower, double upper);

/// psi: the smallest entry.
double worst_shard_metric(const FractionVector& avg);

}  // namespace f2s

#endif  // FREE2SHARD_ALLOCATION_HPP
