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

#include "free2shard/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "free2shard/errors.hpp"

namespace f2s {

void check_dimensions(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(lhs) +
                         " vs " + std::to_string(rhs) + ")");
  }
  if (lhs == 0) throw DimensionError(std::string(what) + ": zero shards");
}

double AllocationVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double DeficitVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

TargetSet::TargetSet(double lower, std::size_t k) : lower_(k, lower) {
  if (k == 0) throw DimensionError("TargetSet: zero shards");
  if (!(lower > 0.0 && lower <= 1.0)) throw ArgumentError("TargetSet: target must lie in (0,1]");
}

TargetSet::TargetSet(std::vector<double> per_shard_lower) : lower_(std::move(per_shard_lower)) {
  if (lower_.empty()) throw DimensionError("TargetSet: zero shards");
  for (double h : lower_) {
    if (!(h > 0.0 && h <= 1.0)) throw ArgumentError("TargetSet: target must lie in (0,1]");
  }
}

bool TargetSet::homogeneous() const {
  return std::all_of(lower_.begin(), lower_.end(), [&](double h) { return h == lower_.front(); });
}

FractionVector instantaneous_fraction(std::span<const double> honest,
                                      std::span<const double> adversarial) {
  check_dimensions(honest.size(), adversarial.size(), "instantaneous_fraction");
  std::vector<double> r(honest.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double total = honest[i] + adversarial[i];
    r[i] = total > 0.0 ? honest[i] / total : 0.0;
  }
  return FractionVector(std::move(r));
}

FractionVector instantaneous_fraction(const AllocationVector& honest,
                                      const AllocationVector& adversarial) {
  return instantaneous_fraction(std::span<const double>(honest.values),
                                std::span<const double>(adversarial.values));
}

FractionVector update_time_average(const FractionVector& prev_avg, const FractionVector& current,
                                   long long t) {
  if (t < 1) throw ArgumentError("update_time_average: round index must be >= 1");
  check_dimensions(prev_avg.size(), current.size(), "update_time_average");
  const double td = static_cast<double>(t);
  std::vector<double> out(current.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ((td - 1.0) * prev_avg[i] + current[i]) / td;
  }
  return FractionVector(std::move(out));
}

DeficitVector deficit(const FractionVector& avg, const TargetSet& target) {
  check_dimensions(avg.size(), target.dimension(), "deficit");
  DeficitVector u;
  u.values.resize(avg.size());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    u.values[i] = std::max(target.lower(i) - avg[i], 0.0);
  }
  return u;
}

DeficitVector deficit(const FractionVector& avg, double target) {
  if (!(target > 0.0 && target <= 1.0)) throw ArgumentError("deficit: target must lie in (0,1]");
  if (avg.size() == 0) throw DimensionError("deficit: zero shards");
  return deficit(avg, TargetSet(target, avg.size()));
}

double distance_to_target(const FractionVector& avg, const TargetSet& target) {
  const DeficitVector u = deficit(avg, target);
  double sq = 0.0;
  for (double x : u.values) sq += x * x;
  return std::sqrt(sq);
}

double distance_to_target(const FractionVector& avg, double target) {
  if (avg.size() == 0) throw DimensionError("distance_to_target: zero shards");
  return distance_to_target(avg, TargetSet(target, avg.size()));
}

std::vector<double> project_box(std::span<const double> v, double lower, double upper) {
  if (lower > upper) throw ArgumentError("project_box: lower bound exceeds upper bound");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x = std::clamp(x, lower, upper);
  return out;
}

double worst_shard_metric(const FractionVector& avg) {
  if (avg.size() == 0) throw ArgumentError("worst_shard_metric: empty vector");
  return *std::min_element(avg.values.begin(), avg.values.end());
}

}  // namespace f2s
