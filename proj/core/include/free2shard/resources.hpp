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

// Byte counters for the work a node spends on the shared log versus the work
// of maintaining a single shard.

#ifndef FREE2SHARD_RESOURCES_HPP
#define FREE2SHARD_RESOURCES_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace f2s::resources {

enum class Category {
  shard_pointers,
  state_commitments,
  challenge_interactions,
  availability_votes,
  fraud_proofs,
  chunk_traffic,
  rotation_sync,
  shard_processing,
};

enum class Dimension { computation, communication, storage };

inline constexpr std::size_t kCategoryCount = 8;
inline constexpr std::size_t kDimensionCount = 3;

std::string_view category_name(Category c);
std::string_view dimension_name(Dimension d);
/// Throws ArgumentError on an unknown name.
Category category_from_string(std::string_view name);
Dimension dimension_from_string(std::string_view name);

class ResourceCounters {
 public:
  /// SMR-side categories are per-node totals; shard_processing is the total
  /// over all shards and is averaged over `shards` for the ratio.
  explicit ResourceCounters(std::size_t shards = 1);

  void record(Category c, Dimension d, std::uint64_t bytes);
  /// Signed entry point for untrusted input: negative bytes throw ArgumentError,
  /// unknown category or dimension names throw ArgumentError.
  void record(std::string_view category, std::string_view dimension, long long bytes);

  std::uint64_t get(Category c, Dimension d) const;
  std::uint64_t smr_total(Dimension d) const;
  double own_shard(Dimension d) const;
  std::size_t shards() const { return shards_; }

  void merge(const ResourceCounters& other);
  void write_csv(std::ostream& out) const;

 private:
  std::size_t shards_;
  std::array<std::array<std::uint64_t, kDimensionCount>, kCategoryCount> bytes_{};
};

struct OverheadRatio {
  std::array<std::optional<double>, kDimensionCount> per_dimension;
  std::optional<double> headline;  // max over the defined dimensions
};

/// SMR-side bytes over own-shard bytes per dimension; a dimension whose
/// own-shard total is zero is absent.
OverheadRatio overhead_ratio(const ResourceCounters& counters);

}  // namespace f2s::resources

#endif  // FREE2SHARD_RESOURCES_HPP
