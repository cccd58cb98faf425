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

#include "free2shard/resources.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "free2shard/errors.hpp"

namespace f2s::resources {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "shard_pointers", "state_commitments", "challenge_interactions", "availability_votes",
    "fraud_proofs",   "chunk_traffic",     "rotation_sync",          "shard_processing",
};

constexpr std::array<std::string_view, kDimensionCount> kDimensionNames = {"computation", "communication",
                                                                           "storage"};

std::size_t idx(Category c) { return static_cast<std::size_t>(c); }
std::size_t idx(Dimension d) { return static_cast<std::size_t>(d); }

}  // namespace

std::string_view category_name(Category c) { return kCategoryNames.at(idx(c)); }
std::string_view dimension_name(Dimension d) { return kDimensionNames.at(idx(d)); }

Category category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  }
  throw ArgumentError("unknown resource category '" + std::string(name) + "'");
}

Dimension dimension_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (kDimensionNames[i] == name) return static_cast<Dimension>(i);
  }
  throw ArgumentError("unknown resource dimension '" + std::string(name) + "'");
}

ResourceCounters::ResourceCounters(std::size_t shards) : shards_(shards) {
  if (shards == 0) throw ArgumentError("ResourceCounters: shard count must be positive");
}

void ResourceCounters::record(Category c, Dimension d, std::uint64_t bytes) { bytes_[idx(c)][idx(d)] += bytes; }

void ResourceCounters::record(std::string_view category, std::string_view dimension, long long bytes) {
  const Category c = category_from_string(category);
  const Dimension d = dimension_from_string(dimension);
  if (bytes < 0) throw ArgumentError("ResourceCounters::record: negative byte count");
  record(c, d, static_cast<std::uint64_t>(bytes));
}

std::uint64_t ResourceCounters::get(Category c, Dimension d) const { return bytes_[idx(c)][idx(d)]; }

std::uint64_t ResourceCounters::smr_total(Dimension d) const {
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    if (static_cast<Category>(c) != Category::shard_processing) total += bytes_[c][idx(d)];
  }
  return total;
}

double ResourceCounters::own_shard(Dimension d) const {
  return static_cast<double>(get(Category::shard_processing, d)) / static_cast<double>(shards_);
}

void ResourceCounters::merge(const ResourceCounters& other) {
  if (other.shards_ != shards_) throw ArgumentError("ResourceCounters::merge: shard counts differ");
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    for (std::size_t d = 0; d < kDimensionCount; ++d) bytes_[c][d] += other.bytes_[c][d];
  }
}

void ResourceCounters::write_csv(std::ostream& out) const {
  out << "category,dimension,bytes\n";
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      out << kCategoryNames[c] << ',' << kDimensionNames[d] << ',' << bytes_[c][d] << '\n';
    }
  }
}

OverheadRatio overhead_ratio(const ResourceCounters& counters) {
  OverheadRatio r;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    const auto dim = static_cast<Dimension>(d);
    const double shard = counters.own_shard(dim);
    if (shard <= 0.0) continue;
    const double ratio = static_cast<double>(counters.smr_total(dim)) / shard;
    r.per_dimension[d] = ratio;
    r.headline = r.headline ? std::max(*r.headline, ratio) : ratio;
  }
  return r;
}

}  // namespace f2s::resources
