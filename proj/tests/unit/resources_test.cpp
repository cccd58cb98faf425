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

#include <sstream>

#include <gtest/gtest.h>

#include "free2shard/errors.hpp"

namespace f2s::resources {
namespace {

TEST(Record, Accumulates) {
  ResourceCounters c;
  c.record("availability_votes", "communication", 64);
  c.record("availability_votes", "communication", 64);
  EXPECT_EQ(c.get(Category::availability_votes, Dimension::communication), 128u);
}

TEST(Record, ZeroIsNoOp) {
  ResourceCounters c;
  c.record("fraud_proofs", "storage", 0);
  EXPECT_EQ(c.get(Category::fraud_proofs, Dimension::storage), 0u);
}

TEST(Record, RejectsNegativeAndUnknown) {
  ResourceCounters c;
  EXPECT_THROW(c.record("availability_votes", "communication", -1), ArgumentError);
  EXPECT_THROW(c.record("gossip", "communication", 1), ArgumentError);
  EXPECT_THROW(c.record("availability_votes", "latency", 1), ArgumentError);
}

TEST(Names, RoundTrip) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const auto c = static_cast<Category>(i);
    EXPECT_EQ(category_from_string(category_name(c)), c);
  }
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const auto d = static_cast<Dimension>(i);
    EXPECT_EQ(dimension_from_string(dimension_name(d)), d);
  }
}

TEST(Overhead, SmallSmrShareOfLargeShard) {
  ResourceCounters c;
  c.record(Category::shard_pointers, Dimension::storage, 10000);
  c.record(Category::shard_processing, Dimension::storage, 1000000);
  const OverheadRatio r = overhead_ratio(c);
  EXPECT_DOUBLE_EQ(*r.per_dimension[static_cast<std::size_t>(Dimension::storage)], 0.01);
  EXPECT_FALSE(r.per_dimension[static_cast<std::size_t>(Dimension::computation)].has_value());
  EXPECT_DOUBLE_EQ(*r.headline, 0.01);
}

TEST(Overhead, ZeroSmrSideIsZero) {
  ResourceCounters c;
  c.record(Category::shard_processing, Dimension::computation, 500);
  EXPECT_EQ(*overhead_ratio(c).headline, 0.0);
}

TEST(Overhead, ZeroDenominatorIsAbsent) {
  ResourceCounters c;
  c.record(Category::state_commitments, Dimension::storage, 500);
  const OverheadRatio r = overhead_ratio(c);
  EXPECT_FALSE(r.headline.has_value());
}

TEST(Overhead, OwnShardAveragesOverShards) {
  ResourceCounters c(4);
  c.record(Category::shard_processing, Dimension::communication, 4000);
  c.record(Category::chunk_traffic, Dimension::communication, 500);
  c.record(Category::rotation_sync, Dimension::storage, 100);
  c.record(Category::shard_processing, Dimension::storage, 400);
  const OverheadRatio r = overhead_ratio(c);
  EXPECT_DOUBLE_EQ(*r.per_dimension[static_cast<std::size_t>(Dimension::communication)], 0.5);
  EXPECT_DOUBLE_EQ(*r.per_dimension[static_cast<std::size_t>(Dimension::storage)], 1.0);
  EXPECT_DOUBLE_EQ(*r.headline, 1.0);
}

TEST(Counters, MergeAddsAndChecksShape) {
  ResourceCounters a(2), b(2);
  a.record(Category::challenge_interactions, Dimension::computation, 7);
  b.record(Category::challenge_interactions, Dimension::computation, 5);
  a.merge(b);
  EXPECT_EQ(a.get(Category::challenge_interactions, Dimension::computation), 12u);
  EXPECT_THROW(a.merge(ResourceCounters(3)), ArgumentError);
  EXPECT_THROW(ResourceCounters(0), ArgumentError);
}

TEST(Counters, CsvHasEveryCell) {
  ResourceCounters c;
  c.record(Category::fraud_proofs, Dimension::storage, 42);
  std::ostringstream out;
  c.write_csv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "category,dimension,bytes");
  std::size_t rows = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++rows;
    found = found || line == "fraud_proofs,storage,42";
  }
  EXPECT_EQ(rows, kCategoryCount * kDimensionCount);
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace f2s::resources
