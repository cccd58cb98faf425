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

#include "free2shard/protocol/world.hpp"

#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "free2shard/errors.hpp"

namespace f2s::protocol {
namespace {

Scenario small(std::uint64_t seed = 1) {
  Scenario sc;
  sc.nodes = 60;
  sc.shards = 4;
  sc.beta = 0.3;
  sc.smr_blocks = 24;
  sc.seed = seed;
  return sc;
}

TEST(World, ReplayIsBitIdentical) {
  Scenario sc = small(9);
  sc.faults.miscode = true;
  sc.faults.bad_commitment = true;
  const WorldReport a = simulate(sc);
  const WorldReport b = simulate(sc);
  EXPECT_EQ(a.log.dump(), b.log.dump());
  EXPECT_EQ(a.log_bytes_per_smr_block, b.log_bytes_per_smr_block);
  for (std::size_t i = 0; i < a.shards.size(); ++i) {
    EXPECT_EQ(a.shards[i].state_root, b.shards[i].state_root);
  }
}

TEST(World, LedgersArePureFunctionsOfTheLog) {
  Scenario sc = small(4);
  sc.faults.miscode = true;
  sc.faults.withhold = true;
  const WorldReport report = simulate(sc);
  std::istringstream in(report.log.dump());
  const OrderedLog replayed = OrderedLog::replay(in);
  const auto ledgers = derive_shard_ledgers(replayed, sc.nodes);
  EXPECT_EQ(ledgers, derive_shard_ledgers(report.log, sc.nodes));
  std::size_t blocks = 0;
  for (const auto& [shard, ledger] : ledgers) blocks += ledger.size();
  std::size_t reported = 0;
  for (const ShardOutcome& s : report.shards) reported += s.ledger_blocks;
  EXPECT_EQ(blocks, reported);
}

TEST(World, HonestRunHasNoDisputes) {
  const WorldReport report = simulate(small(2));
  EXPECT_GT(report.stats.blocks_certified, 0u);
  EXPECT_EQ(report.stats.blocks_fraud_proven, 0u);
  EXPECT_EQ(report.stats.bad_commitments, 0u);
  EXPECT_EQ(report.stats.challenges, 0u);
  EXPECT_EQ(report.log_bytes_per_smr_block.size(), 24u);
}

TEST(World, MiscodedBlocksNeverSurvive) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    Scenario sc = small(seed);
    sc.faults.miscode = true;
    const WorldReport report = simulate(sc);
    EXPECT_GT(report.stats.adversarial_blocks_proposed, 0u) << seed;
    EXPECT_EQ(report.stats.miscoded_blocks_in_ledger, 0u) << seed;
    EXPECT_EQ(report.stats.blocks_fraud_proven, report.stats.miscoded_blocks_certified) << seed;
  }
}

TEST(World, WithheldBlocksAreNotCertified) {
  Scenario sc = small(6);
  sc.faults.withhold = true;
  const WorldReport report = simulate(sc);
  EXPECT_GT(report.stats.blocks_unavailable, 0u);
  EXPECT_EQ(report.stats.adversarial_blocks_in_ledger, 0u);
}

TEST(World, BadCommitmentsAreChallengedAndLose) {
  for (std::uint64_t seed : {1, 2, 3}) {
    Scenario sc = small(seed);
    sc.smr_blocks = 48;
    sc.faults.bad_commitment = true;
    const WorldReport report = simulate(sc);
    EXPECT_GT(report.stats.bad_commitments, 0u) << seed;
    EXPECT_EQ(report.stats.challenges, report.stats.bad_commitments) << seed;
    EXPECT_EQ(report.stats.challenger_wins, report.stats.bad_commitments) << seed;
    EXPECT_EQ(report.stats.invalid_commitments_finalized, 0u) << seed;
  }
}

TEST(World, LogBytesGrowLinearlyInShards) {
  std::vector<double> xs, ys;
  for (std::size_t K : {10, 20, 40, 80, 160}) {
    Scenario sc;
    sc.nodes = 200;
    sc.shards = K;
    sc.beta = 0.2;
    sc.smr_blocks = 8;
    sc.epoch_length = 4;
    sc.block_txs = 16;
    const WorldReport report = simulate(sc);
    const auto& bytes = report.log_bytes_per_smr_block;
    xs.push_back(static_cast<double>(K));
    ys.push_back(std::accumulate(bytes.begin(), bytes.end(), 0.0) / static_cast<double>(bytes.size()));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double r2 = sxy * sxy / (sxx * syy);
  EXPECT_GT(sxy / sxx, 0.0);
  EXPECT_GT(r2, 0.99);
}

TEST(World, OverheadFallsAsBlocksDouble) {
  double previous = 1e300;
  for (std::size_t B : {32, 64, 128, 256, 512}) {
    Scenario sc;
    sc.nodes = 100;
    sc.shards = 10;
    sc.smr_blocks = 8;
    sc.block_txs = B;
    const auto ratio = resources::overhead_ratio(simulate(sc).counters).headline;
    ASSERT_TRUE(ratio.has_value());
    EXPECT_LT(*ratio, previous) << "B=" << B;
    previous = *ratio;
  }
}

TEST(World, ScenarioValidation) {
  Scenario sc = small();
  sc.beta = 0.5;
  EXPECT_THROW(sc.validate(), ParameterError);
  sc = small();
  sc.shards = 0;
  EXPECT_THROW(sc.validate(), ParameterError);
  sc = small();
  sc.branching = 1;
  EXPECT_THROW(sc.validate(), ParameterError);
  EXPECT_EQ(small().resolved_data_chunks(), 12u);
  EXPECT_EQ(small().adversarial_nodes(), 18u);
}

}  // namespace
}  // namespace f2s::protocol
