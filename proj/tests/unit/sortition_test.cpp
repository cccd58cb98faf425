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

#include "free2shard/protocol/sortition.hpp"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "free2shard/errors.hpp"

namespace f2s::protocol {
namespace {

// Oracle keyed on the first byte of the hashed input.
HashOracle table_oracle(std::map<std::uint8_t, std::uint64_t> table) {
  return [table = std::move(table)](std::span<const std::uint8_t> in) { return table.at(in[0]); };
}

Digest key(std::uint8_t first) {
  Digest d{};
  d[0] = first;
  return d;
}

TEST(Lottery, InjectedValuesPickSmallestKappa) {
  const HashOracle h = table_oracle({{0, 9}, {1, 3}, {2, 7}, {3, 1}, {4, 5}});
  std::vector<Candidate> cands;
  for (std::uint32_t i = 0; i < 5; ++i) cands.push_back({i, key(static_cast<std::uint8_t>(i)), 0});
  const auto winners = mining_lottery(cands, 1, 2, h);
  ASSERT_EQ(winners.at(0).size(), 2u);
  EXPECT_EQ(winners.at(0)[0].value, 1u);
  EXPECT_EQ(winners.at(0)[0].node, 3u);
  EXPECT_EQ(winners.at(0)[1].value, 3u);
  EXPECT_EQ(winners.at(0)[1].node, 1u);
}

TEST(Lottery, LargeKappaLetsEveryoneWin) {
  const HashOracle h = table_oracle({{0, 9}, {1, 3}, {2, 7}});
  const std::vector<Candidate> cands = {{0, key(0), 1}, {1, key(1), 1}, {2, key(2), 4}};
  const auto winners = mining_lottery(cands, 1, 5, h);
  EXPECT_EQ(winners.at(1).size(), 2u);
  EXPECT_EQ(winners.at(4).size(), 1u);
}

TEST(Lottery, TiesBreakByNodeId) {
  const HashOracle h = [](std::span<const std::uint8_t>) { return std::uint64_t{4}; };
  const std::vector<Candidate> cands = {{7, key(7), 0}, {2, key(2), 0}, {5, key(5), 0}};
  const auto winners = mining_lottery(cands, 3, 1, h);
  EXPECT_EQ(winners.at(0)[0].node, 2u);
}

TEST(Lottery, DuplicateNodeRejected) {
  const std::vector<Candidate> cands = {{1, key(1), 0}, {1, key(1), 2}};
  EXPECT_THROW(mining_lottery(cands, 1, 1, sha256_oracle()), ArgumentError);
}

TEST(Lottery, HonestWinRateMatchesShare) {
  // Six honest and four adversarial candidates on one shard, kappa = 1.
  std::vector<Candidate> cands;
  for (std::uint32_t i = 0; i < 10; ++i) cands.push_back({i, NodeKeys::derive(5, i).public_key, 0});
  const HashOracle h = sha256_oracle();
  const int lotteries = 10000;
  int honest = 0;
  for (int s = 0; s < lotteries; ++s) {
    if (mining_lottery(cands, static_cast<std::uint64_t>(s), 1, h).at(0)[0].node < 6) ++honest;
  }
  const double sigma = std::sqrt(0.6 * 0.4 / lotteries);
  EXPECT_NEAR(static_cast<double>(honest) / lotteries, 0.6, 3.0 * sigma);
}

TEST(ChunkAssignment, InjectedValue) {
  const HashOracle h = [](std::span<const std::uint8_t>) { return std::uint64_t{13}; };
  EXPECT_EQ(assign_chunk(key(0), 1, 4, h), 1u);
  EXPECT_EQ(assign_chunk(key(0), 1, 1, sha256_oracle()), 0u);
}

TEST(ChunkAssignment, UniformOverKeys) {
  constexpr std::size_t n = 16;
  constexpr int keys = 100000;
  std::vector<int> counts(n, 0);
  const HashOracle h = sha256_oracle();
  for (int i = 0; i < keys; ++i) ++counts[assign_chunk(NodeKeys::derive(11, static_cast<std::uint32_t>(i)).public_key, 3, n, h)];
  const double expected = static_cast<double>(keys) / n;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 30.58);  // chi-square, 15 degrees of freedom, p = 0.01
}

TEST(Leader, ThresholdExtremes) {
  const HashOracle h = sha256_oracle();
  for (std::uint32_t i = 0; i < 50; ++i) {
    const Digest sk = NodeKeys::derive(1, i).secret;
    EXPECT_TRUE(elect_epoch_leader(sk, 4, 0, UINT64_MAX, h));
    EXPECT_FALSE(elect_epoch_leader(sk, 4, 0, 0, h));
  }
}

TEST(Leader, ExpectedCountOverEpochs) {
  constexpr std::size_t N = 300;
  constexpr int epochs = 10000;
  const std::uint64_t threshold = leader_threshold(3.0, N);
  std::vector<Digest> secrets;
  for (std::uint32_t i = 0; i < N; ++i) secrets.push_back(NodeKeys::derive(2, i).secret);
  const HashOracle h = sha256_oracle();
  long long total = 0;
  for (int e = 0; e < epochs; ++e) {
    for (const Digest& sk : secrets) total += elect_epoch_leader(sk, static_cast<std::uint64_t>(e), 1, threshold, h);
  }
  const double mean = static_cast<double>(total) / epochs;
  const double sigma = std::sqrt(3.0 * (1.0 - 3.0 / N) / epochs);
  EXPECT_NEAR(mean, 3.0, 4.0 * sigma);
}

}  // namespace
}  // namespace f2s::protocol
