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

#include "free2shard/protocol/ledger.hpp"

#include <random>

#include <gtest/gtest.h>

#include "free2shard/protocol/merkle.hpp"

namespace f2s::protocol {
namespace {

std::vector<Transaction> random_txs(std::size_t count, std::uint32_t accounts, std::mt19937_64& rng) {
  std::vector<Transaction> txs;
  for (std::size_t i = 0; i < count; ++i) {
    txs.push_back({static_cast<std::uint32_t>(rng() % accounts), static_cast<std::uint32_t>(rng() % accounts),
                   rng() % 40});
  }
  return txs;
}

ToyState funded(std::uint32_t accounts, std::uint64_t balance) {
  std::map<std::uint32_t, std::uint64_t> m;
  for (std::uint32_t a = 0; a < accounts; ++a) m[a] = balance;
  return ToyState(m);
}

TEST(ToyState, TransferApplies) {
  const ExecutionResult r = sanitize_and_execute(std::vector<Transaction>{{0, 1, 3}}, ToyState({{0, 5}, {1, 0}}));
  EXPECT_EQ(r.valid, std::vector<bool>{true});
  EXPECT_EQ(r.state.balance(0), 2u);
  EXPECT_EQ(r.state.balance(1), 3u);
}

TEST(ToyState, OverdraftIsSkipped) {
  const ToyState before({{0, 2}, {1, 3}});
  const ExecutionResult r = sanitize_and_execute(std::vector<Transaction>{{0, 1, 10}}, before);
  EXPECT_EQ(r.valid, std::vector<bool>{false});
  EXPECT_EQ(r.state, before);
}

TEST(ToyState, MalformedIsSkipped) {
  const ToyState before({{0, 2}, {1, 3}});
  const ExecutionResult r =
      sanitize_and_execute(std::vector<Transaction>{{0, 0, 1}, {0, 1, 0}, {1, 0, 3}}, before);
  EXPECT_EQ(r.valid, (std::vector<bool>{false, false, true}));
  EXPECT_EQ(r.state.balance(0), 5u);
  EXPECT_EQ(r.state.balance(1), 0u);
}

TEST(ToyState, ReplaysAgree) {
  std::mt19937_64 rng(4);
  const std::vector<Transaction> txs = random_txs(1000, 12, rng);
  const ExecutionResult a = sanitize_and_execute(txs, funded(12, 50));
  const ExecutionResult b = sanitize_and_execute(txs, funded(12, 50));
  EXPECT_EQ(a.valid, b.valid);
  EXPECT_EQ(a.state.root(), b.state.root());
  std::uint64_t total = 0;
  for (const auto& [acct, bal] : a.state.balances()) total += bal;
  EXPECT_EQ(total, 12u * 50u);
}

TEST(ToyState, RootIsMerkleOverSortedEntries) {
  const ToyState s({{9, 4}, {2, 7}, {5, 0}});
  std::vector<Digest> leaves;
  for (auto [acct, bal] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{2, 7}, {5, 0}, {9, 4}}) {
    Bytes leaf(12, 0);
    for (int k = 0; k < 4; ++k) leaf[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(acct >> (8 * k));
    for (int k = 0; k < 8; ++k) leaf[static_cast<std::size_t>(4 + k)] = static_cast<std::uint8_t>(bal >> (8 * k));
    leaves.push_back(merkle_leaf(leaf));
  }
  EXPECT_EQ(s.root(), merkle_node(merkle_node(leaves[0], leaves[1]), leaves[2]));
}

TEST(ToyState, SerializeRoundTrip) {
  const ToyState s({{1, 10}, {3, 0}, {70000, 123456789012ull}});
  EXPECT_EQ(ToyState::parse(s.serialize()), s);
}

TEST(ExecutionRoots, MatchStepwiseReplay) {
  std::mt19937_64 rng(12);
  for (std::uint32_t accounts : {1u, 2u, 5u, 33u}) {
    const std::vector<Transaction> txs = random_txs(300, accounts + 1, rng);
    const ToyState pre = funded(accounts, 30);
    const std::vector<Digest> roots = execution_roots(txs, pre);
    ASSERT_EQ(roots.size(), txs.size() + 1);
    ToyState state = pre;
    EXPECT_EQ(roots[0], state.root());
    for (std::size_t i = 0; i < txs.size(); ++i) {
      state.apply(txs[i]);
      ASSERT_EQ(roots[i + 1], state.root()) << "accounts=" << accounts << " tx " << i;
    }
  }
}

TEST(ShardBlock, SerializeRoundTripAndRejectGarbage) {
  ShardBlock b{3, 17, 8, {{1, 2, 3}, {4, 5, 6}}};
  EXPECT_EQ(ShardBlock::parse(b.serialize()), b);
  Bytes truncated = b.serialize();
  truncated.pop_back();
  EXPECT_FALSE(ShardBlock::parse(truncated).has_value());
  EXPECT_FALSE(ShardBlock::parse(Bytes{}).has_value());
}

TEST(ShardBlock, LedgerExecutionSpansBlocks) {
  const std::vector<ShardBlock> ledger = {{0, 1, 0, {{0, 1, 4}}}, {0, 2, 1, {{1, 2, 4}, {1, 2, 1}}}};
  const ExecutionResult r = sanitize_and_execute(ledger, ToyState({{0, 4}, {1, 0}, {2, 0}}));
  EXPECT_EQ(r.valid, (std::vector<bool>{true, true, false}));
  EXPECT_EQ(r.state.balance(2), 4u);
}

}  // namespace
}  // namespace f2s::protocol
