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

#include "free2shard/protocol/bisection.hpp"

#include <random>

#include <gtest/gtest.h>

#include "free2shard/errors.hpp"
#include "free2shard/experiment/oracles.hpp"

namespace f2s::protocol {
namespace {

std::vector<Digest> chain(std::size_t B, std::string_view tag) {
  std::vector<Digest> roots;
  for (std::size_t k = 0; k <= B; ++k) roots.push_back(sha256(std::string(tag) + std::to_string(k)));
  return roots;
}

// Leader roots that agree with the honest ones up to and including the
// pre-state of transaction `fault`.
std::vector<Digest> faulty(const std::vector<Digest>& honest, std::size_t fault) {
  std::vector<Digest> out = honest;
  for (std::size_t k = fault + 1; k < out.size(); ++k) out[k] = sha256("bad" + std::to_string(k));
  return out;
}

TEST(Bisection, ThousandTransactionsTenWay) {
  const std::vector<Digest> honest = chain(1000, "h");
  const BisectionOutcome o = run_bisection(faulty(honest, 537), honest, 10);
  EXPECT_EQ(o.disputed_index, 537u);
  EXPECT_EQ(o.rounds, 3u);
  EXPECT_EQ(o.transcript.size(), 3u);
  for (const BisectionRound& r : o.transcript) {
    EXPECT_EQ(r.boundaries.size(), 10u);
  }
}

TEST(Bisection, SingleTransactionNeedsNoRounds) {
  const std::vector<Digest> honest = chain(1, "h");
  const BisectionOutcome o = run_bisection(faulty(honest, 0), honest, 10);
  EXPECT_EQ(o.disputed_index, 0u);
  EXPECT_EQ(o.rounds, 0u);
}

TEST(Bisection, RoundCount) {
  EXPECT_EQ(bisection_rounds(1000, 10), 3u);
  EXPECT_EQ(bisection_rounds(1001, 10), 4u);
  EXPECT_EQ(bisection_rounds(1, 2), 0u);
  EXPECT_EQ(bisection_rounds(4096, 2), 12u);
  EXPECT_EQ(bisection_rounds(4097, 64), 3u);
}

TEST(Bisection, RandomInjectionsAreLocatedExactly) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t B = 1 + rng() % 4096;
    const std::size_t S = 2 + rng() % 15;
    const std::size_t fault = rng() % B;
    const std::vector<Digest> honest = chain(B, "t" + std::to_string(trial));
    const std::vector<Digest> leader = faulty(honest, fault);
    const BisectionOutcome o = run_bisection(leader, honest, S);
    ASSERT_EQ(o.disputed_index, experiment::oracle::first_divergence(leader, honest) - 1);
    ASSERT_EQ(o.disputed_index, fault) << "B=" << B << " S=" << S;
    ASSERT_EQ(o.rounds, experiment::oracle::rounds_to_cover(B, S));
  }
}

TEST(Bisection, RealExecutionWithMintedBalance) {
  std::mt19937_64 rng(3);
  std::vector<Transaction> txs;
  for (int i = 0; i < 300; ++i) txs.push_back({static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 6), 1 + rng() % 5});
  const ToyState pre({{0, 20}, {1, 20}, {2, 20}, {3, 20}, {4, 20}, {5, 20}});
  const std::vector<Digest> honest = execution_roots(txs, pre);

  // The leader credits an extra unit at transaction 123.
  std::vector<Digest> leader;
  ToyState state = pre;
  leader.push_back(state.root());
  for (std::size_t i = 0; i < txs.size(); ++i) {
    state.apply(txs[i]);
    if (i == 123) {
      auto m = state.balances();
      m[txs[i].to] += 1;
      state = ToyState(m);
    }
    leader.push_back(state.root());
  }
  const BisectionOutcome o = run_bisection(leader, honest, 4);
  ASSERT_EQ(o.disputed_index, 123u);

  ToyState witness = pre;
  for (std::size_t i = 0; i < 123; ++i) witness.apply(txs[i]);
  const DisputedTx disputed{txs[123], witness, leader[124]};
  EXPECT_EQ(adjudicate(disputed, honest[123]), Verdict::challenger_correct);
  const DisputedTx honest_claim{txs[123], witness, honest[124]};
  EXPECT_EQ(adjudicate(honest_claim, honest[123]), Verdict::leader_correct);
}

TEST(Bisection, RejectsNonDisputes) {
  const std::vector<Digest> honest = chain(10, "h");
  EXPECT_THROW(run_bisection(honest, honest, 2), NoDisputeError);
  EXPECT_THROW(run_bisection(faulty(honest, 3), honest, 1), ArgumentError);
  std::vector<Digest> other_pre = faulty(honest, 3);
  other_pre[0] = sha256("x");
  EXPECT_THROW(run_bisection(other_pre, honest, 2), ArgumentError);
  EXPECT_THROW(run_bisection(chain(9, "h"), honest, 2), ArgumentError);
}

TEST(Adjudicate, OverdraftClaimLoses) {
  const ToyState pre({{0, 1}, {1, 0}});
  const Transaction tx{0, 1, 5};
  const DisputedTx d{tx, pre, ToyState({{0, 0}, {1, 5}}).root()};
  EXPECT_EQ(adjudicate(d, pre.root()), Verdict::challenger_correct);
}

TEST(Adjudicate, BadWitnessThrows) {
  const ToyState pre({{0, 1}, {1, 0}});
  const DisputedTx d{{0, 1, 1}, ToyState({{0, 2}, {1, 0}}), pre.root()};
  EXPECT_THROW(adjudicate(d, pre.root()), WitnessError);
}

ToyState three(int a, int b, int c) {
  return ToyState({{0, static_cast<std::uint64_t>(a)}, {1, static_cast<std::uint64_t>(b)}, {2, static_cast<std::uint64_t>(c)}});
}

TEST(Adjudicate, ExhaustiveSmallStates) {
  // Direct execution on plain integers decides who is right.
  std::size_t cases = 0;
  for (int b0 = 0; b0 <= 3; ++b0) {
    for (int b1 = 0; b1 <= 3; ++b1) {
      for (int b2 = 0; b2 <= 3; ++b2) {
        const int start[3] = {b0, b1, b2};
        const ToyState pre = three(b0, b1, b2);
        for (std::uint32_t from = 0; from < 3; ++from) {
          for (std::uint32_t to = 0; to < 3; ++to) {
            for (std::uint64_t amount = 0; amount <= 4; ++amount) {
              int honest[3] = {b0, b1, b2};
              if (amount > 0 && from != to && static_cast<int>(amount) <= start[from]) {
                honest[from] -= static_cast<int>(amount);
                honest[to] += static_cast<int>(amount);
              }
              int forced[3] = {b0, b1, b2};
              forced[to] += static_cast<int>(amount);
              forced[from] = std::max(0, forced[from] - static_cast<int>(amount));
              for (const int* claim : {static_cast<const int*>(honest), static_cast<const int*>(forced)}) {
                const ToyState post = three(claim[0], claim[1], claim[2]);
                const bool matches = claim[0] == honest[0] && claim[1] == honest[1] && claim[2] == honest[2];
                const DisputedTx d{{from, to, amount}, pre, post.root()};
                ASSERT_EQ(adjudicate(d, pre.root()), matches ? Verdict::leader_correct : Verdict::challenger_correct);
                ++cases;
              }
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(cases, 64u * 9u * 5u * 2u);
}

}  // namespace
}  // namespace f2s::protocol
