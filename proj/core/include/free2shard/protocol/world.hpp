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

// Lock-step simulation of the sharded protocol: every SMR block runs the
// mining lottery, coded dissemination, availability voting and honest
// decoding; every epoch each shard commits its state and an honest node
// challenges any wrong commitment down to a single transaction.

#ifndef FREE2SHARD_PROTOCOL_WORLD_HPP
#define FREE2SHARD_PROTOCOL_WORLD_HPP

#include <cstdint>
#include <vector>

#include "free2shard/protocol/log.hpp"
#include "free2shard/protocol/sortition.hpp"
#include "free2shard/resources.hpp"

namespace f2s::protocol {

struct FaultPlan {
  bool withhold = false;        // adversarial miners send chunks only to adversarial nodes
  bool miscode = false;         // adversarial miners commit to a non-codeword
  bool bad_commitment = false;  // adversarial leaders commit a wrong state
  bool censor = false;          // adversarial nodes crowd shard 0 with empty blocks
};

struct Scenario {
  std::size_t nodes = 60;
  std::size_t shards = 4;
  double beta = 0.2;
  std::size_t kappa = 1;
  std::size_t smr_blocks = 24;
  std::size_t epoch_length = 4;
  std::size_t block_txs = 32;
  std::uint32_t accounts = 16;
  std::uint64_t initial_balance = 100;
  std::size_t branching = 4;
  std::size_t data_chunks = 0;  // 0 selects ceil((0.5 - beta) N)
  std::size_t rotation_interval = 8;
  double expected_leaders = 3.0;
  std::uint64_t seed = 1;
  FaultPlan faults;

  std::size_t adversarial_nodes() const;
  std::size_t resolved_data_chunks() const;
  /// Throws ParameterError on inconsistent settings.
  void validate() const;
};

struct WorldStats {
  std::size_t blocks_proposed = 0;
  std::size_t adversarial_blocks_proposed = 0;
  std::size_t blocks_certified = 0;
  std::size_t blocks_unavailable = 0;
  std::size_t blocks_fraud_proven = 0;
  std::size_t blocks_pending = 0;  // certified but honest chunks were insufficient
  std::size_t miscoded_blocks_certified = 0;
  std::size_t miscoded_blocks_in_ledger = 0;
  std::size_t honest_blocks_in_ledger = 0;
  std::size_t adversarial_blocks_in_ledger = 0;
  std::size_t commitments = 0;
  std::size_t bad_commitments = 0;
  std::size_t challenges = 0;
  std::size_t bisection_rounds = 0;
  std::size_t challenger_wins = 0;
  std::size_t invalid_commitments_finalized = 0;
  std::size_t epochs_without_leader = 0;
};

struct ShardOutcome {
  std::uint32_t shard = 0;
  std::size_t ledger_blocks = 0;
  std::size_t transactions = 0;
  std::size_t valid_transactions = 0;
  Digest state_root{};
  Digest last_finalized_root{};
};

struct WorldReport {
  Scenario scenario;
  OrderedLog log;
  resources::ResourceCounters counters;
  WorldStats stats;
  std::vector<ShardOutcome> shards;
  std::vector<std::uint64_t> log_bytes_per_smr_block;
};

WorldReport simulate(const Scenario& scenario, const HashOracle& hash = sha256_oracle());

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_WORLD_HPP
