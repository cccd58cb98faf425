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

// Hash lotteries: block proposers, chunk assignment and epoch leaders.

#ifndef FREE2SHARD_PROTOCOL_SORTITION_HPP
#define FREE2SHARD_PROTOCOL_SORTITION_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "free2shard/protocol/hash.hpp"

namespace f2s::protocol {

struct Candidate {
  std::uint32_t node = 0;
  Digest public_key{};
  std::uint32_t shard = 0;
};

struct LotteryWinner {
  std::uint32_t node = 0;
  std::uint64_t value = 0;
};

/// Per shard, the kappa candidates with the smallest H(pk || smr_no), ties by
/// node id. Throws ArgumentError when a node appears twice.
std::map<std::uint32_t, std::vector<LotteryWinner>> mining_lottery(std::span<const Candidate> candidates,
                                                                   std::uint64_t smr_no, std::size_t kappa,
                                                                   const HashOracle& hash);

/// H(pk || smr_no) mod n.
std::size_t assign_chunk(const Digest& public_key, std::uint64_t smr_no, std::size_t n, const HashOracle& hash);

/// H(sk || smr_no || shard) < threshold.
bool elect_epoch_leader(const Digest& secret, std::uint64_t smr_no, std::uint32_t shard, std::uint64_t threshold,
                        const HashOracle& hash);

/// Threshold giving each of N nodes probability expected/N of election.
std::uint64_t leader_threshold(double expected_leaders, std::size_t N);

Bytes lottery_input(const Digest& public_key, std::uint64_t smr_no);
Bytes leader_input(const Digest& secret, std::uint64_t smr_no, std::uint32_t shard);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_SORTITION_HPP
