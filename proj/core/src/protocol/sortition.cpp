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

#include <algorithm>
#include <cmath>
#include <set>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

Bytes lottery_input(const Digest& public_key, std::uint64_t smr_no) {
  return ByteWriter().raw(public_key).u64(smr_no).take();
}

Bytes leader_input(const Digest& secret, std::uint64_t smr_no, std::uint32_t shard) {
  return ByteWriter().raw(secret).u64(smr_no).u32(shard).take();
}

std::map<std::uint32_t, std::vector<LotteryWinner>> mining_lottery(std::span<const Candidate> candidates,
                                                                   std::uint64_t smr_no, std::size_t kappa,
                                                                   const HashOracle& hash) {
  std::set<std::uint32_t> nodes;
  std::map<std::uint32_t, std::vector<LotteryWinner>> per_shard;
  for (const Candidate& c : candidates) {
    if (!nodes.insert(c.node).second) throw ArgumentError("mining_lottery: node listed twice");
    per_shard[c.shard].push_back({c.node, hash(lottery_input(c.public_key, smr_no))});
  }
  for (auto& [shard, entries] : per_shard) {
    std::sort(entries.begin(), entries.end(), [](const LotteryWinner& a, const LotteryWinner& b) {
      return a.value != b.value ? a.value < b.value : a.node < b.node;
    });
    if (entries.size() > kappa) entries.resize(kappa);
  }
  std::erase_if(per_shard, [](const auto& kv) { return kv.second.empty(); });
  return per_shard;
}

std::size_t assign_chunk(const Digest& public_key, std::uint64_t smr_no, std::size_t n, const HashOracle& hash) {
  if (n == 0) throw ArgumentError("assign_chunk: n must be positive");
  return static_cast<std::size_t>(hash(lottery_input(public_key, smr_no)) % n);
}

bool elect_epoch_leader(const Digest& secret, std::uint64_t smr_no, std::uint32_t shard, std::uint64_t threshold,
                        const HashOracle& hash) {
  return hash(leader_input(secret, smr_no, shard)) < threshold;
}

std::uint64_t leader_threshold(double expected_leaders, std::size_t N) {
  if (N == 0 || !(expected_leaders >= 0.0)) throw ArgumentError("leader_threshold: bad arguments");
  const double prob = std::min(1.0, expected_leaders / static_cast<double>(N));
  if (prob >= 1.0) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::ldexp(prob, 64));
}

}  // namespace f2s::protocol
