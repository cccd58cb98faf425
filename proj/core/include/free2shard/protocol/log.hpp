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

// The totally ordered log and everything derived from it.
//
// Dump format: one entry per line, "<smr_no> <TAG> key=value ...", fields in a
// fixed order, digests and binary blobs in lowercase hex, lists comma
// separated with "-" for an empty list.

#ifndef FREE2SHARD_PROTOCOL_LOG_HPP
#define FREE2SHARD_PROTOCOL_LOG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "free2shard/protocol/availability.hpp"
#include "free2shard/protocol/bisection.hpp"

namespace f2s::protocol {

struct ShardPointer {
  std::uint32_t shard = 0;
  Digest block{};
  std::uint32_t miner = 0;
  std::uint64_t lottery = 0;
};

struct StateCommitment {
  std::uint32_t shard = 0;
  std::uint64_t epoch = 0;
  std::uint32_t leader = 0;
  std::uint64_t transactions = 0;  // length of the committed segment
  Digest final_root{};
  std::vector<Digest> intermediate_roots;
};

struct Challenge {
  std::uint64_t commitment = 0;  // log index of the StateCommitment
  std::uint32_t challenger = 0;
  std::uint64_t disagreement = 0;  // 1-based boundary, 0 opens the challenge
};

struct ChallengeReply {
  std::uint64_t commitment = 0;
  std::vector<Digest> sub_states;
};

struct DisputedTxEntry {
  std::uint64_t commitment = 0;
  std::uint64_t index = 0;
  DisputedTx disputed;
  Verdict verdict = Verdict::leader_correct;
};

using LogPayload = std::variant<ShardPointer, AvailabilityVote, CodingFraudProof, StateCommitment, Challenge,
                                ChallengeReply, DisputedTxEntry>;

struct LogEntry {
  std::uint64_t smr_no = 0;
  LogPayload payload;
};

const char* entry_tag(const LogPayload& payload);

/// Canonical binary encoding; its length is what the log stores.
Bytes encode_entry(const LogEntry& entry);
std::string dump_entry(const LogEntry& entry);
LogEntry parse_entry(const std::string& line);

class OrderedLog {
 public:
  /// Appends and returns the entry's index. Throws ArgumentError when the
  /// entry references a block digest or commitment not already in the log.
  std::size_t append(LogEntry entry);

  const std::vector<LogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const LogEntry& operator[](std::size_t i) const { return entries_.at(i); }
  bool has_block(const Digest& block) const { return blocks_.count(block) > 0; }

  void dump(std::ostream& out) const;
  std::string dump() const;
  static OrderedLog replay(std::istream& in);

 private:
  std::vector<LogEntry> entries_;
  std::set<Digest> blocks_;
};

/// Block digests of the shard's pointers in log order, excluding blocks
/// without a strict majority of yes votes among N and blocks with a verified
/// coding-fraud proof anywhere in the log.
std::vector<Digest> derive_shard_ledger(const OrderedLog& log, std::uint32_t shard, std::size_t N);

/// Every shard's ledger from a single pass over the log.
std::map<std::uint32_t, std::vector<Digest>> derive_shard_ledgers(const OrderedLog& log, std::size_t N);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_LOG_HPP
