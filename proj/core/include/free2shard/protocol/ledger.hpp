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

// Toy payment state machine used as the execution substrate for shard blocks.

#ifndef FREE2SHARD_PROTOCOL_LEDGER_HPP
#define FREE2SHARD_PROTOCOL_LEDGER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "free2shard/protocol/hash.hpp"

namespace f2s::protocol {

struct Transaction {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint64_t amount = 0;

  static constexpr std::size_t kEncodedSize = 16;

  void write(ByteWriter& w) const;
  static Transaction read(ByteReader& r);
  bool well_formed() const { return amount > 0 && from != to; }
  friend bool operator==(const Transaction&, const Transaction&) = default;
};

class ToyState {
 public:
  ToyState() = default;
  explicit ToyState(std::map<std::uint32_t, std::uint64_t> balances) : balances_(std::move(balances)) {}

  std::uint64_t balance(std::uint32_t account) const;
  const std::map<std::uint32_t, std::uint64_t>& balances() const { return balances_; }

  /// Applies a transfer if it is well formed and funded. Returns whether it
  /// was applied; a skipped transaction leaves the state untouched.
  bool apply(const Transaction& tx);

  /// Merkle root over (account, balance) entries sorted by account.
  Digest root() const;

  Bytes serialize() const;
  static ToyState parse(std::span<const std::uint8_t> bytes);

  friend bool operator==(const ToyState&, const ToyState&) = default;

 private:
  std::map<std::uint32_t, std::uint64_t> balances_;
};

struct ShardBlock {
  std::uint32_t shard = 0;
  std::uint64_t smr_no = 0;
  std::uint32_t miner = 0;
  std::vector<Transaction> transactions;

  Bytes serialize() const;
  /// Returns nullopt for byte strings that are not a well-formed block.
  static std::optional<ShardBlock> parse(std::span<const std::uint8_t> bytes);
  friend bool operator==(const ShardBlock&, const ShardBlock&) = default;
};

struct ExecutionResult {
  std::vector<bool> valid;
  ToyState state;
};

/// Executes every transaction of the ledger in order. Invalid transactions
/// (malformed or overdrawing) are skipped and marked false.
ExecutionResult sanitize_and_execute(std::span<const ShardBlock> ledger, const ToyState& genesis);
ExecutionResult sanitize_and_execute(std::span<const Transaction> txs, const ToyState& genesis);

/// State roots before and after each transaction: size txs.size() + 1,
/// element 0 is the pre-state root.
std::vector<Digest> execution_roots(std::span<const Transaction> txs, const ToyState& pre);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_LEDGER_HPP
