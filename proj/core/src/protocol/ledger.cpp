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

#include <stdexcept>

#include "free2shard/errors.hpp"
#include "free2shard/protocol/merkle.hpp"

namespace f2s::protocol {

void Transaction::write(ByteWriter& w) const { w.u32(from).u32(to).u64(amount); }

Transaction Transaction::read(ByteReader& r) {
  Transaction tx;
  tx.from = r.u32();
  tx.to = r.u32();
  tx.amount = r.u64();
  return tx;
}

std::uint64_t ToyState::balance(std::uint32_t account) const {
  const auto it = balances_.find(account);
  return it == balances_.end() ? 0 : it->second;
}

bool ToyState::apply(const Transaction& tx) {
  if (!tx.well_formed()) return false;
  const std::uint64_t have = balance(tx.from);
  if (have < tx.amount) return false;
  const std::uint64_t dest = balance(tx.to);
  if (dest > UINT64_MAX - tx.amount) return false;
  balances_[tx.from] = have - tx.amount;
  balances_[tx.to] = dest + tx.amount;
  return true;
}

Digest ToyState::root() const {
  std::vector<Digest> leaves;
  leaves.reserve(balances_.size());
  for (const auto& [account, amount] : balances_) {
    leaves.push_back(merkle_leaf(ByteWriter().u32(account).u64(amount).bytes()));
  }
  return merkle_root(std::move(leaves));
}

Bytes ToyState::serialize() const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(balances_.size()));
  for (const auto& [account, amount] : balances_) w.u32(account).u64(amount);
  return w.take();
}

ToyState ToyState::parse(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const std::uint32_t count = r.u32();
  std::map<std::uint32_t, std::uint64_t> balances;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t account = r.u32();
    balances[account] = r.u64();
  }
  if (!r.done()) throw ArgumentError("ToyState::parse: trailing bytes");
  return ToyState(std::move(balances));
}

Bytes ShardBlock::serialize() const {
  ByteWriter w;
  w.u32(shard).u64(smr_no).u32(miner).u32(static_cast<std::uint32_t>(transactions.size()));
  for (const Transaction& tx : transactions) tx.write(w);
  return w.take();
}

std::optional<ShardBlock> ShardBlock::parse(std::span<const std::uint8_t> bytes) {
  try {
    ByteReader r(bytes);
    ShardBlock b;
    b.shard = r.u32();
    b.smr_no = r.u64();
    b.miner = r.u32();
    const std::uint32_t count = r.u32();
    if (r.remaining() != static_cast<std::size_t>(count) * Transaction::kEncodedSize) return std::nullopt;
    b.transactions.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) b.transactions.push_back(Transaction::read(r));
    return b;
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

ExecutionResult sanitize_and_execute(std::span<const Transaction> txs, const ToyState& genesis) {
  ExecutionResult result{{}, genesis};
  result.valid.reserve(txs.size());
  for (const Transaction& tx : txs) result.valid.push_back(result.state.apply(tx));
  return result;
}

ExecutionResult sanitize_and_execute(std::span<const ShardBlock> ledger, const ToyState& genesis) {
  ExecutionResult result{{}, genesis};
  for (const ShardBlock& block : ledger) {
    for (const Transaction& tx : block.transactions) result.valid.push_back(result.state.apply(tx));
  }
  return result;
}

namespace {

Digest balance_leaf(std::uint32_t account, std::uint64_t amount) {
  return merkle_leaf(ByteWriter().u32(account).u64(amount).bytes());
}

// State tree that rehashes only the paths of touched accounts. Falls back to
// a full rebuild when the account set changes.
class StateTree {
 public:
  explicit StateTree(const ToyState& state) { rebuild(state); }

  void update(const ToyState& state, std::uint32_t a, std::uint32_t b) {
    if (state.balances().size() != slot_.size() || !slot_.count(a) || !slot_.count(b)) {
      rebuild(state);
      return;
    }
    touch(slot_.at(a), balance_leaf(a, state.balance(a)));
    touch(slot_.at(b), balance_leaf(b, state.balance(b)));
  }

  const Digest& root() const { return levels_.back().front(); }

 private:
  void rebuild(const ToyState& state) {
    slot_.clear();
    std::vector<Digest> leaves;
    for (const auto& [account, amount] : state.balances()) {
      slot_[account] = leaves.size();
      leaves.push_back(balance_leaf(account, amount));
    }
    if (leaves.empty()) leaves.push_back(merkle_root({}));
    levels_.assign(1, std::move(leaves));
    while (levels_.back().size() > 1) {
      const std::vector<Digest>& below = levels_.back();
      std::vector<Digest> above;
      for (std::size_t i = 0; i + 1 < below.size(); i += 2) above.push_back(merkle_node(below[i], below[i + 1]));
      if (below.size() % 2 == 1) above.push_back(below.back());
      levels_.push_back(std::move(above));
    }
  }

  void touch(std::size_t pos, const Digest& leaf) {
    levels_[0][pos] = leaf;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
      const std::vector<Digest>& nodes = levels_[level];
      const std::size_t left = pos & ~std::size_t{1};
      levels_[level + 1][pos / 2] =
          left + 1 < nodes.size() ? merkle_node(nodes[left], nodes[left + 1]) : nodes[left];
      pos /= 2;
    }
  }

  std::map<std::uint32_t, std::size_t> slot_;
  std::vector<std::vector<Digest>> levels_;
};

}  // namespace

std::vector<Digest> execution_roots(std::span<const Transaction> txs, const ToyState& pre) {
  std::vector<Digest> roots;
  roots.reserve(txs.size() + 1);
  ToyState state = pre;
  StateTree tree(state);
  roots.push_back(tree.root());
  for (const Transaction& tx : txs) {
    if (state.apply(tx)) tree.update(state, tx.from, tx.to);
    roots.push_back(tree.root());
  }
  return roots;
}

}  // namespace f2s::protocol
