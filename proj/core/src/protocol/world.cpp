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

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

using resources::Category;
using resources::Dimension;

std::size_t Scenario::adversarial_nodes() const {
  return static_cast<std::size_t>(std::floor(beta * static_cast<double>(nodes) + 1e-9));
}

std::size_t Scenario::resolved_data_chunks() const {
  return data_chunks > 0 ? data_chunks : data_chunks_for(beta, nodes);
}

void Scenario::validate() const {
  if (nodes == 0 || shards == 0) throw ParameterError("scenario: nodes and shards must be positive");
  if (!(beta >= 0.0) || beta >= 0.5) throw ParameterError("scenario: beta must lie in [0, 0.5)");
  if (kappa == 0) throw ParameterError("scenario: kappa must be positive");
  if (epoch_length == 0) throw ParameterError("scenario: epoch_length must be positive");
  if (rotation_interval == 0) throw ParameterError("scenario: rotation_interval must be positive");
  if (branching < 2) throw ParameterError("scenario: branching must be at least 2");
  if (accounts < 2) throw ParameterError("scenario: at least two accounts are needed");
  if (resolved_data_chunks() > nodes) throw ParameterError("scenario: data_chunks exceeds the node count");
  if (!(expected_leaders > 0.0)) throw ParameterError("scenario: expected_leaders must be positive");
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(mix(seed) ^ a) ^ b);
}

struct Block {
  ShardBlock block;
  bool adversarial = false;
  bool miscoded = false;
  bool decoded = false;
};

class World {
 public:
  World(const Scenario& sc, const HashOracle& hash)
      : sc_(sc), hash_(hash), report_{sc, {}, resources::ResourceCounters(sc.shards), {}, {}, {}} {
    sc_.validate();
    adversaries_ = sc_.adversarial_nodes();
    p_ = sc_.resolved_data_chunks();
    n_ = sc_.nodes;
    threshold_ = leader_threshold(sc_.expected_leaders, sc_.nodes);
    keys_.reserve(sc_.nodes);
    for (std::uint32_t i = 0; i < sc_.nodes; ++i) keys_.push_back(NodeKeys::derive(sc_.seed, i));
    std::map<std::uint32_t, std::uint64_t> genesis;
    for (std::uint32_t a = 0; a < sc_.accounts; ++a) genesis[a] = sc_.initial_balance;
    state_.assign(sc_.shards, ToyState(genesis));
    finalized_.assign(sc_.shards, ToyState(genesis).root());
    committed_.assign(sc_.shards, 0);
    outcomes_.resize(sc_.shards);
    for (std::uint32_t k = 0; k < sc_.shards; ++k) outcomes_[k].shard = k;
  }

  WorldReport run() {
    for (std::uint64_t s = 1; s <= sc_.smr_blocks; ++s) {
      smr_bytes_ = 0;
      if (s > 1 && (s - 1) % sc_.rotation_interval == 0) rotate(s);
      mine(s);
      if (s % sc_.epoch_length == 0) {
        for (std::uint32_t k = 0; k < sc_.shards; ++k) commit_epoch(s, k);
      }
      report_.log_bytes_per_smr_block.push_back(smr_bytes_);
    }
    for (std::uint32_t k = 0; k < sc_.shards; ++k) {
      outcomes_[k].state_root = state_[k].root();
      outcomes_[k].last_finalized_root = finalized_[k];
    }
    report_.shards = outcomes_;
    return std::move(report_);
  }

 private:
  bool adversarial(std::uint32_t node) const { return node >= sc_.nodes - adversaries_; }

  std::uint32_t shard_of(std::uint32_t node, std::uint64_t s) const {
    if (adversarial(node) && sc_.faults.censor) return 0;
    const std::uint64_t period = (s - 1) / sc_.rotation_interval;
    return static_cast<std::uint32_t>((node + period) % sc_.shards);
  }

  std::size_t append(std::uint64_t s, LogPayload payload, Category category) {
    LogEntry entry{s, std::move(payload)};
    const std::uint64_t bytes = encode_entry(entry).size();
    smr_bytes_ += bytes;
    if (category == Category::shard_pointers || category == Category::availability_votes ||
        category == Category::fraud_proofs) {
      ledgers_stale_ = true;
    }
    for (Dimension d : {Dimension::computation, Dimension::communication, Dimension::storage}) {
      report_.counters.record(category, d, bytes);
    }
    return report_.log.append(std::move(entry));
  }

  std::vector<Transaction> make_transactions(std::uint64_t s, std::uint32_t shard, std::uint32_t miner) {
    std::mt19937_64 rng(stream_seed(sc_.seed, s, (static_cast<std::uint64_t>(shard) << 32) | miner));
    std::uniform_int_distribution<std::uint32_t> account(0, sc_.accounts - 1);
    std::uniform_int_distribution<std::uint64_t> amount(1, 2 * sc_.initial_balance / 5 + 1);
    std::bernoulli_distribution malformed(0.05);
    std::vector<Transaction> txs(sc_.block_txs);
    for (Transaction& tx : txs) {
      tx.from = account(rng);
      tx.to = malformed(rng) ? tx.from : account(rng);
      tx.amount = amount(rng);
    }
    return txs;
  }

  void mine(std::uint64_t s) {
    std::vector<Candidate> candidates;
    candidates.reserve(sc_.nodes);
    for (std::uint32_t i = 0; i < sc_.nodes; ++i) candidates.push_back({i, keys_[i].public_key, shard_of(i, s)});
    const auto winners = mining_lottery(candidates, s, sc_.kappa, hash_);

    std::vector<std::size_t> assigned(sc_.nodes);
    for (std::uint32_t i = 0; i < sc_.nodes; ++i) assigned[i] = assign_chunk(keys_[i].public_key, s, n_, hash_);

    for (const auto& [shard, list] : winners) {
      for (const LotteryWinner& w : list) propose(s, shard, w, assigned);
    }
  }

  void propose(std::uint64_t s, std::uint32_t shard, const LotteryWinner& w, const std::vector<std::size_t>& assigned) {
    WorldStats& st = report_.stats;
    Block b;
    b.adversarial = adversarial(w.node);
    b.block.shard = shard;
    b.block.smr_no = s;
    b.block.miner = w.node;
    if (!(b.adversarial && sc_.faults.censor)) b.block.transactions = make_transactions(s, shard, w.node);
    CodedBlock coded = encode_block(b.block, p_, n_);
    if (b.adversarial && sc_.faults.miscode && p_ < n_) {
      const std::uint32_t old = coded.chunks[p_].symbols[0];
      coded = miscode(std::move(coded), p_, 0, gf::add(old, 1));
      b.miscoded = true;
    }
    ++st.blocks_proposed;
    if (b.adversarial) ++st.adversarial_blocks_proposed;
    const Digest digest = coded.digest();
    append(s, ShardPointer{shard, digest, w.node, w.value}, Category::shard_pointers);

    std::vector<Digest> leaves;
    leaves.reserve(coded.chunks.size());
    for (const Chunk& c : coded.chunks) leaves.push_back(chunk_leaf(c));
    const MerkleTree tree(std::move(leaves));
    std::map<std::size_t, ChunkWithProof> sent;
    const auto chunk_for = [&](std::size_t idx) -> const ChunkWithProof& {
      auto it = sent.find(idx);
      if (it == sent.end()) it = sent.emplace(idx, ChunkWithProof{coded.chunks[idx], tree.prove(idx)}).first;
      return it->second;
    };

    const bool withheld = b.adversarial && sc_.faults.withhold;
    std::vector<AvailabilityVote> votes;
    std::vector<ChunkWithProof> honest_chunks;
    std::uint64_t chunk_bytes = 0;
    for (std::uint32_t i = 0; i < sc_.nodes; ++i) {
      bool yes = false;
      if (adversarial(i)) {
        yes = b.adversarial;
      } else if (!withheld) {
        const ChunkWithProof& c = chunk_for(assigned[i]);
        yes = verify_chunk(coded.header, c);
        if (yes) honest_chunks.push_back(c);
        if (chunk_bytes == 0) {
          ByteWriter w2;
          c.write(w2);
          chunk_bytes = w2.bytes().size();
        }
      }
      votes.push_back({i, digest, yes});
    }
    if (chunk_bytes > 0) {
      for (Dimension d : {Dimension::computation, Dimension::communication, Dimension::storage}) {
        report_.counters.record(Category::chunk_traffic, d, chunk_bytes);
      }
    }
    for (const AvailabilityVote& v : votes) append(s, v, Category::availability_votes);

    if (!tally_availability(votes, sc_.nodes)) {
      ++st.blocks_unavailable;
      blocks_.emplace(digest, std::move(b));
      return;
    }
    ++st.blocks_certified;
    if (b.miscoded) ++st.miscoded_blocks_certified;
    try {
      DecodeResult r = decode_or_fraud(honest_chunks, coded.header);
      if (auto* proof = std::get_if<CodingFraudProof>(&r)) {
        ++st.blocks_fraud_proven;
        append(s, std::move(*proof), Category::fraud_proofs);
      } else {
        const auto parsed = ShardBlock::parse(std::get<Bytes>(r));
        if (parsed) b.block = *parsed;
        else b.block.transactions.clear();
        b.decoded = true;
      }
    } catch (const InsufficientDataError&) {
      ++st.blocks_pending;
    }
    blocks_.emplace(digest, std::move(b));
  }

  // Transactions of ledger blocks not yet covered by a commitment.
  std::vector<Transaction> pending_transactions(std::uint32_t shard, std::vector<Digest>& ledger, std::size_t& bytes) {
    if (ledgers_stale_) {
      ledgers_ = derive_shard_ledgers(report_.log, sc_.nodes);
      ledgers_stale_ = false;
    }
    const auto it = ledgers_.find(shard);
    ledger = it == ledgers_.end() ? std::vector<Digest>{} : it->second;
    std::vector<Transaction> txs;
    bytes = 0;
    for (std::size_t i = committed_[shard]; i < ledger.size(); ++i) {
      const Block& b = blocks_.at(ledger[i]);
      if (!b.decoded) continue;
      txs.insert(txs.end(), b.block.transactions.begin(), b.block.transactions.end());
      bytes += b.block.serialize().size();
    }
    return txs;
  }

  void rotate(std::uint64_t s) {
    std::uint64_t total = 0;
    for (std::uint32_t k = 0; k < sc_.shards; ++k) {
      std::vector<Digest> ledger;
      std::size_t block_bytes = 0;
      pending_transactions(k, ledger, block_bytes);
      const std::uint64_t per_node = state_[k].serialize().size() + block_bytes;
      for (std::uint32_t i = 0; i < sc_.nodes; ++i) {
        if (!adversarial(i) && shard_of(i, s) == k && shard_of(i, s - 1) != k) total += per_node;
      }
    }
    const std::uint64_t avg = total / sc_.nodes;
    report_.counters.record(Category::rotation_sync, Dimension::communication, avg);
    report_.counters.record(Category::rotation_sync, Dimension::storage, avg);
  }

  void commit_epoch(std::uint64_t s, std::uint32_t shard) {
    WorldStats& st = report_.stats;
    std::vector<Digest> ledger;
    std::size_t block_bytes = 0;
    const std::vector<Transaction> txs = pending_transactions(shard, ledger, block_bytes);
    if (txs.empty()) return;

    std::optional<std::uint32_t> leader;
    for (std::uint32_t i = 0; i < sc_.nodes && !leader; ++i) {
      if (elect_epoch_leader(keys_[i].secret, s, shard, threshold_, hash_)) leader = i;
    }
    if (!leader) {
      ++st.epochs_without_leader;
      return;
    }

    const ToyState pre = state_[shard];
    const std::vector<Digest> honest = execution_roots(txs, pre);
    std::vector<Digest> claimed = honest;
    const bool bad = adversarial(*leader) && sc_.faults.bad_commitment;
    if (bad) {
      std::mt19937_64 rng(stream_seed(sc_.seed, s, 0xbadULL << 32 | shard));
      const std::size_t fault = std::uniform_int_distribution<std::size_t>(0, txs.size() - 1)(rng);
      ToyState corrupt = pre;
      for (std::size_t i = 0; i < fault; ++i) corrupt.apply(txs[i]);
      corrupt.apply(txs[fault]);
      std::map<std::uint32_t, std::uint64_t> minted = corrupt.balances();
      minted[txs[fault].to] += 1;
      corrupt = ToyState(std::move(minted));
      claimed[fault + 1] = corrupt.root();
      for (std::size_t i = fault + 1; i < txs.size(); ++i) {
        corrupt.apply(txs[i]);
        claimed[i + 1] = corrupt.root();
      }
      ++st.bad_commitments;
    }

    const std::uint64_t epoch = s / sc_.epoch_length;
    const std::size_t ref = append(s, StateCommitment{shard, epoch, *leader, txs.size(), claimed.back(), {}},
                                   Category::state_commitments);
    ++st.commitments;

    bool rejected = false;
    if (claimed.back() != honest.back()) {
      const std::uint32_t challenger = 0;
      ++st.challenges;
      append(s, Challenge{ref, challenger, 0}, Category::challenge_interactions);
      const BisectionOutcome outcome = run_bisection(claimed, honest, sc_.branching);
      st.bisection_rounds += outcome.rounds;
      for (const BisectionRound& r : outcome.transcript) {
        append(s, ChallengeReply{ref, r.boundaries}, Category::challenge_interactions);
        append(s, Challenge{ref, challenger, r.chosen}, Category::challenge_interactions);
      }
      ToyState witness = pre;
      for (std::size_t i = 0; i < outcome.disputed_index; ++i) witness.apply(txs[i]);
      DisputedTxEntry dispute;
      dispute.commitment = ref;
      dispute.index = outcome.disputed_index;
      dispute.disputed = DisputedTx{txs[outcome.disputed_index], witness, claimed[outcome.disputed_index + 1]};
      dispute.verdict = adjudicate(dispute.disputed, honest[outcome.disputed_index]);
      rejected = dispute.verdict == Verdict::challenger_correct;
      if (rejected) ++st.challenger_wins;
      append(s, std::move(dispute), Category::challenge_interactions);
    }
    if (bad && !rejected) ++st.invalid_commitments_finalized;
    if (!rejected) finalized_[shard] = claimed.back();

    const ExecutionResult exec = sanitize_and_execute(txs, pre);
    state_[shard] = exec.state;
    ShardOutcome& out = outcomes_[shard];
    out.transactions += txs.size();
    for (bool v : exec.valid) out.valid_transactions += v ? 1 : 0;
    for (std::size_t i = committed_[shard]; i < ledger.size(); ++i) {
      const Block& b = blocks_.at(ledger[i]);
      ++out.ledger_blocks;
      if (b.miscoded) ++st.miscoded_blocks_in_ledger;
      if (b.adversarial) ++st.adversarial_blocks_in_ledger;
      else ++st.honest_blocks_in_ledger;
    }
    committed_[shard] = ledger.size();

    const std::uint64_t executed = txs.size() * Transaction::kEncodedSize;
    report_.counters.record(Category::shard_processing, Dimension::computation, executed);
    report_.counters.record(Category::shard_processing, Dimension::communication, block_bytes);
    report_.counters.record(Category::shard_processing, Dimension::storage, block_bytes);
  }

  Scenario sc_;
  const HashOracle& hash_;
  WorldReport report_;
  std::size_t adversaries_ = 0;
  std::size_t p_ = 1;
  std::size_t n_ = 1;
  std::uint64_t threshold_ = 0;
  std::vector<NodeKeys> keys_;
  std::vector<ToyState> state_;
  std::vector<Digest> finalized_;
  std::vector<std::size_t> committed_;
  std::vector<ShardOutcome> outcomes_;
  std::map<Digest, Block> blocks_;
  std::uint64_t smr_bytes_ = 0;
  std::map<std::uint32_t, std::vector<Digest>> ledgers_;
  bool ledgers_stale_ = true;
};

}  // namespace

WorldReport simulate(const Scenario& scenario, const HashOracle& hash) { return World(scenario, hash).run(); }

}  // namespace f2s::protocol
