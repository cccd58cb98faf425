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

#include "free2shard/protocol/log.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void write_digests(ByteWriter& w, const std::vector<Digest>& ds) {
  w.u32(static_cast<std::uint32_t>(ds.size()));
  for (const Digest& d : ds) w.raw(d);
}

std::string hex_list(const std::vector<Digest>& ds) {
  if (ds.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += to_hex(ds[i]);
  }
  return out;
}

std::vector<Digest> parse_hex_list(const std::string& s) {
  std::vector<Digest> out;
  if (s == "-") return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    out.push_back(digest_from_hex(std::string_view(s).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

class Fields {
 public:
  Fields(std::istringstream& in, const std::string& line) : line_(line) {
    std::string token;
    while (in >> token) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) throw ArgumentError("log line: malformed field '" + token + "'");
      values_[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }

  const std::string& str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ArgumentError("log line: missing field '" + key + "' in: " + line_);
    return it->second;
  }
  std::uint64_t u64(const std::string& key) const { return std::stoull(str(key)); }
  std::uint32_t u32(const std::string& key) const { return static_cast<std::uint32_t>(std::stoul(str(key))); }
  Digest digest(const std::string& key) const { return digest_from_hex(str(key)); }

 private:
  std::map<std::string, std::string> values_;
  std::string line_;
};

}  // namespace

const char* entry_tag(const LogPayload& payload) {
  return std::visit(Overloaded{
                        [](const ShardPointer&) { return "POINTER"; },
                        [](const AvailabilityVote&) { return "VOTE"; },
                        [](const CodingFraudProof&) { return "FRAUD"; },
                        [](const StateCommitment&) { return "COMMIT"; },
                        [](const Challenge&) { return "CHALLENGE"; },
                        [](const ChallengeReply&) { return "REPLY"; },
                        [](const DisputedTxEntry&) { return "DISPUTE"; },
                    },
                    payload);
}

Bytes encode_entry(const LogEntry& entry) {
  ByteWriter w;
  w.u64(entry.smr_no).u8(static_cast<std::uint8_t>(entry.payload.index()));
  std::visit(Overloaded{
                 [&](const ShardPointer& e) { w.u32(e.shard).raw(e.block).u32(e.miner).u64(e.lottery); },
                 [&](const AvailabilityVote& e) { w.u32(e.voter).raw(e.block).u8(e.available ? 1 : 0); },
                 [&](const CodingFraudProof& e) { w.raw(e.serialize()); },
                 [&](const StateCommitment& e) {
                   w.u32(e.shard).u64(e.epoch).u32(e.leader).u64(e.transactions).raw(e.final_root);
                   write_digests(w, e.intermediate_roots);
                 },
                 [&](const Challenge& e) { w.u64(e.commitment).u32(e.challenger).u64(e.disagreement); },
                 [&](const ChallengeReply& e) {
                   w.u64(e.commitment);
                   write_digests(w, e.sub_states);
                 },
                 [&](const DisputedTxEntry& e) {
                   w.u64(e.commitment).u64(e.index);
                   e.disputed.tx.write(w);
                   w.raw(e.disputed.witness.serialize()).raw(e.disputed.claimed_post_root);
                   w.u8(e.verdict == Verdict::leader_correct ? 0 : 1);
                 },
             },
             entry.payload);
  return w.take();
}

std::string dump_entry(const LogEntry& entry) {
  std::ostringstream out;
  out << entry.smr_no << ' ' << entry_tag(entry.payload);
  std::visit(Overloaded{
                 [&](const ShardPointer& e) {
                   out << " shard=" << e.shard << " block=" << to_hex(e.block) << " miner=" << e.miner
                       << " lottery=" << e.lottery;
                 },
                 [&](const AvailabilityVote& e) {
                   out << " voter=" << e.voter << " block=" << to_hex(e.block) << " available=" << (e.available ? 1 : 0);
                 },
                 [&](const CodingFraudProof& e) {
                   out << " block=" << to_hex(e.block) << " evidence=" << to_hex(e.serialize());
                 },
                 [&](const StateCommitment& e) {
                   out << " shard=" << e.shard << " epoch=" << e.epoch << " leader=" << e.leader
                       << " transactions=" << e.transactions << " root=" << to_hex(e.final_root)
                       << " intermediate=" << hex_list(e.intermediate_roots);
                 },
                 [&](const Challenge& e) {
                   out << " commitment=" << e.commitment << " challenger=" << e.challenger
                       << " disagreement=" << e.disagreement;
                 },
                 [&](const ChallengeReply& e) {
                   out << " commitment=" << e.commitment << " states=" << hex_list(e.sub_states);
                 },
                 [&](const DisputedTxEntry& e) {
                   out << " commitment=" << e.commitment << " index=" << e.index << " from=" << e.disputed.tx.from
                       << " to=" << e.disputed.tx.to << " amount=" << e.disputed.tx.amount
                       << " witness=" << to_hex(e.disputed.witness.serialize())
                       << " claimed=" << to_hex(e.disputed.claimed_post_root)
                       << " verdict=" << verdict_name(e.verdict);
                 },
             },
             entry.payload);
  return out.str();
}

LogEntry parse_entry(const std::string& line) {
  std::istringstream in(line);
  LogEntry entry;
  std::string tag;
  if (!(in >> entry.smr_no >> tag)) throw ArgumentError("log line: missing smr number or tag: " + line);
  const Fields f(in, line);
  if (tag == "POINTER") {
    entry.payload = ShardPointer{f.u32("shard"), f.digest("block"), f.u32("miner"), f.u64("lottery")};
  } else if (tag == "VOTE") {
    entry.payload = AvailabilityVote{f.u32("voter"), f.digest("block"), f.str("available") == "1"};
  } else if (tag == "FRAUD") {
    CodingFraudProof proof = CodingFraudProof::parse(from_hex(f.str("evidence")));
    if (proof.block != f.digest("block")) throw ArgumentError("log line: fraud proof digest mismatch");
    entry.payload = std::move(proof);
  } else if (tag == "COMMIT") {
    entry.payload = StateCommitment{f.u32("shard"),       f.u64("epoch"),
                                    f.u32("leader"),      f.u64("transactions"),
                                    f.digest("root"),     parse_hex_list(f.str("intermediate"))};
  } else if (tag == "CHALLENGE") {
    entry.payload = Challenge{f.u64("commitment"), f.u32("challenger"), f.u64("disagreement")};
  } else if (tag == "REPLY") {
    entry.payload = ChallengeReply{f.u64("commitment"), parse_hex_list(f.str("states"))};
  } else if (tag == "DISPUTE") {
    DisputedTxEntry e;
    e.commitment = f.u64("commitment");
    e.index = f.u64("index");
    e.disputed.tx = Transaction{f.u32("from"), f.u32("to"), f.u64("amount")};
    e.disputed.witness = ToyState::parse(from_hex(f.str("witness")));
    e.disputed.claimed_post_root = f.digest("claimed");
    const std::string& verdict = f.str("verdict");
    if (verdict == "leader-correct") {
      e.verdict = Verdict::leader_correct;
    } else if (verdict == "challenger-correct") {
      e.verdict = Verdict::challenger_correct;
    } else {
      throw ArgumentError("log line: unknown verdict '" + verdict + "'");
    }
    entry.payload = std::move(e);
  } else {
    throw ArgumentError("log line: unknown tag '" + tag + "'");
  }
  return entry;
}

std::size_t OrderedLog::append(LogEntry entry) {
  const auto require_block = [this](const Digest& d) {
    if (!has_block(d)) throw ArgumentError("OrderedLog: entry references a block not in the log");
  };
  const auto require_commitment = [this](std::uint64_t ref) {
    if (ref >= entries_.size() || !std::holds_alternative<StateCommitment>(entries_[ref].payload)) {
      throw ArgumentError("OrderedLog: entry references a commitment not in the log");
    }
  };
  std::visit(Overloaded{
                 [&](const ShardPointer& e) { blocks_.insert(e.block); },
                 [&](const AvailabilityVote& e) { require_block(e.block); },
                 [&](const CodingFraudProof& e) { require_block(e.block); },
                 [&](const StateCommitment&) {},
                 [&](const Challenge& e) { require_commitment(e.commitment); },
                 [&](const ChallengeReply& e) { require_commitment(e.commitment); },
                 [&](const DisputedTxEntry& e) { require_commitment(e.commitment); },
             },
             entry.payload);
  if (!entries_.empty() && entry.smr_no < entries_.back().smr_no) {
    throw ArgumentError("OrderedLog: SMR block numbers must be nondecreasing");
  }
  entries_.push_back(std::move(entry));
  return entries_.size() - 1;
}

void OrderedLog::dump(std::ostream& out) const {
  for (const LogEntry& e : entries_) out << dump_entry(e) << '\n';
}

std::string OrderedLog::dump() const {
  std::ostringstream out;
  dump(out);
  return out.str();
}

OrderedLog OrderedLog::replay(std::istream& in) {
  OrderedLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    log.append(parse_entry(line));
  }
  return log;
}

std::map<std::uint32_t, std::vector<Digest>> derive_shard_ledgers(const OrderedLog& log, std::size_t N) {
  std::vector<const ShardPointer*> pointers;
  std::map<Digest, std::vector<AvailabilityVote>> votes;
  std::set<Digest> fraudulent;
  for (const LogEntry& entry : log.entries()) {
    if (const auto* p = std::get_if<ShardPointer>(&entry.payload)) {
      pointers.push_back(p);
    } else if (const auto* v = std::get_if<AvailabilityVote>(&entry.payload)) {
      votes[v->block].push_back(*v);
    } else if (const auto* f = std::get_if<CodingFraudProof>(&entry.payload)) {
      if (verify_fraud_proof(*f)) fraudulent.insert(f->block);
    }
  }
  std::map<std::uint32_t, std::vector<Digest>> ledgers;
  std::set<Digest> included;
  for (const ShardPointer* p : pointers) {
    if (fraudulent.count(p->block) || included.count(p->block)) continue;
    const auto it = votes.find(p->block);
    if (it == votes.end() || !tally_availability(it->second, N)) continue;
    included.insert(p->block);
    ledgers[p->shard].push_back(p->block);
  }
  return ledgers;
}

std::vector<Digest> derive_shard_ledger(const OrderedLog& log, std::uint32_t shard, std::size_t N) {
  auto ledgers = derive_shard_ledgers(log, N);
  const auto it = ledgers.find(shard);
  return it == ledgers.end() ? std::vector<Digest>{} : std::move(it->second);
}

}  // namespace f2s::protocol
