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

#include "free2shard/protocol/availability.hpp"

#include <cmath>
#include <set>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

void CodedBlockHeader::write(ByteWriter& w) const {
  w.u32(shard).u32(p).u32(n).u64(payload_bytes).u32(symbols_per_chunk).raw(root);
}

CodedBlockHeader CodedBlockHeader::read(ByteReader& r) {
  CodedBlockHeader h;
  h.shard = r.u32();
  h.p = r.u32();
  h.n = r.u32();
  h.payload_bytes = r.u64();
  h.symbols_per_chunk = r.u32();
  h.root = r.digest();
  return h;
}

void ChunkWithProof::write(ByteWriter& w) const {
  const Bytes c = chunk.serialize();
  w.u32(static_cast<std::uint32_t>(c.size())).raw(c);
  w.u32(static_cast<std::uint32_t>(proof.index)).u32(static_cast<std::uint32_t>(proof.leaf_count));
  w.u32(static_cast<std::uint32_t>(proof.siblings.size()));
  for (const Digest& d : proof.siblings) w.raw(d);
}

ChunkWithProof ChunkWithProof::read(ByteReader& r) {
  ChunkWithProof out;
  const std::uint32_t len = r.u32();
  out.chunk = Chunk::parse(r.raw(len));
  out.proof.index = r.u32();
  out.proof.leaf_count = r.u32();
  const std::uint32_t count = r.u32();
  if (static_cast<std::size_t>(count) * 32 > r.remaining()) throw ArgumentError("ChunkWithProof: truncated proof");
  out.proof.siblings.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.proof.siblings.push_back(r.digest());
  return out;
}

Bytes CodingFraudProof::serialize() const {
  ByteWriter w;
  w.raw(block);
  header.write(w);
  w.u32(static_cast<std::uint32_t>(evidence.size()));
  for (const ChunkWithProof& c : evidence) c.write(w);
  return w.take();
}

CodingFraudProof CodingFraudProof::parse(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  CodingFraudProof proof;
  proof.block = r.digest();
  proof.header = CodedBlockHeader::read(r);
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) proof.evidence.push_back(ChunkWithProof::read(r));
  if (!r.done()) throw ArgumentError("CodingFraudProof::parse: trailing bytes");
  return proof;
}

Digest chunk_leaf(const Chunk& chunk) { return merkle_leaf(chunk.serialize()); }

namespace {

Digest commit(const std::vector<Chunk>& chunks) {
  std::vector<Digest> leaves;
  leaves.reserve(chunks.size());
  for (const Chunk& c : chunks) leaves.push_back(chunk_leaf(c));
  return merkle_root(std::move(leaves));
}

}  // namespace

ChunkWithProof CodedBlock::with_proof(std::size_t index) const {
  if (index >= chunks.size()) throw ArgumentError("CodedBlock::with_proof: index out of range");
  std::vector<Digest> leaves;
  leaves.reserve(chunks.size());
  for (const Chunk& c : chunks) leaves.push_back(chunk_leaf(c));
  return {chunks[index], MerkleTree(std::move(leaves)).prove(index)};
}

CodedBlock encode_payload(std::span<const std::uint8_t> payload, std::uint32_t shard, std::size_t p,
                          std::size_t n) {
  if (p > n) throw ArgumentError("encode_block: p must not exceed n");
  const SystematicCode code(p, n);
  CodedBlock out;
  out.chunks = code.encode(code.stripe(payload));
  out.header.shard = shard;
  out.header.p = static_cast<std::uint32_t>(p);
  out.header.n = static_cast<std::uint32_t>(n);
  out.header.payload_bytes = payload.size();
  out.header.symbols_per_chunk = static_cast<std::uint32_t>(out.chunks.front().symbols.size());
  out.header.root = commit(out.chunks);
  return out;
}

CodedBlock encode_block(const ShardBlock& block, std::size_t p, std::size_t n) {
  return encode_payload(block.serialize(), block.shard, p, n);
}

CodedBlock miscode(CodedBlock block, std::size_t chunk, std::size_t symbol, std::uint32_t value) {
  if (chunk >= block.chunks.size() || symbol >= block.chunks[chunk].symbols.size()) {
    throw ArgumentError("miscode: position out of range");
  }
  block.chunks[chunk].symbols[symbol] = value % gf::kModulus;
  block.header.root = commit(block.chunks);
  return block;
}

bool verify_chunk(const CodedBlockHeader& header, const ChunkWithProof& c) {
  return c.chunk.index < header.n && c.proof.index == c.chunk.index && c.proof.leaf_count == header.n &&
         c.chunk.symbols.size() == header.symbols_per_chunk &&
         verify_merkle_proof(header.root, chunk_leaf(c.chunk), c.proof);
}

namespace {

// Re-encodes p chunks and compares the commitment; returns the decoded data.
struct Replay {
  std::vector<std::vector<std::uint32_t>> data;
  bool consistent = false;
};

Replay replay(const std::vector<Chunk>& chunks, const CodedBlockHeader& header) {
  const SystematicCode code(header.p, header.n);
  Replay r;
  r.data = code.reconstruct(chunks);
  r.consistent = commit(code.encode(r.data)) == header.root;
  return r;
}

}  // namespace

DecodeResult decode_or_fraud(std::span<const ChunkWithProof> chunks, const CodedBlockHeader& header) {
  std::vector<const ChunkWithProof*> usable;
  std::set<std::uint32_t> seen;
  for (const ChunkWithProof& c : chunks) {
    if (usable.size() == header.p) break;
    if (!verify_chunk(header, c)) continue;
    if (seen.insert(c.chunk.index).second) usable.push_back(&c);
  }
  if (header.p == 0 || usable.size() < header.p) {
    throw InsufficientDataError("decode_or_fraud: fewer than p valid chunks");
  }
  std::vector<Chunk> raw;
  raw.reserve(usable.size());
  for (const ChunkWithProof* c : usable) raw.push_back(c->chunk);
  Replay r = replay(raw, header);
  if (r.consistent) return SystematicCode::unstripe(r.data, header.payload_bytes);
  CodingFraudProof proof;
  proof.block = header.root;
  proof.header = header;
  for (const ChunkWithProof* c : usable) proof.evidence.push_back(*c);
  return proof;
}

bool verify_fraud_proof(const CodingFraudProof& proof) {
  const CodedBlockHeader& header = proof.header;
  if (proof.block != header.root || header.p == 0 || header.p > header.n) return false;
  std::set<std::uint32_t> seen;
  std::vector<Chunk> raw;
  for (const ChunkWithProof& c : proof.evidence) {
    if (!verify_chunk(header, c)) return false;
    if (seen.insert(c.chunk.index).second) raw.push_back(c.chunk);
  }
  if (raw.size() < header.p) return false;
  raw.resize(header.p);
  return !replay(raw, header).consistent;
}

bool tally_availability(std::span<const AvailabilityVote> votes, std::size_t N) {
  std::set<std::uint32_t> voted;
  std::size_t yes = 0;
  for (const AvailabilityVote& v : votes) {
    if (!voted.insert(v.voter).second) continue;
    if (v.available) ++yes;
  }
  return 2 * yes > N;
}

std::size_t data_chunks_for(double beta, std::size_t N) {
  if (!(beta >= 0.0) || beta >= 0.5) throw ArgumentError("data_chunks_for: beta must lie in [0, 0.5)");
  const double raw = (0.5 - beta) * static_cast<double>(N);
  const auto p = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(1, p);
}

bool availability_soundness_violated(std::size_t honest_holders, double beta, std::size_t N, std::size_t p) {
  if (!(beta >= 0.0) || beta >= 0.5) throw ArgumentError("availability soundness: beta must lie in [0, 0.5)");
  const auto adversarial = static_cast<std::size_t>(std::floor(beta * static_cast<double>(N) + 1e-9));
  if (honest_holders + adversarial > N) throw ArgumentError("availability soundness: holders exceed honest nodes");
  const bool certified = 2 * (honest_holders + adversarial) > N;
  return certified && honest_holders < p;
}

}  // namespace f2s::protocol
