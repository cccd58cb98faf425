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

// Coded shard blocks, availability voting and coding-fraud proofs.

#ifndef FREE2SHARD_PROTOCOL_AVAILABILITY_HPP
#define FREE2SHARD_PROTOCOL_AVAILABILITY_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "free2shard/protocol/erasure.hpp"
#include "free2shard/protocol/ledger.hpp"
#include "free2shard/protocol/merkle.hpp"

namespace f2s::protocol {

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CodedBlockHeader {
  std::uint32_t shard = 0;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint64_t payload_bytes = 0;
  std::uint32_t symbols_per_chunk = 0;
  Digest root{};  // Merkle root over the n serialized chunks

  void write(ByteWriter& w) const;
  static CodedBlockHeader read(ByteReader& r);
  friend bool operator==(const CodedBlockHeader&, const CodedBlockHeader&) = default;
};

struct ChunkWithProof {
  Chunk chunk;
  MerkleProof proof;

  void write(ByteWriter& w) const;
  static ChunkWithProof read(ByteReader& r);
};

struct CodedBlock {
  CodedBlockHeader header;
  std::vector<Chunk> chunks;

  const Digest& digest() const { return header.root; }
  ChunkWithProof with_proof(std::size_t index) const;
};

struct AvailabilityVote {
  std::uint32_t voter = 0;
  Digest block{};
  bool available = false;
};

struct CodingFraudProof {
  Digest block{};
  CodedBlockHeader header;
  std::vector<ChunkWithProof> evidence;

  Bytes serialize() const;
  static CodingFraudProof parse(std::span<const std::uint8_t> bytes);
};

CodedBlock encode_payload(std::span<const std::uint8_t> payload, std::uint32_t shard, std::size_t p,
                          std::size_t n);
CodedBlock encode_block(const ShardBlock& block, std::size_t p, std::size_t n);

/// Overwrites one symbol of one chunk and recommits to the altered chunk set,
/// producing a block whose chunks are not a codeword.
CodedBlock miscode(CodedBlock block, std::size_t chunk, std::size_t symbol, std::uint32_t value);

Digest chunk_leaf(const Chunk& chunk);
bool verify_chunk(const CodedBlockHeader& header, const ChunkWithProof& chunk);

using DecodeResult = std::variant<Bytes, CodingFraudProof>;

/// Reconstructs the payload from chunks whose proofs verify. When the
/// re-encoded reconstruction does not reproduce the committed root, the p
/// decoding chunks are returned as a fraud proof instead.
DecodeResult decode_or_fraud(std::span<const ChunkWithProof> chunks, const CodedBlockHeader& header);

bool verify_fraud_proof(const CodingFraudProof& proof);

/// First vote per voter counts; available iff strictly more than N/2 yes.
bool tally_availability(std::span<const AvailabilityVote> votes, std::size_t N);

/// ceil((0.5 - beta) N), at least 1. Throws ArgumentError for beta >= 0.5.
std::size_t data_chunks_for(double beta, std::size_t N);

/// Whether a majority could certify availability with only honest_holders
/// honest nodes holding their chunk, all adversarial nodes voting yes, and
/// fewer than p honest holders. Expected to be false whenever
/// p = data_chunks_for(beta, N).
bool availability_soundness_violated(std::size_t honest_holders, double beta, std::size_t N, std::size_t p);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_AVAILABILITY_HPP
