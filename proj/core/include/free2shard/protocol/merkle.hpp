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

// Binary Merkle tree with domain-separated leaf and node hashes. An unpaired
// node at the end of a level is promoted unchanged.

#ifndef FREE2SHARD_PROTOCOL_MERKLE_HPP
#define FREE2SHARD_PROTOCOL_MERKLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "free2shard/protocol/hash.hpp"

namespace f2s::protocol {

struct MerkleProof {
  std::size_t index = 0;
  std::size_t leaf_count = 0;
  std::vector<Digest> siblings;  // bottom-up; promoted levels contribute none
};

Digest merkle_leaf(std::span<const std::uint8_t> data);
Digest merkle_node(const Digest& left, const Digest& right);

class MerkleTree {
 public:
  explicit MerkleTree(std::vector<Digest> leaves);

  const Digest& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return levels_.front().size(); }
  MerkleProof prove(std::size_t index) const;

 private:
  std::vector<std::vector<Digest>> levels_;
};

Digest merkle_root(std::vector<Digest> leaves);

bool verify_merkle_proof(const Digest& root, const Digest& leaf, const MerkleProof& proof);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_MERKLE_HPP
