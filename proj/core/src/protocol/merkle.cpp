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

#include "free2shard/protocol/merkle.hpp"

#include "free2shard/errors.hpp"

namespace f2s::protocol {

Digest merkle_leaf(std::span<const std::uint8_t> data) {
  return sha256(ByteWriter().u8(0x00).raw(data).bytes());
}

Digest merkle_node(const Digest& left, const Digest& right) {
  return sha256(ByteWriter().u8(0x01).raw(left).raw(right).bytes());
}

MerkleTree::MerkleTree(std::vector<Digest> leaves) {
  if (leaves.empty()) leaves.push_back(sha256(std::string_view("free2shard/empty-tree")));
  levels_.push_back(std::move(leaves));
  while (levels_.back().size() > 1) {
    const std::vector<Digest>& below = levels_.back();
    std::vector<Digest> above;
    above.reserve((below.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < below.size(); i += 2) above.push_back(merkle_node(below[i], below[i + 1]));
    if (below.size() % 2 == 1) above.push_back(below.back());
    levels_.push_back(std::move(above));
  }
}

MerkleProof MerkleTree::prove(std::size_t index) const {
  if (index >= leaf_count()) throw ArgumentError("MerkleTree::prove: index out of range");
  MerkleProof proof;
  proof.index = index;
  proof.leaf_count = leaf_count();
  std::size_t pos = index;
  for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
    const std::vector<Digest>& nodes = levels_[level];
    const std::size_t sibling = pos ^ 1U;
    if (sibling < nodes.size()) proof.siblings.push_back(nodes[sibling]);
    pos /= 2;
  }
  return proof;
}

Digest merkle_root(std::vector<Digest> leaves) { return MerkleTree(std::move(leaves)).root(); }

bool verify_merkle_proof(const Digest& root, const Digest& leaf, const MerkleProof& proof) {
  if (proof.index >= proof.leaf_count) return false;
  Digest acc = leaf;
  std::size_t pos = proof.index;
  std::size_t width = proof.leaf_count;
  std::size_t used = 0;
  while (width > 1) {
    const std::size_t sibling = pos ^ 1U;
    if (sibling < width) {
      if (used >= proof.siblings.size()) return false;
      const Digest& s = proof.siblings[used++];
      acc = (pos % 2 == 0) ? merkle_node(acc, s) : merkle_node(s, acc);
    }
    pos /= 2;
    width = (width + 1) / 2;
  }
  return used == proof.siblings.size() && acc == root;
}

}  // namespace f2s::protocol
