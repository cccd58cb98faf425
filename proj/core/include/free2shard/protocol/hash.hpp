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

#ifndef FREE2SHARD_PROTOCOL_HASH_HPP
#define FREE2SHARD_PROTOCOL_HASH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace f2s::protocol {

using Digest = std::array<std::uint8_t, 32>;
using Bytes = std::vector<std::uint8_t>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);
Digest digest_from_hex(std::string_view hex);

/// Lottery-style hash: maps a byte string to a 64-bit value. Sortition,
/// chunk assignment and leader election all go through this so tests can
/// inject deterministic outputs.
using HashOracle = std::function<std::uint64_t(std::span<const std::uint8_t>)>;

/// First eight bytes of SHA-256, big-endian.
HashOracle sha256_oracle();

/// Little-endian append helpers for canonical encodings.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v);
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& raw(std::span<const std::uint8_t> v);

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

/// Bounds-checked reader matching ByteWriter. Reads past the end throw
/// std::out_of_range.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  Digest digest();
  std::span<const std::uint8_t> raw(std::size_t n);
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

/// A node identity: secret key and the public key derived from it.
struct NodeKeys {
  Digest secret{};
  Digest public_key{};

  static NodeKeys derive(std::uint64_t seed, std::uint32_t node);
};

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_HASH_HPP
