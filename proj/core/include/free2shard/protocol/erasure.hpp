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

// Systematic Reed-Solomon style code over GF(65537).
//
// Each of the p data chunks is a stripe of L symbols. Column c of chunk x is
// the value at point x of the unique degree < p polynomial through the p data
// values of column c, so chunks 0..p-1 are the data itself and any p distinct
// chunks determine the rest.

#ifndef FREE2SHARD_PROTOCOL_ERASURE_HPP
#define FREE2SHARD_PROTOCOL_ERASURE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "free2shard/protocol/hash.hpp"

namespace f2s::protocol {

namespace gf {

inline constexpr std::uint32_t kModulus = 65537;

inline std::uint32_t add(std::uint32_t a, std::uint32_t b) { return (a + b) % kModulus; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return (a + kModulus - b) % kModulus; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % kModulus);
}
std::uint32_t pow(std::uint32_t a, std::uint64_t e);
std::uint32_t inv(std::uint32_t a);

/// Coefficients (lowest degree first) of the polynomial of degree < xs.size()
/// through the points (xs[i], ys[i]).
std::vector<std::uint32_t> interpolate(std::span<const std::uint32_t> xs,
                                       std::span<const std::uint32_t> ys);

std::uint32_t evaluate(std::span<const std::uint32_t> coeffs, std::uint32_t x);

}  // namespace gf

struct Chunk {
  std::uint32_t index = 0;
  std::vector<std::uint32_t> symbols;

  Bytes serialize() const;
  static Chunk parse(std::span<const std::uint8_t> bytes);
};

class SystematicCode {
 public:
  /// Requires 1 <= p <= n < 65537.
  SystematicCode(std::size_t p, std::size_t n);

  std::size_t data_chunks() const { return p_; }
  std::size_t total_chunks() const { return n_; }

  /// data: p chunks of equal length L. Returns all n chunks.
  std::vector<Chunk> encode(const std::vector<std::vector<std::uint32_t>>& data) const;

  /// Recovers the p data stripes from at least p chunks with distinct indices
  /// (only the first p distinct ones are used). Throws ArgumentError when
  /// fewer than p distinct indices are supplied or lengths disagree.
  std::vector<std::vector<std::uint32_t>> reconstruct(std::span<const Chunk> chunks) const;

  /// Payload bytes packed two per symbol, big-endian, zero padded to p*L.
  std::vector<std::vector<std::uint32_t>> stripe(std::span<const std::uint8_t> payload) const;
  static Bytes unstripe(const std::vector<std::vector<std::uint32_t>>& data, std::size_t length);

 private:
  std::size_t p_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> parity_;  // (n - p) x p Lagrange weights
};

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_ERASURE_HPP
