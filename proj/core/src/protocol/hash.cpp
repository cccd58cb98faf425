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

#include "free2shard/protocol/hash.hpp"

#include <openssl/sha.h>

#include <stdexcept>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest sha256(std::string_view text) {
  return sha256(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                              text.size()));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ArgumentError("from_hex: odd length");
  const auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw ArgumentError("from_hex: invalid digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

Digest digest_from_hex(std::string_view hex) {
  const Bytes b = from_hex(hex);
  if (b.size() != 32) throw ArgumentError("digest_from_hex: expected 32 bytes");
  Digest d{};
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

HashOracle sha256_oracle() {
  return [](std::span<const std::uint8_t> input) {
    const Digest d = sha256(input);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
    return v;
  };
}

ByteWriter& ByteWriter::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::raw(std::span<const std::uint8_t> v) {
  out_.insert(out_.end(), v.begin(), v.end());
  return *this;
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
  if (n > remaining()) throw std::out_of_range("ByteReader: truncated input");
  auto s = in_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto s = raw(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t ByteReader::u64() {
  auto s = raw(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
  return v;
}

Digest ByteReader::digest() {
  auto s = raw(32);
  Digest d{};
  std::copy(s.begin(), s.end(), d.begin());
  return d;
}

NodeKeys NodeKeys::derive(std::uint64_t seed, std::uint32_t node) {
  NodeKeys keys;
  keys.secret = sha256(ByteWriter().u8('s').u64(seed).u32(node).bytes());
  keys.public_key = sha256(ByteWriter().u8('p').raw(keys.secret).bytes());
  return keys;
}

}  // namespace f2s::protocol
