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

#include "free2shard/protocol/erasure.hpp"

#include <set>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

namespace gf {

std::uint32_t pow(std::uint32_t a, std::uint64_t e) {
  std::uint32_t result = 1;
  std::uint32_t base = a % kModulus;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::uint32_t inv(std::uint32_t a) {
  if (a % kModulus == 0) throw ArgumentError("gf::inv: zero has no inverse");
  return pow(a, kModulus - 2);
}

std::vector<std::uint32_t> interpolate(std::span<const std::uint32_t> xs,
                                       std::span<const std::uint32_t> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw DimensionError("gf::interpolate: bad point set");
  const std::size_t k = xs.size();
  std::vector<std::uint32_t> result(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
    std::vector<std::uint32_t> basis{1};
    std::uint32_t denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      std::vector<std::uint32_t> next(basis.size() + 1, 0);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] = add(next[d + 1], basis[d]);
        next[d] = sub(next[d], mul(basis[d], xs[j] % kModulus));
      }
      basis = std::move(next);
      const std::uint32_t diff = sub(xs[i] % kModulus, xs[j] % kModulus);
      if (diff == 0) throw ArgumentError("gf::interpolate: repeated x");
      denom = mul(denom, diff);
    }
    const std::uint32_t scale = mul(ys[i] % kModulus, inv(denom));
    for (std::size_t d = 0; d < k; ++d) result[d] = add(result[d], mul(basis[d], scale));
  }
  return result;
}

std::uint32_t evaluate(std::span<const std::uint32_t> coeffs, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t d = coeffs.size(); d-- > 0;) acc = add(mul(acc, x), coeffs[d]);
  return acc;
}

}  // namespace gf

namespace {

// Barycentric form: for y outside xs, L_i(y) = l(y) * b_i / (y - x_i) with
// l(y) = prod_j (y - x_j) and b_i = 1 / prod_{j != i} (x_i - x_j).
class LagrangeBasis {
 public:
  explicit LagrangeBasis(std::vector<std::uint32_t> xs) : xs_(std::move(xs)), b_(xs_.size()) {
    std::vector<std::uint32_t> denom(xs_.size(), 1);
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      for (std::size_t j = 0; j < xs_.size(); ++j) {
        if (j != i) denom[i] = gf::mul(denom[i], gf::sub(xs_[i], xs_[j]));
      }
    }
    b_ = batch_inverse(denom);
  }

  std::vector<std::uint32_t> weights(std::uint32_t y) const {
    const std::size_t k = xs_.size();
    std::vector<std::uint32_t> w(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (xs_[i] == y) {
        w[i] = 1;
        return w;
      }
    }
    std::vector<std::uint32_t> diff(k);
    std::uint32_t full = 1;
    for (std::size_t i = 0; i < k; ++i) {
      diff[i] = gf::sub(y, xs_[i]);
      full = gf::mul(full, diff[i]);
    }
    const std::vector<std::uint32_t> inv = batch_inverse(diff);
    for (std::size_t i = 0; i < k; ++i) w[i] = gf::mul(full, gf::mul(b_[i], inv[i]));
    return w;
  }

 private:
  static std::vector<std::uint32_t> batch_inverse(const std::vector<std::uint32_t>& v) {
    std::vector<std::uint32_t> prefix(v.size() + 1, 1);
    for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = gf::mul(prefix[i], v[i]);
    std::uint32_t acc = gf::inv(prefix.back());
    std::vector<std::uint32_t> out(v.size());
    for (std::size_t i = v.size(); i-- > 0;) {
      out[i] = gf::mul(acc, prefix[i]);
      acc = gf::mul(acc, v[i]);
    }
    return out;
  }

  std::vector<std::uint32_t> xs_;
  std::vector<std::uint32_t> b_;
};

}  // namespace

Bytes Chunk::serialize() const {
  ByteWriter w;
  w.u32(index).u32(static_cast<std::uint32_t>(symbols.size()));
  for (std::uint32_t s : symbols) w.u32(s);
  return w.take();
}

Chunk Chunk::parse(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Chunk c;
  c.index = r.u32();
  const std::uint32_t len = r.u32();
  if (static_cast<std::size_t>(len) * 4 != r.remaining()) throw ArgumentError("Chunk::parse: length mismatch");
  c.symbols.resize(len);
  for (auto& s : c.symbols) s = r.u32();
  return c;
}

SystematicCode::SystematicCode(std::size_t p, std::size_t n) : p_(p), n_(n) {
  if (p == 0 || p > n || n >= gf::kModulus) {
    throw ParameterError("SystematicCode: require 1 <= p <= n < 65537");
  }
  std::vector<std::uint32_t> xs(p);
  for (std::size_t i = 0; i < p; ++i) xs[i] = static_cast<std::uint32_t>(i);
  const LagrangeBasis basis(std::move(xs));
  parity_.reserve(n - p);
  for (std::size_t x = p; x < n; ++x) parity_.push_back(basis.weights(static_cast<std::uint32_t>(x)));
}

std::vector<Chunk> SystematicCode::encode(const std::vector<std::vector<std::uint32_t>>& data) const {
  if (data.size() != p_) throw DimensionError("SystematicCode::encode: expected p data chunks");
  const std::size_t len = data.front().size();
  for (const auto& d : data) {
    if (d.size() != len) throw DimensionError("SystematicCode::encode: ragged data chunks");
  }
  std::vector<Chunk> out(n_);
  for (std::size_t x = 0; x < p_; ++x) {
    out[x].index = static_cast<std::uint32_t>(x);
    out[x].symbols.resize(len);
    for (std::size_t c = 0; c < len; ++c) out[x].symbols[c] = data[x][c] % gf::kModulus;
  }
  for (std::size_t x = p_; x < n_; ++x) {
    const std::vector<std::uint32_t>& w = parity_[x - p_];
    std::vector<std::uint64_t> acc(len, 0);
    for (std::size_t j = 0; j < p_; ++j) {
      const std::uint64_t wj = w[j];
      if (wj == 0) continue;
      const std::vector<std::uint32_t>& row = out[j].symbols;
      for (std::size_t c = 0; c < len; ++c) acc[c] += wj * row[c];
    }
    out[x].index = static_cast<std::uint32_t>(x);
    out[x].symbols.resize(len);
    for (std::size_t c = 0; c < len; ++c) out[x].symbols[c] = static_cast<std::uint32_t>(acc[c] % gf::kModulus);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> SystematicCode::reconstruct(std::span<const Chunk> chunks) const {
  std::vector<const Chunk*> picked;
  std::set<std::uint32_t> seen;
  for (const Chunk& c : chunks) {
    if (c.index >= n_) throw ArgumentError("SystematicCode::reconstruct: chunk index out of range");
    if (seen.insert(c.index).second) picked.push_back(&c);
    if (picked.size() == p_) break;
  }
  if (picked.size() < p_) throw ArgumentError("SystematicCode::reconstruct: fewer than p distinct chunks");
  const std::size_t len = picked.front()->symbols.size();
  std::vector<std::uint32_t> xs;
  std::vector<std::vector<std::uint32_t>> rows;
  for (const Chunk* c : picked) {
    if (c->symbols.size() != len) throw DimensionError("SystematicCode::reconstruct: ragged chunks");
    xs.push_back(c->index);
    rows.push_back(c->symbols);
    for (std::uint32_t& v : rows.back()) v %= gf::kModulus;
  }
  const LagrangeBasis basis(std::move(xs));
  std::vector<std::vector<std::uint32_t>> data(p_, std::vector<std::uint32_t>(len, 0));
  for (std::size_t y = 0; y < p_; ++y) {
    const std::vector<std::uint32_t> w = basis.weights(static_cast<std::uint32_t>(y));
    std::vector<std::uint64_t> acc(len, 0);
    for (std::size_t i = 0; i < p_; ++i) {
      const std::uint64_t wi = w[i];
      if (wi == 0) continue;
      const std::vector<std::uint32_t>& row = rows[i];
      for (std::size_t c = 0; c < len; ++c) acc[c] += wi * row[c];
    }
    for (std::size_t c = 0; c < len; ++c) data[y][c] = static_cast<std::uint32_t>(acc[c] % gf::kModulus);
  }
  return data;
}

std::vector<std::vector<std::uint32_t>> SystematicCode::stripe(std::span<const std::uint8_t> payload) const {
  const std::size_t symbols = (payload.size() + 1) / 2;
  const std::size_t len = std::max<std::size_t>(1, (symbols + p_ - 1) / p_);
  std::vector<std::vector<std::uint32_t>> data(p_, std::vector<std::uint32_t>(len, 0));
  for (std::size_t s = 0; s < symbols; ++s) {
    const std::uint32_t hi = payload[2 * s];
    const std::uint32_t lo = 2 * s + 1 < payload.size() ? payload[2 * s + 1] : 0;
    data[s / len][s % len] = hi << 8 | lo;
  }
  return data;
}

Bytes SystematicCode::unstripe(const std::vector<std::vector<std::uint32_t>>& data, std::size_t length) {
  Bytes out;
  out.reserve(length + 1);
  for (const auto& row : data) {
    for (std::uint32_t v : row) {
      if (out.size() >= length) break;
      out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
      out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
  }
  if (out.size() < length) throw ArgumentError("SystematicCode::unstripe: not enough symbols");
  out.resize(length);
  return out;
}

}  // namespace f2s::protocol
