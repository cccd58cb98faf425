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

#include "free2shard/experiment/oracles.hpp"

#include <cmath>
#include <queue>

#include "free2shard/errors.hpp"

namespace f2s::experiment::oracle {

namespace {

double term(double u, double g, double b) {
  const double total = g + b;
  return total > 0.0 ? u * g / total : 0.0;
}

}  // namespace

double allocation_objective(std::span<const double> u, std::span<const double> honest,
                            std::span<const double> adversarial) {
  check_dimensions(u.size(), honest.size(), "allocation_objective");
  check_dimensions(u.size(), adversarial.size(), "allocation_objective");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += term(u[i], honest[i], adversarial[i]);
  return sum;
}

GridMinimum grid_minimum(std::span<const double> u, std::span<const double> honest, double beta, double step) {
  check_dimensions(u.size(), honest.size(), "grid_minimum");
  const std::size_t K = u.size();
  if (K == 0) throw DimensionError("grid_minimum: empty instance");
  if (!(step > 0.0)) throw ArgumentError("grid_minimum: step must be > 0");
  std::vector<double> b(K, 0.0);
  const auto gain = [&](std::size_t i, double delta) {
    return term(u[i], honest[i], b[i]) - term(u[i], honest[i], b[i] + delta);
  };

  // Greedy: each increment goes where it lowers the objective most.
  const auto increments = static_cast<long long>(std::floor(beta / step + 1e-9));
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> heap;
  for (std::size_t i = 0; i < K; ++i) heap.emplace(gain(i, step), i);
  for (long long n = 0; n < increments; ++n) {
    const std::size_t i = heap.top().second;
    heap.pop();
    b[i] += step;
    heap.emplace(gain(i, step), i);
  }
  b[heap.top().second] += beta - step * static_cast<double>(increments);

  // Exchange refinement: move delta from j to i while it helps.
  for (double delta = step / 2; delta > 1e-13; delta /= 2) {
    for (int pass = 0; pass < 64; ++pass) {
      std::size_t best_i = K;
      std::size_t best_j = K;
      double best = 0.0;
      for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) {
          if (i == j || b[j] < delta) continue;
          const double before = term(u[i], honest[i], b[i]) + term(u[j], honest[j], b[j]);
          const double after = term(u[i], honest[i], b[i] + delta) + term(u[j], honest[j], b[j] - delta);
          if (before - after > best) {
            best = before - after;
            best_i = i;
            best_j = j;
          }
        }
      }
      if (best_i == K) break;
      b[best_i] += delta;
      b[best_j] -= delta;
    }
  }
  return {allocation_objective(u, honest, b), b};
}

double escalation_closed_form(double K, double r) {
  return 1.0 / (1.0 + 2.0 * r) + (2.0 * r / (2.0 * r + 1.0)) * std::log(r) / std::log((K + 1.0) * r);
}

std::size_t rounds_to_cover(std::size_t B, std::size_t S) {
  if (S < 2) throw ArgumentError("rounds_to_cover: S must be >= 2");
  std::size_t rounds = 0;
  std::size_t covered = 1;
  while (covered < B) {
    covered *= S;
    ++rounds;
  }
  return rounds;
}

std::size_t first_divergence(std::span<const protocol::Digest> a, std::span<const protocol::Digest> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

bool majority(std::size_t yes, std::size_t N) { return 2 * yes > N; }

std::size_t data_chunk_threshold(std::size_t adversarial, std::size_t N) {
  if (2 * adversarial >= N) throw ArgumentError("data_chunk_threshold: adversary holds half or more");
  return std::max<std::size_t>(1, (N - 2 * adversarial + 1) / 2);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace f2s::experiment::oracle
