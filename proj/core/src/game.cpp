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

#include "free2shard/game.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "free2shard/errors.hpp"

namespace f2s::game {

namespace {

std::uint64_t mix_seed(std::uint64_t x) {
  // splitmix64 finaliser
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

adversary::AdversarySpec seeded(adversary::AdversarySpec spec, std::uint64_t game_seed) {
  spec.seed = mix_seed(game_seed ^ mix_seed(spec.seed));
  return spec;
}

GameState advance(GameState s, const GameConfig& cfg, bool stochastic, const TargetSet& target) {
  const long long t = s.t + 1;
  if ((t - 1) % cfg.rotation_interval == 0) {
    AllocationVector prescribed = policy::allocate(cfg.policy, s.average, s.adversarial);
    if (cfg.compliance < 1.0) {
      const double uniform = cfg.gamma / static_cast<double>(cfg.K);
      for (double& x : prescribed.values) {
        x = cfg.compliance * x + (1.0 - cfg.compliance) * uniform;
      }
    }
    s.honest_mean = std::move(prescribed);
    if (stochastic) {
      s.counts = sample_counts(s.honest_mean.values, cfg.honest_nodes(), s.rng);
      s.honest_used = AllocationVector{std::vector<double>(cfg.K), cfg.gamma};
      for (std::size_t i = 0; i < cfg.K; ++i) {
        s.honest_used.values[i] = static_cast<double>(s.counts[i]) / static_cast<double>(cfg.N);
      }
    } else {
      s.honest_used = s.honest_mean;
    }
  }

  adversary::RoundView view;
  view.t = t;
  view.honest = &s.honest_used;
  view.avg_prev = &s.average;
  view.target = &target;
  s.adversarial = s.adversary.respond(view);

  s.fraction = instantaneous_fraction(s.honest_used, s.adversarial);
  s.average = update_time_average(s.average, s.fraction, t);
  s.distance = distance_to_target(s.average, target);
  s.t = t;
  return s;
}

}  // namespace

std::size_t GameConfig::honest_nodes() const {
  return static_cast<std::size_t>(std::floor(static_cast<double>(N) * gamma + 1e-9));
}

GameConfig validated(GameConfig cfg) {
  if (cfg.K == 0) throw ArgumentError("game: K must be >= 1");
  if (cfg.T < 0) throw ArgumentError("game: T must be >= 0");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) throw ArgumentError("game: gamma must lie in (0,1]");
  if (!(cfg.beta >= 0.0)) throw ArgumentError("game: beta must be >= 0");
  if (std::abs(cfg.gamma + cfg.beta - 1.0) > 1e-12) {
    throw ArgumentError("game: gamma + beta must equal 1");
  }
  if (cfg.rotation_interval < 1) throw ArgumentError("game: rotation_interval must be >= 1");
  if (!(cfg.compliance > 0.0 && cfg.compliance <= 1.0)) {
    throw ArgumentError("game: compliance must lie in (0,1]");
  }
  if (cfg.mode == Mode::stochastic) {
    if (cfg.N < 1) throw ArgumentError("game: stochastic mode needs N >= 1");
    if (cfg.honest_nodes() < 1) throw ArgumentError("game: stochastic mode needs floor(N gamma) >= 1");
  }

  policy::PolicyParams& p = cfg.policy.params;
  p.K = cfg.K;
  p.gamma = cfg.gamma;
  p.beta = cfg.beta;
  if (p.N == 0) p.N = cfg.N;
  if (p.n == 0) p.n = cfg.honest_nodes();
  if (!p.targets.empty()) check_dimensions(p.targets.size(), cfg.K, "game targets");
  if (cfg.policy.kind == policy::Kind::simple_dynamic && !(cfg.beta > 0.0)) {
    throw ArgumentError("game: simple-dynamic is undefined for beta = 0");
  }
  if (cfg.policy.kind == policy::Kind::f2s_dist) {
    policy::validate_dist_params(p);
    (void)policy::dist_target(p);
  }
  // Surfaces adversary parameter errors (e.g. cascade with K <= e^2) early.
  (void)adversary::AdversaryPlayer(cfg.adversary, {cfg.gamma, cfg.beta, cfg.K});
  return cfg;
}

std::optional<double> GameTrace::final_psi() const {
  if (rounds.empty()) return std::nullopt;
  return rounds.back().psi;
}

std::optional<double> GameTrace::final_distance() const {
  if (rounds.empty()) return std::nullopt;
  return rounds.back().distance;
}

GameState::GameState(const GameConfig& cfg)
    : average(FractionVector::zeros(cfg.K)),
      honest_mean{std::vector<double>(cfg.K, 0.0), cfg.gamma},
      honest_used{std::vector<double>(cfg.K, 0.0), cfg.gamma},
      adversarial{std::vector<double>(cfg.K, cfg.beta / static_cast<double>(cfg.K)), cfg.beta},
      counts(cfg.K, 0),
      fraction(FractionVector::zeros(cfg.K)),
      adversary(seeded(cfg.adversary, cfg.seed), {cfg.gamma, cfg.beta, cfg.K}),
      rng(cfg.seed) {}

std::vector<std::size_t> sample_counts(std::span<const double> weights, std::size_t n,
                                       std::mt19937_64& rng) {
  std::vector<std::size_t> counts(weights.size(), 0);
  if (weights.empty() || n == 0) return counts;
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  for (std::size_t node = 0; node < n; ++node) ++counts[pick(rng)];
  return counts;
}

GameState step_mean_field(GameState state, const GameConfig& cfg) {
  const TargetSet target = policy::policy_target(cfg.policy);
  return advance(std::move(state), cfg, false, target);
}

GameState step_stochastic(GameState state, const GameConfig& cfg) {
  const TargetSet target = policy::policy_target(cfg.policy);
  return advance(std::move(state), cfg, true, target);
}

GameTrace run(const GameConfig& raw) {
  const GameConfig cfg = validated(raw);
  const TargetSet target = policy::policy_target(cfg.policy);
  const bool stochastic = cfg.mode == Mode::stochastic;

  GameTrace trace;
  trace.K = cfg.K;
  trace.rounds.reserve(static_cast<std::size_t>(cfg.T));
  if (cfg.record_shards) {
    const std::size_t cells = static_cast<std::size_t>(cfg.T) * cfg.K;
    trace.honest.reserve(cells);
    trace.adversarial.reserve(cells);
    trace.fraction.reserve(cells);
    trace.average.reserve(cells);
  }

  GameState state(cfg);
  for (long long t = 1; t <= cfg.T; ++t) {
    state = advance(std::move(state), cfg, stochastic, target);
    trace.rounds.push_back({t, worst_shard_metric(state.average), state.distance});
    if (cfg.record_shards) {
      const auto append = [](std::vector<double>& dst, const std::vector<double>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
      };
      append(trace.honest, state.honest_used.values);
      append(trace.adversarial, state.adversarial.values);
      append(trace.fraction, state.fraction.values);
      append(trace.average, state.average.values);
    }
  }
  trace.final_average = state.average.values;
  return trace;
}

Quantiles summarize(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  q.min = values.front();
  q.max = values.back();
  q.q10 = at(0.1);
  q.median = at(0.5);
  q.q90 = at(0.9);
  return q;
}

BatchSummary run_batch(const GameConfig& raw, std::span<const std::uint64_t> seeds,
                       unsigned workers) {
  GameConfig base = validated(raw);
  base.record_shards = false;

  BatchSummary summary;
  summary.runs.resize(seeds.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(seeds.size(), 1)));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      GameConfig cfg = base;
      cfg.seed = seeds[i];
      const GameTrace trace = run(cfg);
      summary.runs[i] = RunResult{seeds[i], trace.final_psi(), trace.final_distance()};
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  std::vector<double> psi;
  std::vector<double> dist;
  for (const RunResult& r : summary.runs) {
    if (r.psi) psi.push_back(*r.psi);
    if (r.distance) dist.push_back(*r.distance);
  }
  summary.psi = summarize(std::move(psi));
  summary.distance = summarize(std::move(dist));
  return summary;
}

}  // namespace f2s::game
