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

#include "free2shard/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "free2shard/errors.hpp"

namespace f2s::adversary {

namespace {

AllocationVector uniform(double beta, std::size_t K) {
  return AllocationVector{std::vector<double>(K, beta / static_cast<double>(K)), beta};
}

// Rescale so the entries sum to beta exactly up to rounding.
void normalise(AllocationVector& v, double beta) {
  const double total = v.sum();
  if (total > 0.0) {
    for (double& x : v.values) x *= beta / total;
  }
}

std::vector<std::size_t> lowest_indices(const FractionVector& avg, std::size_t m) {
  std::vector<std::size_t> idx(avg.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return avg[a] < avg[b]; });
  idx.resize(std::min(m, idx.size()));
  return idx;
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::replicate:
      return "replicate";
    case Kind::concentrate:
      return "concentrate";
    case Kind::myopic:
      return "myopic";
    case Kind::escalation:
      return "escalation";
    case Kind::cascade:
      return "cascade";
    case Kind::random:
      return "random";
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  for (Kind k : {Kind::replicate, Kind::concentrate, Kind::myopic, Kind::escalation, Kind::cascade,
                 Kind::random}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

AllocationVector replicate(const AllocationVector& honest, double beta) {
  if (honest.size() == 0) throw DimensionError("replicate: zero shards");
  const double total = honest.sum();
  if (!(total > 0.0)) return uniform(beta, honest.size());
  AllocationVector out{std::vector<double>(honest.size()), beta};
  for (std::size_t i = 0; i < honest.size(); ++i) out.values[i] = beta * honest[i] / total;
  return out;
}

AllocationVector concentrate(std::size_t target, double beta, std::size_t K) {
  if (K == 0) throw DimensionError("concentrate: zero shards");
  if (target >= K) throw ArgumentError("concentrate: target shard out of range");
  AllocationVector out{std::vector<double>(K, 0.0), beta};
  out.values[target] = beta;
  return out;
}

double myopic_objective(const DeficitVector& deficits, std::span<const double> honest,
                        std::span<const double> adversarial) {
  check_dimensions(deficits.size(), honest.size(), "myopic_objective");
  check_dimensions(honest.size(), adversarial.size(), "myopic_objective");
  double obj = 0.0;
  for (std::size_t i = 0; i < honest.size(); ++i) {
    const double total = honest[i] + adversarial[i];
    if (total > 0.0) obj += deficits[i] * honest[i] / total;
  }
  return obj;
}

AllocationVector myopic_optimal(const DeficitVector& deficits, const AllocationVector& honest,
                                double beta) {
  check_dimensions(deficits.size(), honest.size(), "myopic_optimal");
  const std::size_t K = honest.size();

  // Stationarity gives gamma_i + beta_i = mu * sqrt(u_i gamma_i) on the
  // support; beta_i(mu) = (mu w_i - gamma_i)^+ is piecewise linear in mu, so
  // walk the breakpoints gamma_i / w_i in increasing order.
  std::vector<double> w(K);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < K; ++i) {
    w[i] = std::sqrt(std::max(deficits[i], 0.0) * std::max(honest[i], 0.0));
    if (w[i] > 0.0) active.push_back(i);
  }
  if (active.empty() || !(beta > 0.0)) return uniform(beta, K);

  std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
    const double ta = honest[a] / w[a];
    const double tb = honest[b] / w[b];
    if (ta != tb) return ta < tb;
    return a < b;
  });

  double sum_w = 0.0;
  double sum_g = 0.0;
  double mu = 0.0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    sum_w += w[active[k]];
    sum_g += honest[active[k]];
    mu = (beta + sum_g) / sum_w;
    const bool last = k + 1 == active.size();
    if (last || mu <= honest[active[k + 1]] / w[active[k + 1]]) break;
  }

  AllocationVector out{std::vector<double>(K, 0.0), beta};
  for (std::size_t i : active) out.values[i] = std::max(mu * w[i] - honest[i], 0.0);
  normalise(out, beta);
  return out;
}

AdversaryState make_escalation_state(const BudgetParams& p, double ratio, std::size_t target) {
  if (!(ratio > 1.0)) throw ArgumentError("escalation: ratio r must be > 1");
  if (p.K == 0) throw DimensionError("escalation: zero shards");
  if (target >= p.K) throw ArgumentError("escalation: target shard out of range");
  AdversaryState s;
  s.kind = Kind::escalation;
  s.ratio = ratio;
  s.target = target;
  s.floor = p.gamma / (2.0 * static_cast<double>(p.K));
  s.ceiling = p.gamma / 2.0 + s.floor;
  // Guard against log(8)/log(2) landing at 2.9999999999999996.
  s.period_length = static_cast<long long>(
      std::floor(std::log(s.ceiling / s.floor) / std::log(ratio) + 1e-12));
  s.round_in_period = 0;
  return s;
}

std::pair<AllocationVector, AdversaryState> escalation_step(AdversaryState state,
                                                            const BudgetParams& p) {
  if (!(state.ratio > 1.0)) throw ArgumentError("escalation: ratio r must be > 1");
  const double level = state.floor * std::pow(state.ratio, static_cast<double>(state.round_in_period));
  const double a = std::clamp(2.0 * p.beta / p.gamma * (level - state.floor), 0.0, p.beta);

  AllocationVector out{std::vector<double>(p.K, 0.0), p.beta};
  if (p.K == 1) {
    out.values[0] = p.beta;
  } else {
    const double rest = (p.beta - a) / static_cast<double>(p.K - 1);
    for (double& x : out.values) x = rest;
    out.values[state.target] = a;
  }

  state.round_in_period =
      state.round_in_period >= state.period_length ? 0 : state.round_in_period + 1;
  return {std::move(out), state};
}

AdversaryState make_cascade_state(std::size_t K) {
  const double lk = std::log(static_cast<double>(K));
  if (!(lk > 2.0)) throw ArgumentError("cascade: requires K > e^2");
  AdversaryState s;
  s.kind = Kind::cascade;
  s.period_length = static_cast<long long>(std::ceil(lk / std::log(lk)));
  s.round_in_period = 1;
  return s;
}

std::size_t cascade_width(std::size_t K, long long t) {
  const double lk = std::log(static_cast<double>(K));
  const double width = std::floor(static_cast<double>(K) / std::pow(lk, static_cast<double>(t)));
  return width < 1.0 ? 1 : static_cast<std::size_t>(width);
}

std::pair<AllocationVector, AdversaryState> cascade_step(const FractionVector& avg,
                                                         AdversaryState state,
                                                         const BudgetParams& p) {
  if (!(std::log(static_cast<double>(p.K)) > 2.0)) throw ArgumentError("cascade: requires K > e^2");
  check_dimensions(avg.size(), p.K, "cascade_step");
  const std::size_t m = cascade_width(p.K, state.round_in_period);
  AllocationVector out{std::vector<double>(p.K, 0.0), p.beta};
  for (std::size_t i : lowest_indices(avg, m)) out.values[i] = p.beta / static_cast<double>(m);
  state.round_in_period =
      state.round_in_period >= state.period_length ? 1 : state.round_in_period + 1;
  return {std::move(out), state};
}

std::pair<AllocationVector, AdversaryState> cascade_step_nested(const AllocationVector& honest,
                                                                AdversaryState state,
                                                                const BudgetParams& p) {
  if (!(std::log(static_cast<double>(p.K)) > 2.0)) throw ArgumentError("cascade: requires K > e^2");
  check_dimensions(honest.size(), p.K, "cascade_step_nested");
  if (state.round_in_period == 1 || state.focus.empty()) {
    state.focus.resize(p.K);
    std::iota(state.focus.begin(), state.focus.end(), std::size_t{0});
  }
  std::stable_sort(state.focus.begin(), state.focus.end(),
                   [&](std::size_t a, std::size_t b) { return honest[a] < honest[b]; });
  state.focus.resize(std::min(cascade_width(p.K, state.round_in_period), state.focus.size()));
  std::sort(state.focus.begin(), state.focus.end());

  AllocationVector out{std::vector<double>(p.K, 0.0), p.beta};
  for (std::size_t i : state.focus) out.values[i] = p.beta / static_cast<double>(state.focus.size());
  state.round_in_period =
      state.round_in_period >= state.period_length ? 1 : state.round_in_period + 1;
  return {std::move(out), state};
}

AllocationVector random_allocation(double beta, std::size_t K, std::mt19937_64& rng) {
  if (K == 0) throw DimensionError("random_allocation: zero shards");
  std::exponential_distribution<double> exp1(1.0);
  AllocationVector out{std::vector<double>(K), beta};
  for (double& x : out.values) x = exp1(rng);
  normalise(out, beta);
  return out;
}

AdversaryPlayer::AdversaryPlayer(AdversarySpec spec, const BudgetParams& params)
    : spec_(spec), params_(params), rng_(spec.seed) {
  state_.kind = spec_.kind;
  state_.target = spec_.target;
  switch (spec_.kind) {
    case Kind::escalation:
    {
      const double ln_k = std::log(static_cast<double>(params_.K));
      state_ = make_escalation_state(params_, spec_.ratio.value_or(ln_k > 1.0 ? ln_k : 2.0),
                                     spec_.target);
      break;
    }
    case Kind::cascade:
      state_ = make_cascade_state(params_.K);
      break;
    case Kind::concentrate:
      if (spec_.target >= params_.K) throw ArgumentError("concentrate: target shard out of range");
      break;
    default:
      break;
  }
}

AllocationVector AdversaryPlayer::respond(const RoundView& view) {
  switch (spec_.kind) {
    case Kind::replicate:
      return replicate(*view.honest, params_.beta);
    case Kind::concentrate:
      return concentrate(spec_.target, params_.beta, params_.K);
    case Kind::myopic:
      return myopic_optimal(deficit(*view.avg_prev, *view.target), *view.honest, params_.beta);
    case Kind::escalation: {
      auto [alloc, next] = escalation_step(state_, params_);
      state_ = next;
      return alloc;
    }
    case Kind::cascade: {
      auto [alloc, next] = spec_.selection == CascadeSelection::nested_lowest_honest
                               ? cascade_step_nested(*view.honest, std::move(state_), params_)
                               : cascade_step(*view.avg_prev, std::move(state_), params_);
      state_ = std::move(next);
      return alloc;
    }
    case Kind::random:
      return random_allocation(params_.beta, params_.K, rng_);
  }
  throw ArgumentError("AdversaryPlayer: unknown kind");
}

}  // namespace f2s::adversary
