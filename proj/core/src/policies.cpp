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

#include "free2shard/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "free2shard/errors.hpp"

namespace f2s::policy {

namespace {

double binomial_tail_exponent(double c) { return 1.0 - c + c * std::log(c); }

void check_common(const PolicyParams& p) {
  if (p.K == 0) throw ArgumentError("policy: K must be >= 1");
  if (!(p.gamma > 0.0 && p.gamma <= 1.0)) throw ArgumentError("policy: gamma must lie in (0,1]");
}

std::vector<double> target_lowers(const PolicyParams& p, double homogeneous_target) {
  if (!p.targets.empty()) {
    check_dimensions(p.targets.size(), p.K, "policy targets");
    return p.targets;
  }
  return std::vector<double>(p.K, homogeneous_target);
}

std::vector<double> deficits_for(const FractionVector& avg, const std::vector<double>& lowers) {
  check_dimensions(avg.size(), lowers.size(), "policy deficits");
  std::vector<double> u(avg.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::max(lowers[i] - avg[i], 0.0);
  return u;
}

}  // namespace

void validate_dist_params(const PolicyParams& p) {
  check_common(p);
  if (!(p.q > 0.0)) throw ParameterError("f2s-dist: q must be > 0");
  const double b = p.b();
  if (!(b > 0.0 && b < 0.5)) throw ParameterError("f2s-dist: b = q/(1+2q) must lie in (0, 1/2)");
  if (p.s < 1 || p.s > p.K) throw ParameterError("f2s-dist: s must satisfy 1 <= s <= K");
  if (!(p.c > 0.0 && p.c < 1.0)) throw ParameterError("f2s-dist: c must lie in (0,1)");
  if (p.h && !(*p.h > 0.0 && *p.h <= 1.0)) throw ParameterError("f2s-dist: h must lie in (0,1]");
}

double compute_h(const PolicyParams& p) {
  validate_dist_params(p);
  if (p.n < 1) throw ParameterError("compute_h: honest node count n must be >= 1");
  const double s = static_cast<double>(p.s);
  const double n = static_cast<double>(p.n);
  const double tail = binomial_tail_exponent(p.c);
  const double bracket = 1.0 - s * std::exp(-n * (p.q / ((1.0 + 2.0 * p.q) * s)) * tail);
  const double scale = p.c * s / (static_cast<double>(p.K) * (1.0 - 2.0 * p.q)) * p.gamma;
  const double h = bracket * scale;
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg << "compute_h: h = " << h << " <= 0; ";
    if (!(scale > 0.0)) {
      msg << "requires q < 1/2 (got q = " << p.q << ")";
    } else {
      // Smallest n for which s * exp(...) < 1.
      const double n_min = s * std::log(s) / (p.b() * tail);
      msg << "violated bound n >= s ln(s) / (b (1 - c + c ln c)) = " << n_min << " (got n = " << p.n
          << ", s = " << p.s << ")";
    }
    throw ParameterError(msg.str());
  }
  return h;
}

double dist_target(const PolicyParams& p) { return p.h ? *p.h : compute_h(p); }

AllocationVector static_uniform(const PolicyParams& p) {
  check_common(p);
  return AllocationVector{std::vector<double>(p.K, p.gamma / static_cast<double>(p.K)), p.gamma};
}

AllocationVector simple_dynamic(const AllocationVector& beta_prev, const PolicyParams& p) {
  check_common(p);
  check_dimensions(beta_prev.size(), p.K, "simple_dynamic");
  if (!(p.beta > 0.0)) throw ArgumentError("simple_dynamic: undefined for beta = 0");
  const double follow = p.gamma / (2.0 * p.beta);
  const double spread = p.gamma / (2.0 * static_cast<double>(p.K));
  AllocationVector out{std::vector<double>(p.K), p.gamma};
  for (std::size_t i = 0; i < p.K; ++i) out.values[i] = follow * beta_prev[i] + spread;
  return out;
}

AllocationVector f2s(const FractionVector& avg_prev, const PolicyParams& p) {
  check_common(p);
  const std::vector<double> u = deficits_for(avg_prev, target_lowers(p, p.gamma));
  const double total = std::accumulate(u.begin(), u.end(), 0.0);
  if (!(total > 0.0)) return static_uniform(p);
  AllocationVector out{std::vector<double>(p.K), p.gamma};
  for (std::size_t i = 0; i < p.K; ++i) out.values[i] = p.gamma * u[i] / total;
  return out;
}

std::vector<std::size_t> top_s_indices(const std::vector<double>& deficits, std::size_t s) {
  std::vector<std::size_t> idx(deficits.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  s = std::min(s, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (deficits[a] != deficits[b]) return deficits[a] > deficits[b];
                      return a < b;
                    });
  idx.resize(s);
  return idx;
}

AllocationVector f2s_dist(const FractionVector& avg_prev, const PolicyParams& p) {
  validate_dist_params(p);
  const double scale = 1.0 / (1.0 + p.q / p.gamma);
  const double floor = p.q / static_cast<double>(p.s);

  // (1) deficits against h (or the per-shard targets).
  const std::vector<double> lowers =
      p.targets.empty() ? std::vector<double>(p.K, dist_target(p)) : target_lowers(p, 0.0);
  const std::vector<double> u = deficits_for(avg_prev, lowers);

  // (2) keep the s largest.
  const std::vector<std::size_t> selected = top_s_indices(u, p.s);
  double kept = 0.0;
  for (std::size_t i : selected) kept += u[i];

  AllocationVector out{std::vector<double>(p.K, 0.0), p.gamma};
  if (!(kept > 0.0)) {
    // (3) nobody lags: uniform over the s lowest-index shards.
    const double each = p.gamma / static_cast<double>(p.s) * scale;
    for (std::size_t i = 0; i < p.s; ++i) out.values[i] = each;
    return out;
  }
  for (std::size_t i : selected) {
    // (3)-(5): proportional share, floor at q/s on the focus set, rescale.
    const double share = p.gamma * u[i] / kept;
    out.values[i] = std::clamp(share, floor, 1.0) * scale;
  }
  return out;
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::static_uniform:
      return "static-uniform";
    case Kind::simple_dynamic:
      return "simple-dynamic";
    case Kind::f2s:
      return "f2s";
    case Kind::f2s_dist:
      return "f2s-dist";
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  for (Kind k : {Kind::static_uniform, Kind::simple_dynamic, Kind::f2s, Kind::f2s_dist}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

TargetSet policy_target(const PolicySpec& spec) {
  const PolicyParams& p = spec.params;
  if (!p.targets.empty()) return TargetSet(p.targets);
  if (spec.kind == Kind::f2s_dist) return TargetSet(dist_target(p), p.K);
  return TargetSet(p.gamma, p.K);
}

AllocationVector allocate(const PolicySpec& spec, const FractionVector& avg_prev,
                          const AllocationVector& beta_prev) {
  switch (spec.kind) {
    case Kind::static_uniform:
      return static_uniform(spec.params);
    case Kind::simple_dynamic:
      return simple_dynamic(beta_prev, spec.params);
    case Kind::f2s:
      return f2s(avg_prev, spec.params);
    case Kind::f2s_dist:
      return f2s_dist(avg_prev, spec.params);
  }
  throw ArgumentError("allocate: unknown policy kind");
}

}  // namespace f2s::policy
