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
#include <random>

#include <gtest/gtest.h>

#include "free2shard/adversaries.hpp"
#include "free2shard/errors.hpp"
#include "free2shard/experiment/oracles.hpp"

namespace f2s::policy {
namespace {

PolicyParams params(std::size_t K, double gamma = 0.5) {
  PolicyParams p;
  p.K = K;
  p.gamma = gamma;
  p.beta = 1.0 - gamma;
  return p;
}

PolicyParams dist_params(std::size_t K, std::size_t s, double q, double h) {
  PolicyParams p = params(K);
  p.s = s;
  p.q = q;
  p.h = h;
  return p;
}

double sum(const AllocationVector& v) { return v.sum(); }

TEST(StaticUniform, Examples) {
  for (double x : static_uniform(params(4)).values) {
    EXPECT_DOUBLE_EQ(x, 0.125);
  }
  EXPECT_EQ(static_uniform(params(1)).values, std::vector<double>{0.5});
  const AllocationVector v = static_uniform(params(100));
  ASSERT_EQ(v.size(), 100u);
  for (double x : v.values) {
    EXPECT_DOUBLE_EQ(x, 0.005);
  }
}

TEST(SimpleDynamic, Examples) {
  const AllocationVector a = simple_dynamic(AllocationVector{{0.5, 0.0}, 0.5}, params(2));
  EXPECT_DOUBLE_EQ(a[0], 0.375);
  EXPECT_DOUBLE_EQ(a[1], 0.125);

  const AllocationVector b = simple_dynamic(AllocationVector{{0.125, 0.125, 0.125, 0.125}, 0.5}, params(4));
  for (double x : b.values) {
    EXPECT_DOUBLE_EQ(x, 0.125);
  }

  const AllocationVector c = simple_dynamic(AllocationVector{{0, 0, 0, 0.5}, 0.5}, params(4));
  EXPECT_EQ(c.values, (std::vector<double>{0.0625, 0.0625, 0.0625, 0.3125}));
}

TEST(SimpleDynamic, PartialBudgetScalesTotal) {
  const AllocationVector v = simple_dynamic(AllocationVector{{0.25, 0.0}, 0.5}, params(2));
  EXPECT_NEAR(sum(v), 0.25 * 0.5 + 0.25, 1e-15);
}

TEST(SimpleDynamic, ZeroBetaThrows) {
  PolicyParams p = params(2);
  p.gamma = 1.0;
  p.beta = 0.0;
  EXPECT_THROW(simple_dynamic(AllocationVector{{0.0, 0.0}, 0.0}, p), ArgumentError);
}

TEST(F2s, Examples) {
  EXPECT_EQ(f2s(FractionVector({0.2, 0.6}), params(2)).values, (std::vector<double>{0.5, 0.0}));
  EXPECT_EQ(f2s(FractionVector({0.6, 0.7}), params(2)).values, (std::vector<double>{0.25, 0.25}));
  EXPECT_EQ(f2s(FractionVector({0.0, 0.0}), params(2)).values, (std::vector<double>{0.25, 0.25}));
}

TEST(F2s, HeterogeneousTargetsReplaceGamma) {
  PolicyParams p = params(2);
  p.targets = {0.4, 0.1};
  const AllocationVector v = f2s(FractionVector({0.0, 0.0}), p);
  EXPECT_DOUBLE_EQ(v[0], 0.4);
  EXPECT_DOUBLE_EQ(v[1], 0.1);
}

TEST(F2sDist, DirectEvaluation) {
  const AllocationVector v = f2s_dist(FractionVector({0.0, 0.1, 0.25, 0.4}), dist_params(4, 2, 0.1, 0.3));
  EXPECT_NEAR(v[0], 0.25, 1e-15);
  EXPECT_NEAR(v[1], 0.2 / 1.2, 1e-15);
  EXPECT_EQ(v[2], 0.0);
  EXPECT_EQ(v[3], 0.0);
}

TEST(F2sDist, FloorClampBinds) {
  // u = 0.49, 0.01 on the two focus shards; the second is raised to q/s.
  const AllocationVector v =
      f2s_dist(FractionVector({0.01, 0.49, 0.9, 0.95}), dist_params(4, 2, 0.1, 0.5));
  EXPECT_NEAR(v[0], 0.49 / 1.2, 1e-15);
  EXPECT_NEAR(v[1], 0.05 / 1.2, 1e-15);
  EXPECT_EQ(v[2], 0.0);
  EXPECT_EQ(v[3], 0.0);
}

TEST(F2sDist, AllAboveTargetFallsBackToLowestIndices) {
  const AllocationVector v = f2s_dist(FractionVector({0.9, 0.8, 0.7, 0.6}), dist_params(4, 3, 0.1, 0.3));
  const double each = 0.5 / (3 * 1.2);
  EXPECT_NEAR(v[0], each, 1e-15);
  EXPECT_NEAR(v[1], each, 1e-15);
  EXPECT_NEAR(v[2], each, 1e-15);
  EXPECT_EQ(v[3], 0.0);
}

TEST(F2sDist, TopSTiesBreakByIndex) {
  EXPECT_EQ(top_s_indices({0.2, 0.3, 0.3, 0.2}, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(top_s_indices({0.1, 0.1, 0.1}, 2), (std::vector<std::size_t>{0, 1}));
}

TEST(F2sDist, RejectsInvalidParameters) {
  EXPECT_THROW(f2s_dist(FractionVector({0.0, 0.0}), dist_params(2, 3, 0.1, 0.3)), ParameterError);
  EXPECT_THROW(f2s_dist(FractionVector({0.0, 0.0}), dist_params(2, 1, 0.0, 0.3)), ParameterError);
  PolicyParams bad_c = dist_params(2, 1, 0.1, 0.3);
  bad_c.c = 1.0;
  EXPECT_THROW(f2s_dist(FractionVector({0.0, 0.0}), bad_c), ParameterError);
}

TEST(ComputeH, DirectEvaluation) {
  PolicyParams p = params(100);
  p.s = 5;
  p.n = 5000;
  p.q = 0.1;
  p.c = 0.5;
  const double bracket = -0.5 + 0.5 * std::log(0.5) + 1.0;
  const double expected = (1.0 - 5.0 * std::exp(-5000.0 * (0.1 / (1.2 * 5.0)) * bracket)) *
                          (0.5 * 5.0 / (100.0 * 0.8)) * 0.5;
  EXPECT_NEAR(compute_h(p), expected, 1e-15);
  EXPECT_NEAR(compute_h(p), 0.0156246, 1e-6);
}

TEST(ComputeH, NegativeBracketIsRejected) {
  PolicyParams p = params(100);
  p.s = 100;
  p.n = 500;
  p.q = 0.1;
  p.c = 0.5;
  EXPECT_THROW(compute_h(p), ParameterError);
}

TEST(ComputeH, CNearOneIsRejected) {
  PolicyParams p = params(100);
  p.s = 5;
  p.n = 5000;
  p.q = 0.1;
  p.c = 1.0 - 1e-12;
  EXPECT_THROW(compute_h(p), ParameterError);
}

TEST(ComputeH, ErrorNamesTheBound) {
  PolicyParams p = params(100);
  p.s = 100;
  p.n = 500;
  try {
    compute_h(p);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("violated bound n >="), std::string::npos);
  }
}

TEST(PolicyNames, RoundTrip) {
  for (Kind k : {Kind::static_uniform, Kind::simple_dynamic, Kind::f2s, Kind::f2s_dist}) {
    EXPECT_EQ(kind_from_string(to_string(k)), k);
  }
  EXPECT_FALSE(kind_from_string("greedy").has_value());
}

class PolicyProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{42};
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  FractionVector random_avg(std::size_t K) {
    std::vector<double> v(K);
    for (double& x : v) x = unit(rng);
    return FractionVector(v);
  }
};

TEST_F(PolicyProperties, FullBudgetPoliciesSumToGamma) {
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t K = 1 + rng() % 20;
    const PolicyParams p = params(K, 0.1 + 0.8 * unit(rng));
    EXPECT_NEAR(sum(static_uniform(p)), p.gamma, 1e-12);
    EXPECT_NEAR(sum(f2s(random_avg(K), p)), p.gamma, 1e-12);
    std::vector<double> b(K);
    double total = 0.0;
    for (double& x : b) total += (x = unit(rng));
    for (double& x : b) x *= p.beta / total;
    EXPECT_NEAR(sum(simple_dynamic(AllocationVector{b, p.beta}, p)), p.gamma, 1e-12);
  }
}

TEST_F(PolicyProperties, DistSupportBudgetAndFloor) {
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t K = 1 + rng() % 20;
    const std::size_t s = 1 + rng() % K;
    const double q = 0.01 + 0.4 * unit(rng);
    const PolicyParams p = dist_params(K, s, q, 0.05 + 0.9 * unit(rng));
    const AllocationVector v = f2s_dist(random_avg(K), p);
    const double scale = 1.0 / (1.0 + q / p.gamma);
    EXPECT_LE(sum(v), p.gamma + 1e-12);
    EXPECT_GE(sum(v), p.gamma * scale - 1e-12);
    EXPECT_EQ(static_cast<std::size_t>(std::count(v.values.begin(), v.values.end(), 0.0)), K - s);
    for (double x : v.values) {
      if (x != 0.0) {
        EXPECT_GE(x, (q / static_cast<double>(s)) * scale - 1e-12);
      }
    }
  }
}

TEST_F(PolicyProperties, SelectionIsScaleInvariant) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t K = 2 + rng() % 10;
    std::vector<double> u(K);
    for (double& x : u) x = unit(rng) < 0.3 ? 0.0 : unit(rng);
    const double c = 0.01 + 10.0 * unit(rng);
    std::vector<double> scaled = u;
    for (double& x : scaled) x *= c;
    const std::size_t s = 1 + rng() % K;
    EXPECT_EQ(top_s_indices(u, s), top_s_indices(scaled, s));
  }
}

TEST_F(PolicyProperties, F2sSelectionIsScaleInvariant) {
  // Scaling the deficits by c corresponds to target gamma and averages
  // gamma - c (gamma - rbar); the support of the allocation must not move.
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t K = 2 + rng() % 10;
    const PolicyParams p = params(K);
    const FractionVector avg = random_avg(K);
    const double c = 0.1 + 0.9 * unit(rng);
    std::vector<double> shifted(K);
    for (std::size_t i = 0; i < K; ++i) shifted[i] = p.gamma - c * (p.gamma - avg[i]);
    const AllocationVector a = f2s(avg, p);
    const AllocationVector b = f2s(FractionVector(shifted), p);
    for (std::size_t i = 0; i < K; ++i) {
      EXPECT_EQ(a[i] > 0.0, b[i] > 0.0) << "shard " << i;
    }
  }
}

TEST_F(PolicyProperties, F2sStrategySpaceInequality) {
  int done = 0;
  while (done < 200) {
    const std::size_t K = 2 + rng() % 5;
    const PolicyParams p = params(K, 0.1 + 0.8 * unit(rng));
    const FractionVector avg = random_avg(K);
    const DeficitVector u = deficit(avg, p.gamma);
    if (!(u.sum() > 0.0)) continue;
    const AllocationVector honest = f2s(avg, p);
    const AllocationVector best = adversary::myopic_optimal(u, honest, p.beta);
    const double value = adversary::myopic_objective(u, honest.values, best.values);
    EXPECT_GE(value, p.gamma * u.sum() - 1e-9);
    EXPECT_NEAR(value, experiment::oracle::grid_minimum(u.values, honest.values, p.beta).value, 1e-6);
    ++done;
  }
}

}  // namespace
}  // namespace f2s::policy
