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

// Adversary strategies with budget beta. Every strategy moves after observing
// the honest allocation of the round (Stackelberg order). Stateful strategies
// take their state record by value and return the successor.

#ifndef FREE2SHARD_ADVERSARIES_HPP
#define FREE2SHARD_ADVERSARIES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "free2shard/allocation.hpp"

namespace f2s::adversary {

enum class Kind { replicate, concentrate, myopic, escalation, cascade, random };

/// How the cascade picks its m shards each round.
///  - lowest_average: the m shards with the lowest running average r-bar.
///  - nested_lowest_honest: within the previous round's attacked set (all
///    shards at the start of a period), the m shards with the lowest honest
///    allocation of the current round.
enum class CascadeSelection { lowest_average, nested_lowest_honest };

std::string_view to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view name);

struct AdversaryState {
  Kind kind = Kind::replicate;
  long long round_in_period = 0;
  long long period_length = 1;  // tau
  double ratio = 2.0;           // escalation ratio r
  double floor = 0.0;           // l
  double ceiling = 0.0;         // upper end of the escalation range
  std::size_t target = 0;
  std::vector<std::size_t> focus;  // nested cascade: shards attacked last round
};

struct BudgetParams {
  double gamma = 0.5;
  double beta = 0.5;
  std::size_t K = 1;
};

/// beta_i = beta * gamma_i / sum(gamma); uniform when the honest side is empty.
AllocationVector replicate(const AllocationVector& honest, double beta);

AllocationVector concentrate(std::size_t target, double beta, std::size_t K);

/// Minimiser of sum_i u_i gamma_i / (gamma_i + beta_i) subject to
/// sum(beta) = beta, beta >= 0 (water-filling on the KKT multiplier).
AllocationVector myopic_optimal(const DeficitVector& deficits, const AllocationVector& honest,
                                double beta);

/// sum_i u_i gamma_i / (gamma_i + beta_i) with the 0/0 -> 0 rule.
double myopic_objective(const DeficitVector& deficits, std::span<const double> honest,
                        std::span<const double> adversarial);

/// Escalation against simple_dynamic: floor l = gamma/(2K), ceiling
/// gamma/2 + gamma/(2K), tau = floor(log_r(ceiling / floor)).
AdversaryState make_escalation_state(const BudgetParams& p, double ratio, std::size_t target);

std::pair<AllocationVector, AdversaryState> escalation_step(AdversaryState state,
                                                            const BudgetParams& p);

/// Period length ceil(ln K / ln ln K); requires K > e^2.
AdversaryState make_cascade_state(std::size_t K);

/// Number of shards attacked in round t (1-based) of a cascade period.
std::size_t cascade_width(std::size_t K, long long t);

std::pair<AllocationVector, AdversaryState> cascade_step(const FractionVector& avg,
                                                         AdversaryState state,
                                                         const BudgetParams& p);

std::pair<AllocationVector, AdversaryState> cascade_step_nested(const AllocationVector& honest,
                                                                AdversaryState state,
                                                                const BudgetParams& p);

/// Uniform draw from the simplex scaled to beta.
AllocationVector random_allocation(double beta, std::size_t K, std::mt19937_64& rng);

struct AdversarySpec {
  Kind kind = Kind::replicate;
  std::size_t target = 0;        // concentrate, escalation
  std::optional<double> ratio;   // escalation; defaults to ln K (2 when ln K <= 1)
  CascadeSelection selection = CascadeSelection::lowest_average;
  std::uint64_t seed = 0;        // random
};

/// What the adversary sees before moving in round t.
struct RoundView {
  long long t = 1;
  const AllocationVector* honest = nullptr;  // mean or realised honest allocation
  const FractionVector* avg_prev = nullptr;  // running average through t-1
  const TargetSet* target = nullptr;         // the honest policy's target box
};

/// Owns the per-run state of one adversary.
class AdversaryPlayer {
 public:
  AdversaryPlayer(AdversarySpec spec, const BudgetParams& params);

  AllocationVector respond(const RoundView& view);

  const AdversarySpec& spec() const { return spec_; }
  const AdversaryState& state() const { return state_; }

 private:
  AdversarySpec spec_;
  BudgetParams params_;
  AdversaryState state_;
  std::mt19937_64 rng_;
};

}  // namespace f2s::adversary

#endif  // FREE2SHARD_ADVERSARIES_HPP
