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

#include "free2shard/experiment/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "free2shard/experiment/oracles.hpp"
#include "free2shard/game.hpp"
#include "free2shard/protocol/availability.hpp"
#include "free2shard/protocol/bisection.hpp"
#include "free2shard/protocol/erasure.hpp"
#include "free2shard/protocol/world.hpp"
#include "free2shard/resources.hpp"

namespace f2s::experiment {

bool Check::passed() const {
  if (std::isnan(measured) || std::isnan(bound)) return false;
  switch (relation) {
    case Relation::at_most: return measured <= bound;
    case Relation::at_least: return measured >= bound;
    case Relation::less_than: return measured < bound;
  }
  return false;
}

double Check::margin() const { return relation == Relation::at_least ? measured - bound : bound - measured; }

Check at_most(std::string name, std::string reference, double measured, double bound, std::string note) {
  return {std::move(name), std::move(reference), measured, bound, Relation::at_most, std::move(note)};
}

Check at_least(std::string name, std::string reference, double measured, double bound, std::string note) {
  return {std::move(name), std::move(reference), measured, bound, Relation::at_least, std::move(note)};
}

Check less_than(std::string name, std::string reference, double measured, double bound, std::string note) {
  return {std::move(name), std::move(reference), measured, bound, Relation::less_than, std::move(note)};
}

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed(); }));
}

namespace {

using game::GameConfig;
using game::Mode;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string with_k(const std::string& s, std::size_t K) { return s + " K=" + std::to_string(K); }

GameConfig mean_field(std::size_t K, long long T, policy::Kind pol, adversary::Kind adv) {
  GameConfig c;
  c.K = K;
  c.T = T;
  c.gamma = 0.5;
  c.beta = 0.5;
  c.mode = Mode::mean_field;
  c.policy.kind = pol;
  c.adversary.kind = adv;
  c.record_shards = false;
  return c;
}

// Adversaries applicable at K; cascade needs ln K > 2.
std::vector<std::pair<std::string, adversary::AdversarySpec>> adversary_family(std::size_t K) {
  std::vector<std::pair<std::string, adversary::AdversarySpec>> out;
  for (adversary::Kind k : {adversary::Kind::replicate, adversary::Kind::concentrate, adversary::Kind::myopic,
                            adversary::Kind::escalation}) {
    adversary::AdversarySpec s;
    s.kind = k;
    out.emplace_back(std::string(adversary::to_string(k)), s);
  }
  if (std::log(static_cast<double>(K)) > 2.0) {
    adversary::AdversarySpec s;
    s.kind = adversary::Kind::cascade;
    out.emplace_back("cascade", s);
    s.selection = adversary::CascadeSelection::nested_lowest_honest;
    out.emplace_back("cascade-nested", s);
  }
  return out;
}

// ---------------------------------------------------------------- criterion 1

std::vector<Check> throttling() {
  GameConfig c = mean_field(100, 100, policy::Kind::static_uniform, adversary::Kind::concentrate);
  const game::GameTrace trace = game::run(c);
  const double expected = 1.0 / 101.0;
  const double psi = trace.final_psi().value_or(std::nan(""));
  return {at_most("psi(T) - 1/(K+1) K=100", "static uniform vs concentrated attack: psi = 1/(K+1)",
                  std::abs(psi - expected), 1e-12, "psi=" + fmt("%.15f", psi))};
}

// ---------------------------------------------------------------- criterion 2

std::vector<Check> simple_dynamic() {
  std::vector<Check> checks;
  for (std::size_t K : {16, 64, 256, 1024}) {
    GameConfig c = game::validated(mean_field(K, 20000, policy::Kind::simple_dynamic, adversary::Kind::escalation));
    const double r = std::log(static_cast<double>(K));
    const adversary::AdversaryState esc = adversary::make_escalation_state({c.gamma, c.beta, K}, r, 0);
    const long long P = esc.period_length + 1;
    const long long last = (c.T / P) * P;
    game::GameState st(c);
    double sum = 0.0;
    long long n = 0;
    for (long long t = 1; t <= c.T; ++t) {
      st = game::step_mean_field(std::move(st), c);
      if (t > P && t <= last) {
        sum += st.fraction[0];
        ++n;
      }
    }
    const double psi = worst_shard_metric(st.average);
    const double floor = 0.14 / std::log2(3.0 * static_cast<double>(K));
    checks.push_back(at_least(with_k("long-run psi", K), "simple dynamic lower bound 0.14/log2(3K) (g = 1/4)", psi,
                              floor));
    const double closed = oracle::escalation_closed_form(static_cast<double>(K), r);
    const double measured = sum / static_cast<double>(n);
    checks.push_back(at_most(with_k("escalation period average - closed form", K),
                             "escalation adversary period average of the target shard", std::abs(measured - closed),
                             1e-9,
                             "measured=" + fmt("%.6f", measured) + " closed=" + fmt("%.6f", closed) +
                                 " tau=" + std::to_string(esc.period_length)));
  }
  return checks;
}

// ---------------------------------------------------------------- criterion 3

struct DistanceResult {
  double worst_ratio = 0.0;  // max_t d_t / (gamma sqrt(K/t))
  long long violations = 0;
  double psi = 0.0;
};

DistanceResult distance_run(const GameConfig& c) {
  const game::GameTrace trace = game::run(c);
  DistanceResult out;
  for (const game::RoundSummary& r : trace.rounds) {
    const double bound = c.gamma * std::sqrt(static_cast<double>(c.K) / static_cast<double>(r.t));
    if (r.distance > bound) ++out.violations;
    out.worst_ratio = std::max(out.worst_ratio, r.distance / bound);
  }
  out.psi = trace.final_psi().value_or(std::nan(""));
  return out;
}

std::vector<Check> f2s_distance_bound() {
  std::vector<Check> checks;
  constexpr long long T = 10000;
  for (std::size_t K : {2, 10, 100}) {
    std::vector<std::pair<std::string, GameConfig>> runs;
    for (const auto& [name, spec] : adversary_family(K)) {
      GameConfig c = mean_field(K, T, policy::Kind::f2s, spec.kind);
      c.adversary = spec;
      runs.emplace_back(name, c);
    }
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      GameConfig c = mean_field(K, T, policy::Kind::f2s, adversary::Kind::random);
      c.adversary.seed = seed;
      c.seed = seed;
      runs.emplace_back("random#" + std::to_string(seed), c);
    }
    long long violations = 0;
    double worst_ratio = 0.0;
    double min_psi = std::numeric_limits<double>::infinity();
    std::string worst_run;
    std::string min_run;
    for (const auto& [name, c] : runs) {
      const DistanceResult r = distance_run(c);
      violations += r.violations;
      if (r.worst_ratio > worst_ratio) {
        worst_ratio = r.worst_ratio;
        worst_run = name;
      }
      if (r.psi < min_psi) {
        min_psi = r.psi;
        min_run = name;
      }
    }
    const std::string runs_note = std::to_string(runs.size()) + " runs";
    checks.push_back(at_most(with_k("rounds with d_t > gamma sqrt(K/t)", K), "F2S approachability rate",
                             static_cast<double>(violations), 0.0,
                             runs_note + ", max d_t/bound=" + fmt("%.6f", worst_ratio) + " (" + worst_run + ")"));
    const double floor = 0.5 * (1.0 - std::sqrt(static_cast<double>(K) / static_cast<double>(T)));
    checks.push_back(at_least(with_k("min psi(T)", K), "F2S worst-shard guarantee gamma (1 - sqrt(K/T))", min_psi,
                              floor, runs_note + ", worst " + min_run));
  }
  return checks;
}

// ---------------------------------------------------------------- criterion 4

std::vector<Check> ceilings(unsigned workers) {
  std::vector<Check> checks;
  // psi is the worst case over adversaries, so the ceiling applies to the
  // minimum over the family; replicate alone already attains it.
  double worst_case_max = 0.0;
  double replicate_max = 0.0;
  double single_run_max = 0.0;
  std::string argmax;
  std::string single_argmax;
  std::size_t count = 0;
  for (std::size_t K : {10, 100}) {
    for (policy::Kind pol : {policy::Kind::static_uniform, policy::Kind::simple_dynamic, policy::Kind::f2s,
                             policy::Kind::f2s_dist}) {
      auto family = adversary_family(K);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        adversary::AdversarySpec s;
        s.kind = adversary::Kind::random;
        s.seed = seed;
        family.emplace_back("random#" + std::to_string(seed), s);
      }
      const std::string label = std::string(policy::to_string(pol)) + " K=" + std::to_string(K);
      double worst_case = std::numeric_limits<double>::infinity();
      for (const auto& [name, spec] : family) {
        GameConfig c = mean_field(K, 2000, pol, spec.kind);
        c.adversary = spec;
        if (pol == policy::Kind::f2s_dist) {
          c.policy.params.h = c.gamma;
          c.policy.params.s = K;
        }
        const double psi = game::run(c).final_psi().value_or(std::nan(""));
        ++count;
        worst_case = std::min(worst_case, psi);
        if (spec.kind == adversary::Kind::replicate) replicate_max = std::max(replicate_max, psi);
        if (psi > single_run_max) {
          single_run_max = psi;
          single_argmax = label + " vs " + name;
        }
      }
      if (worst_case > worst_case_max) {
        worst_case_max = worst_case;
        argmax = label;
      }
    }
  }
  checks.push_back(at_most("max over policies of worst-case mean-field psi(T)",
                           "information-theoretic ceiling psi <= gamma", worst_case_max, 0.5 + 1e-12,
                           std::to_string(count) + " runs, max at " + argmax + "; largest single run " +
                               fmt("%.4f", single_run_max) + " (" + single_argmax + ")"));
  checks.push_back(at_most("max psi(T) against replicate", "replicating adversary holds every shard at or below gamma",
                           replicate_max, 0.5 + 1e-12));

  std::vector<std::uint64_t> seeds(20);
  std::iota(seeds.begin(), seeds.end(), 1);
  const double ceiling = 0.5 * 10.0 / 100.0 + 0.02;
  for (policy::Kind pol : {policy::Kind::f2s, policy::Kind::f2s_dist}) {
    for (adversary::Kind adv : {adversary::Kind::cascade, adversary::Kind::replicate}) {
      GameConfig c = mean_field(100, 2000, pol, adv);
      c.mode = Mode::stochastic;
      c.N = 10;
      if (pol == policy::Kind::f2s_dist) {
        c.policy.params.h = 0.05;
        c.policy.params.q = 0.02;
        c.policy.params.s = 100;
      }
      const game::BatchSummary b = game::run_batch(c, seeds, workers);
      checks.push_back(at_most("max stochastic psi(T) " + std::string(policy::to_string(pol)) + " vs " +
                                   std::string(adversary::to_string(adv)),
                               "few-nodes ceiling gamma N / K + 0.02 (K=100, N=10)", b.psi.max, ceiling,
                               "20 seeds, mean=" + fmt("%.4f", b.psi.mean)));
    }
  }
  return checks;
}

// ---------------------------------------------------------------- criterion 5

std::vector<Check> ssi() {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kInstances = 200;

  double worst_plain = std::numeric_limits<double>::infinity();
  double worst_modified = std::numeric_limits<double>::infinity();
  double worst_gap = 0.0;
  int done = 0;
  int modified_done = 0;
  while (done < kInstances) {
    const std::size_t K = 2 + static_cast<std::size_t>(rng() % 5);
    policy::PolicyParams p;
    p.K = K;
    p.gamma = 0.1 + 0.8 * unit(rng);
    p.beta = 1.0 - p.gamma;
    std::vector<double> avg(K);
    for (double& a : avg) a = unit(rng);
    const FractionVector avg_prev(avg);

    // Plain: F2S proportional allocation, deficits against gamma.
    const DeficitVector u = deficit(avg_prev, p.gamma);
    if (!(u.sum() > 0.0)) continue;
    const AllocationVector honest = policy::f2s(avg_prev, p);
    const AllocationVector best = adversary::myopic_optimal(u, honest, p.beta);
    const double closed = adversary::myopic_objective(u, honest.values, best.values);
    const double grid = oracle::grid_minimum(u.values, honest.values, p.beta).value;
    worst_plain = std::min(worst_plain, closed - p.gamma * u.sum());
    worst_gap = std::max(worst_gap, std::abs(closed - grid));

    // Modified: F2S-dist with a focus set of s shards and the q/s floor.
    // The (1 - 2b) factor needs gamma >= 1/2.
    if (p.gamma >= 0.5) {
      policy::PolicyParams d = p;
      d.s = 1 + static_cast<std::size_t>(rng() % K);
      d.q = 0.01 + 0.49 * unit(rng);
      d.h = 0.2 + 0.7 * unit(rng);
      const DeficitVector ud = deficit(avg_prev, *d.h);
      if (ud.sum() > 0.0) {
        const AllocationVector hd = policy::f2s_dist(avg_prev, d);
        const AllocationVector bd = adversary::myopic_optimal(ud, hd, d.beta);
        const double value = adversary::myopic_objective(ud, hd.values, bd.values);
        const double rhs = static_cast<double>(d.s) / static_cast<double>(K) * d.gamma * (1.0 - 2.0 * d.b()) * ud.sum();
        worst_modified = std::min(worst_modified, value - rhs);
        worst_gap = std::max(worst_gap, std::abs(value - oracle::grid_minimum(ud.values, hd.values, d.beta).value));
        ++modified_done;
      }
    }
    ++done;
  }
  return {
      at_least("min over instances of objective - gamma sum(u)", "strategy-space inequality (s = K)", worst_plain,
               -1e-9, std::to_string(done) + " instances, K in 2..6"),
      at_least("min over instances of objective - (s/K) gamma (1-2b) sum(u)",
               "modified strategy-space inequality (q/s floor)", worst_modified, -1e-9,
               std::to_string(modified_done) + " instances"),
      at_most("max |closed-form minimum - grid oracle|", "myopic best response vs 1e-4 grid oracle", worst_gap, 1e-6),
  };
}

// ---------------------------------------------------------------- criterion 6

std::vector<Check> dist_experiment(unsigned workers) {
  std::vector<std::uint64_t> seeds(20);
  std::iota(seeds.begin(), seeds.end(), 1);
  std::vector<Check> checks;

  GameConfig large = mean_field(100, 5000, policy::Kind::f2s_dist, adversary::Kind::cascade);
  large.mode = Mode::stochastic;
  large.N = 1000;
  large.policy.params.h = 0.5;
  large.policy.params.q = 0.05;
  large.policy.params.s = 100;
  const game::BatchSummary a = game::run_batch(large, seeds, workers);
  checks.push_back(at_least("mean psi(T) N=1000 K=100", "F2S-dist homogeneous experiment, N > K", a.psi.mean, 0.40,
                            "20 seeds, T=5000"));
  checks.push_back(at_least("min-seed psi(T) N=1000 K=100", "F2S-dist homogeneous experiment, N > K", a.psi.min, 0.35));

  GameConfig small = large;
  small.N = 10;
  small.policy.params.h = 0.05;
  small.policy.params.q = 0.02;
  const game::BatchSummary b = game::run_batch(small, seeds, workers);
  checks.push_back(at_least("mean psi(T) N=10 K=100 target 0.05", "F2S-dist homogeneous experiment, N < K",
                            b.psi.mean, 0.035, "20 seeds, min=" + fmt("%.4f", b.psi.min)));
  return checks;
}

// ---------------------------------------------------------------- criterion 7

std::vector<Check> cascade() {
  constexpr std::size_t K = 256;
  GameConfig c = mean_field(K, 0, policy::Kind::f2s, adversary::Kind::cascade);
  c.adversary.selection = adversary::CascadeSelection::nested_lowest_honest;
  const long long tau = adversary::make_cascade_state(K).period_length;
  c.T = 12 * tau;
  c = game::validated(c);
  const double bound = 2.0 * (1.0 - c.beta) * std::log(static_cast<double>(K)) / static_cast<double>(K);

  game::GameState st(c);
  double worst = 0.0;
  double first_period = 0.0;
  for (long long t = 1; t <= c.T; ++t) {
    st = game::step_mean_field(std::move(st), c);
    const double low = *std::min_element(st.fraction.values.begin(), st.fraction.values.end());
    if (t <= tau) first_period = std::max(first_period, low);
    if (t > tau && t <= 11 * tau) worst = std::max(worst, low);
  }
  return {at_most("max over rounds of the worst instantaneous fraction K=256", "cascade adversary throttles to O(ln K / K)",
                  worst, bound,
                  "periods 2..11, tau=" + std::to_string(tau) + ", first period " + fmt("%.5f", first_period))};
}

// ---------------------------------------------------------------- criterion 8

Check erasure_roundtrip() {
  std::mt19937_64 rng(7);
  std::size_t subsets = 0;
  std::size_t failures = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t p = 1; p <= n; ++p) {
      const protocol::SystematicCode code(p, n);
      std::vector<std::vector<std::uint32_t>> data(p, std::vector<std::uint32_t>(3));
      for (auto& row : data) {
        for (auto& v : row) v = static_cast<std::uint32_t>(rng() % protocol::gf::kModulus);
      }
      const std::vector<protocol::Chunk> chunks = code.encode(data);
      for (const auto& pick : oracle::subsets(n, p)) {
        std::vector<protocol::Chunk> held;
        for (std::size_t i : pick) held.push_back(chunks[i]);
        ++subsets;
        if (code.reconstruct(held) != data) ++failures;
      }
    }
  }
  return at_most("p-subsets failing to reconstruct (n <= 10)", "any p of n coded chunks recover the block",
                 static_cast<double>(failures), 0.0, std::to_string(subsets) + " subsets");
}

std::vector<Check> availability_soundness() {
  std::size_t patterns = 0;
  std::size_t unsound = 0;
  std::size_t disagreements = 0;
  for (std::size_t N = 1; N <= 12; ++N) {
    for (std::size_t a = 0; 2 * a < N; ++a) {
      const double beta = static_cast<double>(a) / static_cast<double>(N);
      const std::size_t p = protocol::data_chunks_for(beta, N);
      if (p != oracle::data_chunk_threshold(a, N)) ++disagreements;
      // Nodes N-a .. N-1 are adversarial; an honest yes means its chunk arrived.
      for (std::uint32_t mask = 0; mask < (1U << N); ++mask) {
        std::vector<protocol::AvailabilityVote> votes;
        std::size_t honest_yes = 0;
        std::size_t yes = 0;
        for (std::uint32_t node = 0; node < N; ++node) {
          const bool v = (mask >> node) & 1U;
          votes.push_back({node, protocol::Digest{}, v});
          yes += v;
          if (v && node < N - a) ++honest_yes;
        }
        ++patterns;
        const bool certified = protocol::tally_availability(votes, N);
        if (certified != oracle::majority(yes, N)) ++disagreements;
        if (certified && honest_yes < p) ++unsound;
        if (protocol::availability_soundness_violated(honest_yes, beta, N, p)) ++unsound;
      }
    }
  }
  return {
      at_most("certified vote patterns with < p honest-held chunks (N <= 12)",
              "availability certificate implies recoverability", static_cast<double>(unsound), 0.0,
              std::to_string(patterns) + " patterns"),
      at_most("tally / threshold disagreements with first-principles oracle", "strict-majority certificate",
              static_cast<double>(disagreements), 0.0),
  };
}

Check bisection_injections() {
  std::mt19937_64 rng(99);
  std::map<std::uint32_t, std::uint64_t> genesis;
  for (std::uint32_t acct = 0; acct < 8; ++acct) genesis[acct] = 100;
  const protocol::ToyState pre(genesis);
  std::size_t failures = 0;
  std::size_t total = 0;
  const auto one = [&](std::size_t B, std::size_t S) {
    std::vector<protocol::Transaction> txs(B);
    for (auto& tx : txs) {
      tx.from = static_cast<std::uint32_t>(rng() % 8);
      tx.to = static_cast<std::uint32_t>(rng() % 8);
      tx.amount = 1 + rng() % 20;
    }
    const std::size_t fault = static_cast<std::size_t>(rng() % B);
    const std::vector<protocol::Digest> honest = protocol::execution_roots(txs, pre);

    // Leader executes faithfully up to the fault, then mints one unit.
    std::vector<protocol::Digest> leader(honest.begin(), honest.begin() + static_cast<std::ptrdiff_t>(fault) + 1);
    protocol::ToyState state = pre;
    for (std::size_t i = 0; i < fault; ++i) state.apply(txs[i]);
    const protocol::ToyState witness = state;
    state.apply(txs[fault]);
    auto corrupted = state.balances();
    corrupted[txs[fault].to] += 1;
    state = protocol::ToyState(corrupted);
    leader.push_back(state.root());
    for (std::size_t i = fault + 1; i < B; ++i) {
      state.apply(txs[i]);
      leader.push_back(state.root());
    }

    ++total;
    const protocol::BisectionOutcome out = protocol::run_bisection(leader, honest, S);
    const std::size_t expected = oracle::first_divergence(leader, honest) - 1;
    bool ok = out.disputed_index == expected && expected == fault &&
              out.rounds == oracle::rounds_to_cover(B, S) && out.transcript.size() == out.rounds;
    if (ok) {
      const protocol::DisputedTx d{txs[fault], witness, leader[fault + 1]};
      ok = protocol::adjudicate(d, honest[fault]) == protocol::Verdict::challenger_correct;
    }
    if (!ok) ++failures;
  };
  one(1, 2);
  one(1, 10);
  for (int i = 0; i < 200; ++i) one(1 + static_cast<std::size_t>(rng() % 4096), i % 2 == 0 ? 2 : 10);
  return at_most("injections localised wrongly or in the wrong number of rounds",
                 "bisection finds the faulty transaction in ceil(log_S B) rounds", static_cast<double>(failures), 0.0,
                 std::to_string(total) + " injections, B <= 4096, S in {2,10}");
}

Check replay_determinism() {
  protocol::Scenario sc;
  sc.beta = 0.3;
  sc.smr_blocks = 16;
  sc.faults.miscode = true;
  sc.faults.bad_commitment = true;
  std::size_t mismatches = 0;
  const protocol::WorldReport first = protocol::simulate(sc);
  const protocol::WorldReport second = protocol::simulate(sc);
  const std::string dump = first.log.dump();
  if (dump != second.log.dump()) ++mismatches;
  std::istringstream in(dump);
  const protocol::OrderedLog replayed = protocol::OrderedLog::replay(in);
  if (replayed.dump() != dump) ++mismatches;
  if (replayed.size() != first.log.size()) {
    ++mismatches;
  } else {
    for (std::size_t i = 0; i < replayed.size(); ++i) {
      if (protocol::encode_entry(replayed[i]) != protocol::encode_entry(first.log[i])) ++mismatches;
    }
  }
  if (protocol::derive_shard_ledgers(replayed, sc.nodes) != protocol::derive_shard_ledgers(first.log, sc.nodes)) {
    ++mismatches;
  }
  return at_most("replay mismatches (text, binary entries, derived ledgers)", "ordered log replay is bit-exact",
                 static_cast<double>(mismatches), 0.0, std::to_string(first.log.size()) + " entries");
}

std::vector<Check> protocol_properties() {
  std::vector<Check> checks{erasure_roundtrip()};
  for (Check& c : availability_soundness()) checks.push_back(std::move(c));
  checks.push_back(bisection_injections());
  checks.push_back(replay_determinism());
  return checks;
}

// ---------------------------------------------------------------- criterion 9

std::vector<Check> resource_trend() {
  std::vector<Check> checks;
  std::vector<std::pair<std::size_t, double>> ratios;
  for (std::size_t B : {64, 128, 256, 512, 1024}) {
    protocol::Scenario sc;
    sc.nodes = 200;
    sc.shards = 20;
    sc.smr_blocks = 16;
    sc.block_txs = B;
    sc.faults.bad_commitment = true;
    const protocol::WorldReport report = protocol::simulate(sc);
    ratios.emplace_back(B, resources::overhead_ratio(report.counters).headline.value_or(std::nan("")));
  }
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    checks.push_back(less_than("overhead ratio B=" + std::to_string(ratios[i].first) + " below B=" +
                                   std::to_string(ratios[i - 1].first),
                               "SMR overhead vanishes as blocks grow (N=200, K=20)", ratios[i].second,
                               ratios[i - 1].second));
  }
  return checks;
}

// ---------------------------------------------------------------- registry

struct Suite {
  const char* name;
  const char* title;
  double time_limit;
  std::function<std::vector<Check>(unsigned)> body;
};

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites{
      {"criterion-1", "throughput throttling of static uniform allocation", 1, [](unsigned) { return throttling(); }},
      {"criterion-2", "simple dynamic policy vs escalation adversary", 10, [](unsigned) { return simple_dynamic(); }},
      {"criterion-3", "F2S approachability bound", 30, [](unsigned) { return f2s_distance_bound(); }},
      {"criterion-4", "information-theoretic ceilings", 60, [](unsigned w) { return ceilings(w); }},
      {"criterion-5", "strategy-space inequalities", 120, [](unsigned) { return ssi(); }},
      {"criterion-6", "F2S-dist stochastic experiments", 300, [](unsigned w) { return dist_experiment(w); }},
      {"criterion-7", "cascade adversary potency", 10, [](unsigned) { return cascade(); }},
      {"criterion-8", "protocol properties", 120, [](unsigned) { return protocol_properties(); }},
      {"criterion-9", "resource overhead trend", 60, [](unsigned) { return resource_trend(); }},
      {"bisection", "bisection fault localisation", 0, [](unsigned) { return std::vector<Check>{bisection_injections()}; }},
  };
  return suites;
}

const std::vector<std::pair<const char*, const char*>>& aliases() {
  static const std::vector<std::pair<const char*, const char*>> a{
      {"throttling", "criterion-1"},  {"simple-dynamic", "criterion-2"},  {"theorem-f2s", "criterion-3"},
      {"ceilings", "criterion-4"},    {"ssi", "criterion-5"},             {"dist-experiment", "criterion-6"},
      {"cascade", "criterion-7"},     {"protocol", "criterion-8"},        {"resources", "criterion-9"},
  };
  return a;
}

SuiteReport run_one(const Suite& s, unsigned workers) {
  SuiteReport report;
  report.suite = s.name;
  report.title = s.title;
  report.time_limit = s.time_limit;
  const auto start = Clock::now();
  report.checks = s.body(workers);
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (s.time_limit > 0) {
    report.checks.push_back(at_most("runtime seconds", "stated runtime budget", report.seconds, s.time_limit));
  }
  return report;
}

}  // namespace

std::vector<std::string> criterion_suites() {
  std::vector<std::string> out;
  for (int i = 1; i <= 9; ++i) out.push_back("criterion-" + std::to_string(i));
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : registry()) out.emplace_back(s.name);
  for (const auto& [alias, target] : aliases()) out.emplace_back(alias);
  out.emplace_back("all");
  return out;
}

std::vector<SuiteReport> run_suite(std::string_view name, unsigned workers) {
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const std::string& s : criterion_suites()) out.push_back(run_suite(s, workers).front());
    return out;
  }
  std::string_view resolved = name;
  for (const auto& [alias, target] : aliases()) {
    if (name == alias) resolved = target;
  }
  for (const Suite& s : registry()) {
    if (resolved == s.name) {
      SuiteReport r = run_one(s, workers);
      if (resolved != name) r.suite = std::string(name) + " (" + s.name + ")";
      return {std::move(r)};
    }
  }
  std::string known;
  for (const std::string& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "' (known: " + known + ")");
}

void print_report(std::ostream& out, const SuiteReport& report) {
  out << "== " << report.suite << ": " << report.title << '\n';
  for (const Check& c : report.checks) {
    const char* rel = c.relation == Relation::at_most ? "<=" : c.relation == Relation::at_least ? ">=" : "<";
    out << "  [" << (c.passed() ? "PASS" : "FAIL") << "] " << c.name << '\n'
        << "         reference: " << c.reference << '\n'
        << "         measured " << fmt("%.10g", c.measured) << ' ' << rel << " bound " << fmt("%.10g", c.bound)
        << "  margin " << fmt("%.3g", c.margin()) << '\n';
    if (!c.note.empty()) out << "         " << c.note << '\n';
  }
  out << summary_line(report) << '\n';
}

std::string summary_line(const SuiteReport& report) {
  std::ostringstream line;
  line << report.suite << ' ' << (report.passed() ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
       << report.failures() << " failed, " << fmt("%.2f", report.seconds) << " s)";
  return line.str();
}

}  // namespace f2s::experiment
