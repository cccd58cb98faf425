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

// Interactive challenge of a state commitment, narrowed to one transaction.

#ifndef FREE2SHARD_PROTOCOL_BISECTION_HPP
#define FREE2SHARD_PROTOCOL_BISECTION_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "free2shard/protocol/ledger.hpp"

namespace f2s::protocol {

class NoDisputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BisectionRound {
  std::uint64_t lo = 0;    // segment start on the padded grid
  std::uint64_t span = 0;  // segment length on the padded grid
  std::vector<Digest> boundaries;  // leader's roots at lo + k * span / S, k = 1..S
  std::uint64_t chosen = 0;        // challenger's pick, 1-based
};

struct BisectionOutcome {
  std::size_t disputed_index = 0;
  std::size_t rounds = 0;
  std::vector<BisectionRound> transcript;
};

/// Smallest H with S^H >= B (0 for B = 1).
std::size_t bisection_rounds(std::size_t B, std::size_t S);

/// Roots are per-transaction state roots of size B + 1 with element 0 the
/// agreed pre-state. The segment [0, B) is padded to S^H so every round
/// splits into exactly S parts; positions past B repeat the final root.
/// Throws ArgumentError on mismatched sizes, S < 2 or differing pre-states,
/// and NoDisputeError when the final roots agree.
BisectionOutcome run_bisection(std::span<const Digest> leader_roots, std::span<const Digest> challenger_roots,
                               std::size_t S);

enum class Verdict { leader_correct, challenger_correct };

const char* verdict_name(Verdict v);

struct DisputedTx {
  Transaction tx;
  ToyState witness;          // full pre-state of the disputed transition
  Digest claimed_post_root{};  // what the leader committed after tx
};

/// Re-executes the disputed transaction on the witnessed pre-state. Throws
/// WitnessError when the witness does not hash to the agreed pre-state root.
Verdict adjudicate(const DisputedTx& disputed, const Digest& agreed_pre_root);

}  // namespace f2s::protocol

#endif  // FREE2SHARD_PROTOCOL_BISECTION_HPP
