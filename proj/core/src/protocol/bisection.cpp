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

#include "free2shard/protocol/bisection.hpp"

#include <algorithm>

#include "free2shard/errors.hpp"

namespace f2s::protocol {

std::size_t bisection_rounds(std::size_t B, std::size_t S) {
  if (B == 0) throw ArgumentError("bisection_rounds: empty segment");
  if (S < 2) throw ArgumentError("bisection_rounds: branching factor must be at least 2");
  std::size_t rounds = 0;
  std::uint64_t reach = 1;
  while (reach < B) {
    reach *= S;
    ++rounds;
  }
  return rounds;
}

BisectionOutcome run_bisection(std::span<const Digest> leader_roots, std::span<const Digest> challenger_roots,
                               std::size_t S) {
  if (leader_roots.size() != challenger_roots.size() || leader_roots.size() < 2) {
    throw ArgumentError("run_bisection: views must cover the same nonempty segment");
  }
  if (leader_roots.front() != challenger_roots.front()) {
    throw ArgumentError("run_bisection: views disagree on the pre-state");
  }
  if (leader_roots.back() == challenger_roots.back()) throw NoDisputeError("run_bisection: final roots agree");
  const std::size_t B = leader_roots.size() - 1;
  const std::size_t H = bisection_rounds(B, S);

  const auto at = [B](std::span<const Digest> roots, std::uint64_t i) -> const Digest& {
    return roots[static_cast<std::size_t>(std::min<std::uint64_t>(i, B))];
  };

  std::uint64_t span = 1;
  for (std::size_t i = 0; i < H; ++i) span *= S;

  BisectionOutcome out;
  std::uint64_t lo = 0;
  // invariant: views agree at lo and disagree at lo + span
  for (std::size_t round = 0; round < H; ++round) {
    const std::uint64_t step = span / S;
    BisectionRound r;
    r.lo = lo;
    r.span = span;
    for (std::uint64_t k = 1; k <= S; ++k) r.boundaries.push_back(at(leader_roots, lo + k * step));
    for (std::uint64_t k = 1; k <= S; ++k) {
      if (r.boundaries[k - 1] != at(challenger_roots, lo + k * step)) {
        r.chosen = k;
        break;
      }
    }
    lo += (r.chosen - 1) * step;
    span = step;
    out.transcript.push_back(std::move(r));
  }
  out.disputed_index = static_cast<std::size_t>(lo);
  out.rounds = H;
  return out;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::leader_correct ? "leader-correct" : "challenger-correct";
}

Verdict adjudicate(const DisputedTx& disputed, const Digest& agreed_pre_root) {
  if (disputed.witness.root() != agreed_pre_root) {
    throw WitnessError("adjudicate: witness does not match the agreed pre-state root");
  }
  ToyState state = disputed.witness;
  state.apply(disputed.tx);
  return state.root() == disputed.claimed_post_root ? Verdict::leader_correct : Verdict::challenger_correct;
}

}  // namespace f2s::protocol
