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

// Verification suites: each check carries the result it reproduces, the
// measured value, the bound and the margin by which the bound holds.

#ifndef FREE2SHARD_EXPERIMENT_VERIFY_HPP
#define FREE2SHARD_EXPERIMENT_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace f2s::experiment {

enum class Relation { at_most, at_least, less_than };

struct Check {
  std::string name;
  std::string reference;
  double measured = 0.0;
  double bound = 0.0;
  Relation relation = Relation::at_most;
  std::string note;

  bool passed() const;
  /// Positive when the bound holds, in the units of the measured value.
  double margin() const;
};

Check at_most(std::string name, std::string reference, double measured, double bound, std::string note = {});
Check at_least(std::string name, std::string reference, double measured, double bound, std::string note = {});
Check less_than(std::string name, std::string reference, double measured, double bound, std::string note = {});

struct SuiteReport {
  std::string suite;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 = none

  bool passed() const;
  std::size_t failures() const;
};

/// Suite names accepted by run_suite: criterion-1 .. criterion-9, the topical
/// aliases (throttling, simple-dynamic, theorem-f2s, ceilings, ssi,
/// dist-experiment, cascade, protocol, bisection, resources) and `all`.
std::vector<std::string> suite_names();

/// The suites `all` expands to, in order.
std::vector<std::string> criterion_suites();

/// Throws std::invalid_argument for an unknown name. `workers` feeds the
/// batch runs (0 = hardware concurrency).
std::vector<SuiteReport> run_suite(std::string_view name, unsigned workers = 0);

void print_report(std::ostream& out, const SuiteReport& report);

/// One line: "<suite> PASS|FAIL (<checks> checks, <failed> failed, <s> s)".
std::string summary_line(const SuiteReport& report);

}  // namespace f2s::experiment

#endif  // FREE2SHARD_EXPERIMENT_VERIFY_HPP
