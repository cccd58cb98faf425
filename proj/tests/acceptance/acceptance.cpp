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

// Runs acceptance criteria 1-9 and prints one PASS/FAIL line per criterion.
// Failing checks are listed under their criterion line.

#include <cstdio>
#include <iostream>

#include "free2shard/experiment/verify.hpp"

namespace fx = f2s::experiment;

int main() {
  bool ok = true;
  for (const std::string& name : fx::criterion_suites()) {
    for (const fx::SuiteReport& report : fx::run_suite(name)) {
      std::cout << fx::summary_line(report) << '\n';
      for (const fx::Check& c : report.checks) {
        if (c.passed()) continue;
        char line[512];
        std::snprintf(line, sizeof line, "    failed: %s: measured %.6g, bound %.6g", c.name.c_str(), c.measured,
                      c.bound);
        std::cout << line << (c.note.empty() ? "" : " (" + c.note + ")") << '\n';
      }
      std::cout.flush();
      ok = ok && report.passed();
    }
  }
  return ok ? 0 : 1;
}
