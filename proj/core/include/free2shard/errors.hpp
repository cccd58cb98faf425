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

#ifndef FREE2SHARD_ERRORS_HPP
#define FREE2SHARD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace f2s {

/// Two vectors that must share a shard count do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument is outside the domain of the operation.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter set is internally inconsistent (e.g. the F2S-dist target h <= 0).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void check_dimensions(std::size_t lhs, std::size_t rhs, const char* what);

}  // namespace f2s

#endif  // FREE2SHARD_ERRORS_HPP
