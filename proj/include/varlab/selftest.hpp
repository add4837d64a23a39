// Copyright 2026 The varlab Authors
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

#ifndef VARLAB_SELFTEST_HPP_
#define VARLAB_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace varlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the hard-inequality battery: every inequality the library
/// asserts as exact (norm comparisons, split bounds, tail implications,
/// tree structure, covers, majorant, packing ceilings, probe ceilings,
/// variation lower bounds, oracle agreement) at a reduced instance
/// count. Deterministic in the seed.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

}  // namespace varlab

#endif  // VARLAB_SELFTEST_HPP_
