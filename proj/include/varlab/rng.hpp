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

#ifndef VARLAB_RNG_HPP_
#define VARLAB_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace varlab {

/// One step of the splitmix64 mixer (public-domain algorithm by
/// Sebastiano Vigna). Used to derive decorrelated stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives a stream seed from a root seed and up to three tags
/// (experiment id, N, trial index, ...). Pure function of its inputs,
/// so every trial owns a reproducible independent stream.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

/// Seedable random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the distributions are implemented
/// here because the standard library's are implementation-defined and
/// would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via the Box-Muller transform (pairs cached).
  double normal();

  std::vector<double> normal_vector(std::size_t n);

  /// Uniform index in [0, n). Rejection sampling, no modulo bias.
  std::size_t index(std::size_t n);

  /// k distinct indices from [0, n), in the order drawn
  /// (partial Fisher-Yates).
  std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace varlab

#endif  // VARLAB_RNG_HPP_
