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

#ifndef VARLAB_VARIATION_HPP_
#define VARLAB_VARIATION_HPP_

#include <Eigen/Dense>
#include <span>

#include "varlab/grid.hpp"
#include "varlab/systems.hpp"

namespace varlab {

/// V^r of an increment sequence: the max over partitions of [N] into
/// subintervals of (sum_blocks |block sum|^r)^{1/r}, computed exactly by
/// an O(N^2) dynamic program over prefix sums. r >= 1.
double v_r_pointwise(std::span<const double> d, double r);

/// Exhaustive reference: enumerates all 2^{N-1} interval partitions.
/// Guarded to N <= 20.
double v_r_bruteforce(std::span<const double> d, double r);

/// max_l |d_1 + ... + d_l|.
double maximal_pointwise(std::span<const double> d);

/// Partial sums of f = sum a_n phi_n: p(l, x) = sum_{n <= l} a_n phi_n(x),
/// with p(0, x) = 0. Shape (N+1) x X.
struct PrefixTable {
  Eigen::MatrixXd p;
  GridPtr grid;
};

PrefixTable make_prefix_table(const CoeffVector& coeffs, const SampledSystem& system);

struct VariationResult {
  double r = 2.0;
  SampledFunction pointwise;  // V^r f at every grid point
  double norm2 = 0.0;         // || V^r f ||_2
};

/// Applies the V^r dynamic program to the increments a_n phi_n(x) at
/// every grid point (parallelized over points) and takes the L^2 norm.
VariationResult v_r_field(const CoeffVector& coeffs, const SampledSystem& system,
                          double r = 2.0);

/// V^2(g)^2 / (2 N ln ln N) for an iid Gaussian sequence; the law of the
/// iterated logarithm for square variation drives this to 1. N >= 16.
double lil_statistic(std::span<const double> g);

namespace detail {
/// Squared V^2 from a prefix-sum array p[0..n]; dp is scratch of size n+1.
double v2_squared_from_prefix(const double* p, std::size_t n, double* dp);
}  // namespace detail

}  // namespace varlab

#endif  // VARLAB_VARIATION_HPP_
