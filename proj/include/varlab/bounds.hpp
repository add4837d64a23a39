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

#ifndef VARLAB_BOUNDS_HPP_
#define VARLAB_BOUNDS_HPP_

#include <Eigen/Dense>
#include <cstdint>

#include "varlab/systems.hpp"

namespace varlab {

/// C(N, m) (3/eps)^m in linear and log form (log-space arithmetic
/// guards the overflow).
struct CoveringBound {
  double value;
  double log_value;
};

CoveringBound covering_bound(int n, int m, double eps);

/// Hard ceiling for an eps/2-separated subset of the sparse ball:
/// disjoint eps/4-balls inside a (1 + eps/4)-ball give (1 + 4/eps)^m
/// points per support subspace, summed over C(N, m) subspaces. Always
/// at least the covering bound.
double packing_ceiling(int n, int m, double eps);

/// Randomized greedy eps/2-separated set in the m-sparse unit ball of
/// R^N: uniform support, uniform direction, radius U^{1/m}; proposals
/// closer than eps/2 to a kept point are rejected; stops after
/// stop_after consecutive rejections. Guarded to N <= 12.
std::vector<std::vector<double>> packing_points(int n, int m, double eps,
                                                std::uint64_t seed, int stop_after);
int packing_count(int n, int m, double eps, std::uint64_t seed, int stop_after);

struct SparseGaussianSup {
  double mean_sup;  // Monte Carlo mean of sup over the m-sparse ball of <g, a>
  double ratio;     // mean / sqrt(m ln(N/m + 1))
};

/// The supremum per draw is exact: sqrt of the sum of the m largest
/// g_i^2 (the maximizer is the normalized top-m restriction of g).
SparseGaussianSup sparse_gaussian_sup(int n, int m, int trials, std::uint64_t seed);

/// integral over (0, 1] of sqrt(m ln(N/m + 1) + m ln(3/eps)) d eps,
/// via the substitution eps = t^2 and a 1024-point midpoint rule.
double dudley_integral(int n, int m);

/// Monte Carlo mean of ||sum g_i phi_i||_{Gamma_*} / sqrt(N) with
/// K = k_star(N, m). Requires the bounded flag.
double gaussian_combination_gamma_norm(const SampledSystem& system, int m,
                                       int trials, std::uint64_t seed);

/// Empirical lower probe of B(m, O) = sup over m-sparse unit vectors of
/// ||sum a_n psi_n||_{Gamma_*}: max over `probes` random unit vectors
/// with support m, evaluated on the rotated system.
double b_probe(const SampledSystem& base, const OrthogonalMatrix& o, int m,
               int probes, std::uint64_t seed);

/// Verifies ||sum_{i,n} M_{i,n} a_i phi_n||_{Gamma_*} <=
/// e^{K^2/2} ||M||_HS ||a||_2 with K = k_star(N, m); returns the ratio
/// of the two sides (<= 1 up to bisection slack).
double hs_lipschitz_check(const SampledSystem& system, const Eigen::MatrixXd& m_matrix,
                          const CoeffVector& a, int m);

}  // namespace varlab

#endif  // VARLAB_BOUNDS_HPP_
