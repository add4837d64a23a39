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

#ifndef VARLAB_ORLICZ_HPP_
#define VARLAB_ORLICZ_HPP_

#include <cstddef>
#include <vector>

#include "varlab/grid.hpp"

namespace varlab {

/// Convex modulus of an Orlicz norm: either the Gaussian modulus
/// e^{c t^2} - 1 (c > 0) or its quadratically-continued truncation
/// Gamma_K, which equals e^{t^2} - 1 for |t| <= K and
/// e^{K^2} t^2 + e^{K^2}(1 - K^2) - 1 beyond (K >= 1).
struct OrliczModulus {
  enum class Kind { kGauss, kTruncated };
  Kind kind;
  double param;  // c for kGauss, K for kTruncated

  static OrliczModulus gauss(double c);
  static OrliczModulus truncated(double k);
};

double modulus_value(double t, const OrliczModulus& mod);

/// Luxemburg norm: the smallest lambda > 0 with
/// sum_x w(x) Phi(f(x)/lambda) <= 1. Bisection to 1e-9 relative
/// tolerance; the returned lambda always sits on the feasible side, so
/// the constraint holds at the returned value. Zero for f == 0.
double luxemburg_norm(const SampledFunction& f, const OrliczModulus& mod);

/// Truncation level K(N, m) = max(1, sqrt(0.4 ln((N/m) ln(N/m + 1)))),
/// clamped at 1 so the Gamma_K comparison bounds stay valid.
double k_star(std::size_t n, std::size_t m);

/// f split into a bounded piece and a tail piece at the threshold
/// K * gamma with gamma = 2 ||f||_{Gamma_K}: disjoint supports,
/// g_part + e_part = f pointwise.
struct SplitPair {
  SampledFunction g_part;
  SampledFunction e_part;
  double gamma = 0.0;
};

/// The split guarantees ||g_part||_{G(1)} <= gamma and
/// ||e_part||_2^2 <= gamma^2 e^{-K^2} (1 + (e^{K^2}(K^2-1)+1)/(e^{K^2}-1)).
/// Points with |f| = K gamma go to the bounded piece.
SplitPair split_gamma_k(const SampledFunction& f, double k);

/// Closed-form tail bound for e_part (the right-hand side above).
double split_e_part_bound_sq(double gamma, double k);

/// mu(|f| >= lambda) under the grid measure.
double tail_measure(const SampledFunction& f, double lambda);

/// Sub-Gaussian diagnostics of f at scale A:
///  - c1: max over p in {2, 4, ..., 32} of ||f||_p / (sqrt(p) A)
///  - tail table mu(|f| >= lambda) on 64 levels spanning [0, sup|f|]
///  - g_ratio: ||f||_{G(1)} / A
struct SubgaussianProfile {
  double c1 = 0.0;
  std::vector<double> lambdas;
  std::vector<double> tail;
  double g_ratio = 0.0;
};

SubgaussianProfile subgaussian_profile(const SampledFunction& f, double a);

/// The p-norm grid used by subgaussian_profile: {2, 4, ..., 32}.
const std::vector<double>& profile_p_grid();

/// Constant c'' such that ||f||_p <= c1 sqrt(p) A for tested p implies
/// ||f||_{G(c'')} <= A, obtained by chaining the moment-to-tail step
/// (c' = 1/(2 e c1^2), C = e) with the tail-to-Orlicz step
/// (d2 = c'/2, d1 = min(1, (e^{d2} - 1)/(C e^{c'}))).
double gauss_constant_from_moment_bound(double c1);

}  // namespace varlab

#endif  // VARLAB_ORLICZ_HPP_
