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

#include "varlab/orlicz.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "varlab/rng.hpp"
#include "varlab/systems.hpp"

using namespace varlab;

namespace {

SampledFunction random_trig_poly(Rng& rng, const SampledSystem& system) {
  CoeffVector a{rng.normal_vector(static_cast<std::size_t>(system.size()))};
  return synthesize(a, system);
}

}  // namespace

TEST_CASE("modulus values") {
  for (double k : {1.0, 1.5, 2.0}) CHECK(modulus_value(0.0, OrliczModulus::truncated(k)) == 0.0);
  CHECK(modulus_value(1.0, OrliczModulus::truncated(1.0)) ==
        doctest::Approx(std::numbers::e - 1.0));
  // Second branch at K=1, t=2: e*4 + e*0 - 1.
  CHECK(modulus_value(2.0, OrliczModulus::truncated(1.0)) ==
        doctest::Approx(4.0 * std::numbers::e - 1.0));
  CHECK(modulus_value(1.0, OrliczModulus::gauss(2.0)) == doctest::Approx(std::expm1(2.0)));
  CHECK_THROWS_AS(OrliczModulus::truncated(0.5), std::invalid_argument);
  CHECK_THROWS_AS(OrliczModulus::gauss(0.0), std::invalid_argument);
}

TEST_CASE("pointwise modulus bounds behind the norm comparisons") {
  for (double k : {1.0, 1.5, 2.0, 3.0}) {
    const OrliczModulus mod = OrliczModulus::truncated(k);
    const double ek2 = std::exp(k * k);
    for (int i = 0; i <= 2000; ++i) {
      const double t = -5.0 + i * 0.005;
      const double gamma_k = modulus_value(t, mod);
      CHECK(gamma_k <= std::expm1(t * t) * (1 + 1e-12) + 1e-12);
      CHECK(gamma_k <= ek2 * t * t * (1 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("luxemburg closed forms") {
  const GridPtr grid = make_uniform_grid(32);
  for (double a : {0.5, 1.0, 7.25}) {
    const SampledFunction f(grid, std::vector<double>(32, a));
    const double expected = a / std::sqrt(std::log(2.0));
    CHECK(luxemburg_norm(f, OrliczModulus::gauss(1.0)) ==
          doctest::Approx(expected).epsilon(1e-8));
    for (double k : {1.0, 2.0}) {
      CHECK(luxemburg_norm(f, OrliczModulus::truncated(k)) ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }
  const SampledFunction zero(grid, std::vector<double>(32, 0.0));
  CHECK(luxemburg_norm(zero, OrliczModulus::gauss(1.0)) == 0.0);

  std::vector<double> bad(32, 1.0);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(luxemburg_norm(SampledFunction(grid, bad), OrliczModulus::gauss(1.0)),
                  std::invalid_argument);
}

TEST_CASE("luxemburg returned value is always feasible") {
  Rng rng(301);
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  for (int t = 0; t < 50; ++t) {
    const SampledFunction f = random_trig_poly(rng, trig);
    for (const OrliczModulus& mod :
         {OrliczModulus::gauss(1.0), OrliczModulus::gauss(0.05), OrliczModulus::truncated(1.5)}) {
      const double lambda = luxemburg_norm(f, mod);
      double acc = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        acc += f.grid->weight(i) * modulus_value(f.values[i] / lambda, mod);
      }
      CHECK(acc <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("truncation level") {
  CHECK(k_star(64, 64) == 1.0);  // clamp fires: the raw argument is ln(ln 2) < 0
  CHECK(k_star(1024, 1) == doctest::Approx(1.883).epsilon(1e-3));
  for (std::size_t n : {16u, 256u, 4096u}) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= n; m *= 2) {
      const double k = k_star(n, m);
      CHECK(k >= 1.0);
      CHECK(k <= prev + 1e-12);
      prev = k;
    }
  }
  CHECK_THROWS_AS(k_star(8, 9), std::invalid_argument);
  CHECK_THROWS_AS(k_star(8, 0), std::invalid_argument);
}

TEST_CASE("norm comparison inequalities on random polynomials") {
  Rng rng(302);
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  for (int t = 0; t < 300; ++t) {
    const SampledFunction f = random_trig_poly(rng, trig);
    const double gauss_norm = luxemburg_norm(f, OrliczModulus::gauss(1.0));
    const double l2 = lp_norm(f, 2.0);
    for (double k : {1.0, 1.5, 2.0, 3.0}) {
      const double trunc = luxemburg_norm(f, OrliczModulus::truncated(k));
      CHECK(trunc <= gauss_norm + 1e-9);
      CHECK(trunc <= std::exp(k * k / 2.0) * l2 * (1 + 1e-9));
    }
  }
}

TEST_CASE("luxemburg homogeneity and triangle inequality") {
  Rng rng(303);
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  for (int t = 0; t < 50; ++t) {
    const SampledFunction f = random_trig_poly(rng, trig);
    const SampledFunction g = random_trig_poly(rng, trig);
    const OrliczModulus mod = OrliczModulus::gauss(1.0);
    const double nf = luxemburg_norm(f, mod);
    const double ng = luxemburg_norm(g, mod);

    const double lambda = rng.normal();
    std::vector<double> scaled = f.values;
    for (auto& v : scaled) v *= lambda;
    CHECK(luxemburg_norm(SampledFunction(grid, scaled), mod) ==
          doctest::Approx(std::abs(lambda) * nf).epsilon(1e-8));

    std::vector<double> added = f.values;
    for (std::size_t i = 0; i < added.size(); ++i) added[i] += g.values[i];
    CHECK(luxemburg_norm(SampledFunction(grid, added), mod) <= nf + ng + 1e-8);
  }
}

TEST_CASE("bounded/tail split") {
  Rng rng(304);
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);

  const SampledFunction zero(grid, std::vector<double>(64, 0.0));
  const SplitPair zsplit = split_gamma_k(zero, 1.5);
  CHECK(zsplit.gamma == 0.0);
  CHECK(lp_norm(zsplit.g_part, 2.0) == 0.0);
  CHECK(lp_norm(zsplit.e_part, 2.0) == 0.0);

  for (int t = 0; t < 300; ++t) {
    const SampledFunction f = random_trig_poly(rng, trig);
    for (double k : {1.0, 1.5, 2.0}) {
      const SplitPair split = split_gamma_k(f, k);
      // Disjoint supports reassembling f exactly.
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        CHECK(split.g_part.values[i] + split.e_part.values[i] == f.values[i]);
        CHECK(split.g_part.values[i] * split.e_part.values[i] == 0.0);
      }
      // A function already below the threshold keeps an empty tail.
      if (sup_abs(f) <= k * split.gamma) {
        CHECK(lp_norm(split.e_part, 2.0) == 0.0);
      }
      const double g_norm = luxemburg_norm(split.g_part, OrliczModulus::gauss(1.0));
      CHECK(g_norm <= split.gamma * (1 + 1e-9));
      const double e2 = lp_norm(split.e_part, 2.0);
      CHECK(e2 * e2 <= split_e_part_bound_sq(split.gamma, k) * (1 + 1e-9));
    }
  }
}

TEST_CASE("subgaussian profile of a constant function") {
  const GridPtr grid = make_uniform_grid(32);
  const double a = 3.0;
  const SampledFunction f(grid, std::vector<double>(32, a));
  const SubgaussianProfile profile = subgaussian_profile(f, a);
  // ||f||_p / (sqrt(p) A) = 1/sqrt(p), maximized at p = 2.
  CHECK(profile.c1 == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(profile.lambdas.size() == 64);
  CHECK(profile.tail.front() == doctest::Approx(1.0));
}

TEST_CASE("tail implications with explicit constants") {
  Rng rng(305);
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  for (int t = 0; t < 200; ++t) {
    const SampledFunction f = random_trig_poly(rng, trig);
    const double c = 1.0;
    const double a_scale = luxemburg_norm(f, OrliczModulus::gauss(c));
    if (a_scale == 0.0) continue;
    const SubgaussianProfile profile = subgaussian_profile(f, a_scale);

    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
      const double lambda = profile.lambdas[i];
      // Orlicz membership forces the two-sided Gaussian tail with C = 2.
      CHECK(profile.tail[i] <=
            2.0 * std::exp(-c * lambda * lambda / (a_scale * a_scale)) * (1 + 1e-9) + 1e-12);
    }

    // Moment growth forces the tail with c' = 1/(2 e c1^2), C = e, on
    // the lambda range whose optimizing exponent the p grid covers.
    const double c1 = profile.c1;
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
      const double lambda = profile.lambdas[i];
      const double p_star =
          lambda * lambda / (std::numbers::e * c1 * c1 * a_scale * a_scale);
      if (p_star < 2.0 || p_star > 32.0) continue;
      CHECK(profile.tail[i] <=
            std::numbers::e * std::exp(-p_star / 2.0) * (1 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("moment-to-orlicz chain constant") {
  // d2 = c'/2 with c' = 1/(2 e c1^2); d1 caps at 1.
  const double c1 = 1.0;
  const double c_prime = 1.0 / (2.0 * std::numbers::e);
  const double d2 = c_prime / 2.0;
  const double d1 = std::min(1.0, std::expm1(d2) / (std::numbers::e * std::exp(c_prime)));
  CHECK(gauss_constant_from_moment_bound(c1) == doctest::Approx(d1 * d2).epsilon(1e-12));
  CHECK(gauss_constant_from_moment_bound(c1) > 0.0);
}
