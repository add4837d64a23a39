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

#include "varlab/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "varlab/rng.hpp"

using namespace varlab;

TEST_CASE("uniform grid layout") {
  const GridPtr g = make_uniform_grid(4);
  REQUIRE(g->size() == 4);
  CHECK(g->point(0) == doctest::Approx(0.0));
  CHECK(g->point(1) == doctest::Approx(0.25));
  CHECK(g->point(2) == doctest::Approx(0.5));
  CHECK(g->point(3) == doctest::Approx(0.75));
  for (std::size_t i = 0; i < 4; ++i) CHECK(g->weight(i) == doctest::Approx(0.25));
}

TEST_CASE("degenerate single-point grid") {
  const GridPtr g = make_uniform_grid(1);
  REQUIRE(g->size() == 1);
  CHECK(g->point(0) == 0.0);
  CHECK(g->weight(0) == 1.0);
}

TEST_CASE("zero width rejected") {
  CHECK_THROWS_AS(make_uniform_grid(0), std::invalid_argument);
}

TEST_CASE("constant one integrates to one on any grid") {
  for (std::size_t x : {1u, 3u, 17u, 256u}) {
    const GridPtr g = make_uniform_grid(x);
    const SampledFunction one(g, std::vector<double>(x, 1.0));
    CHECK(integrate(one) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("lp norm of constants and zero") {
  const GridPtr g = make_uniform_grid(8);
  const SampledFunction three(g, std::vector<double>(8, 3.0));
  CHECK(lp_norm(three, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lp_norm(three, 5.0) == doctest::Approx(3.0).epsilon(1e-14));
  const SampledFunction zero(g, std::vector<double>(8, 0.0));
  for (double p : {1.0, 2.0, 7.5}) CHECK(lp_norm(zero, p) == 0.0);
  CHECK(lp_norm(zero, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("exact trig quadrature: sqrt(2) cos has unit L2 norm on X=8") {
  const GridPtr g = make_uniform_grid(8);
  std::vector<double> values(8);
  for (std::size_t i = 0; i < 8; ++i) {
    values[i] = std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * g->point(i));
  }
  const SampledFunction f(g, values);
  // sum_k cos^2(2 pi k / 8) = 4 exactly, so the weighted square sum is 1.
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lp norm rejects p below one") {
  const GridPtr g = make_uniform_grid(4);
  const SampledFunction f(g, std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(f, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("lp norm monotone in p and homogeneous") {
  Rng rng(20260809);
  const GridPtr g = make_uniform_grid(32);
  for (int t = 0; t < 50; ++t) {
    const SampledFunction f(g, rng.normal_vector(32));
    double prev = lp_norm(f, 1.0);
    for (double p : {1.5, 2.0, 3.0, 6.0, 16.0}) {
      const double cur = lp_norm(f, p);
      CHECK(prev <= cur + 1e-12);
      prev = cur;
    }
    CHECK(prev <= sup_abs(f) + 1e-12);

    const double lambda = rng.normal();
    std::vector<double> scaled = f.values;
    for (auto& v : scaled) v *= lambda;
    const SampledFunction fs(g, scaled);
    CHECK(lp_norm(fs, 2.0) ==
          doctest::Approx(std::abs(lambda) * lp_norm(f, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("grid invariants enforced") {
  CHECK_THROWS_AS(Grid({0.0, 0.5}, {0.5, 0.6}), std::invalid_argument);   // sum != 1
  CHECK_THROWS_AS(Grid({0.5, 0.2}, {0.5, 0.5}), std::invalid_argument);   // not increasing
  CHECK_THROWS_AS(Grid({0.0, 1.0}, {0.5, 0.5}), std::invalid_argument);   // point at 1
  CHECK_THROWS_AS(Grid({0.0, 0.5}, {1.0, 0.0}), std::invalid_argument);   // zero weight
  CHECK_THROWS_AS(Grid({0.0}, {0.5, 0.5}), std::invalid_argument);        // length mismatch
}
