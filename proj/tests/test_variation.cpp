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

#include "varlab/variation.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "varlab/rng.hpp"

using namespace varlab;

TEST_CASE("hand-enumerated values") {
  // (3,-1,2): the single block wins with |3-1+2|^2 = 16 over the other
  // three interval partitions of [3] (values 10, 8, 14).
  CHECK(v_r_pointwise(std::vector<double>{3, -1, 2}, 2.0) == doctest::Approx(4.0));
  // Alternating signs: all singletons, squared value 4.
  CHECK(v_r_pointwise(std::vector<double>{1, -1, 1, -1}, 2.0) == doctest::Approx(2.0));
  // Same-sign merging always helps for r = 2.
  for (int n : {1, 5, 17}) {
    CHECK(v_r_pointwise(std::vector<double>(n, 1.0), 2.0) ==
          doctest::Approx(static_cast<double>(n)));
  }
}

TEST_CASE("brute force base cases and guards") {
  CHECK(v_r_bruteforce(std::vector<double>{5}, 3.0) == doctest::Approx(5.0));
  CHECK(v_r_bruteforce(std::vector<double>(8, 0.0), 2.0) == 0.0);
  CHECK_THROWS_AS(v_r_bruteforce(std::vector<double>(21, 1.0), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(v_r_bruteforce(std::vector<double>{}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(v_r_pointwise(std::vector<double>{}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(v_r_pointwise(std::vector<double>{1.0}, 0.5), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random gaussian sequences") {
  Rng rng(1001);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.index(12);
    const std::vector<double> d = rng.normal_vector(n);
    for (double r : {2.0, 3.0}) {
      const double fast = v_r_pointwise(d, r);
      const double brute = v_r_bruteforce(d, r);
      CHECK(std::abs(fast - brute) <= 1e-9 * std::max(1.0, brute));
    }
  }
}

TEST_CASE("maximal operator") {
  CHECK(maximal_pointwise(std::vector<double>{3, -1, 2}) == doctest::Approx(4.0));
  CHECK(maximal_pointwise(std::vector<double>{-5, 1}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(maximal_pointwise(std::vector<double>{}), std::invalid_argument);

  Rng rng(1002);
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> d = rng.normal_vector(1 + rng.index(30));
    const double m = maximal_pointwise(d);
    for (double r : {1.5, 2.0, 4.0}) {
      CHECK(m <= v_r_pointwise(d, r) + 1e-12);
    }
  }
}

TEST_CASE("monotone in r, homogeneous, lower bounds, superadditive") {
  Rng rng(1003);
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> d = rng.normal_vector(2 + rng.index(24));
    const double v15 = v_r_pointwise(d, 1.5);
    const double v2 = v_r_pointwise(d, 2.0);
    const double v3 = v_r_pointwise(d, 3.0);
    CHECK(v15 >= v2 - 1e-12);
    CHECK(v2 >= v3 - 1e-12);

    const double lambda = rng.normal();
    std::vector<double> scaled = d;
    for (auto& v : scaled) v *= lambda;
    CHECK(v_r_pointwise(scaled, 2.0) ==
          doctest::Approx(std::abs(lambda) * v2).epsilon(1e-12));

    double l2 = 0.0, total = 0.0;
    for (double v : d) {
      l2 += v * v;
      total += v;
    }
    CHECK(v2 + 1e-12 >= std::sqrt(l2));
    CHECK(v2 + 1e-12 >= std::abs(total));
    CHECK(v2 + 1e-12 >= maximal_pointwise(d));

    const std::vector<double> d2 = rng.normal_vector(1 + rng.index(16));
    std::vector<double> joined = d;
    joined.insert(joined.end(), d2.begin(), d2.end());
    const double vj = v_r_pointwise(joined, 2.0);
    const double v2b = v_r_pointwise(d2, 2.0);
    CHECK(vj * vj + 1e-9 >= v2 * v2 + v2b * v2b);
  }
}

TEST_CASE("prefix table increments match the system rows") {
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  Rng rng(1004);
  CoeffVector a{rng.normal_vector(16)};
  const PrefixTable table = make_prefix_table(a, trig);
  REQUIRE(table.p.rows() == 17);
  for (int l = 1; l <= 16; ++l) {
    for (int x = 0; x < 64; ++x) {
      const double inc = table.p(l, x) - table.p(l - 1, x);
      CHECK(inc == doctest::Approx(a.entries[l - 1] * trig.values(l - 1, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("variation field: single coefficient and norm lower bound") {
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);

  CoeffVector single;
  single.entries.assign(16, 0.0);
  single.entries[5] = -2.5;
  const VariationResult vr = v_r_field(single, trig, 2.0);
  for (std::size_t x = 0; x < 64; ++x) {
    CHECK(vr.pointwise.values[x] ==
          doctest::Approx(std::abs(-2.5 * trig.values(5, static_cast<Eigen::Index>(x)))));
  }
  CHECK(vr.norm2 == doctest::Approx(2.5).epsilon(1e-8));

  Rng rng(1005);
  for (int t = 0; t < 20; ++t) {
    CoeffVector a{rng.normal_vector(16)};
    const VariationResult field = v_r_field(a, trig, 2.0);
    const double f_norm = lp_norm(synthesize(a, trig), 2.0);
    CHECK(field.norm2 + 1e-9 >= f_norm);
    CHECK(field.norm2 ==
          doctest::Approx(lp_norm(field.pointwise, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("variation field regression fixture: trig N=64") {
  const GridPtr grid = make_uniform_grid(256);
  const SampledSystem trig = trig_system(64, grid);
  const CoeffVector a{gaussian_sequence(64, derive_seed(1, 0x434f45, 64, 0))};
  const VariationResult vr = v_r_field(a, trig, 2.0);
  const double ratio = vr.norm2 / lp_norm(synthesize(a, trig), 2.0);
  // Same seed, same value; recorded once and pinned.
  CHECK(ratio == doctest::Approx(1.885230619669949).epsilon(1e-12));
  const VariationResult again = v_r_field(a, trig, 2.0);
  CHECK(vr.norm2 == again.norm2);
}

TEST_CASE("lil statistic") {
  CHECK_THROWS_AS(lil_statistic(std::vector<double>(8, 1.0)), std::invalid_argument);

  const std::vector<double> g = gaussian_sequence(4096, 77);
  std::vector<double> neg = g;
  for (auto& v : neg) v = -v;
  CHECK(lil_statistic(g) == doctest::Approx(lil_statistic(neg)));

  const double m = maximal_pointwise(g);
  const auto n = static_cast<double>(g.size());
  CHECK(lil_statistic(g) + 1e-12 >= m * m / (2.0 * n * std::log(std::log(n))));
}
