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

#include "varlab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "varlab/io.hpp"
#include "varlab/rng.hpp"
#include "varlab/variation.hpp"

using namespace varlab;

TEST_CASE("trig system basics") {
  const GridPtr grid = make_uniform_grid(16);
  const SampledSystem s2 = trig_system(2, grid);
  CHECK(s2.values(0, 0) == doctest::Approx(std::numbers::sqrt2));
  CHECK(s2.values(1, 0) == doctest::Approx(0.0));
  CHECK(s2.bounded);

  const SampledSystem s4 = trig_system(4, grid);
  CHECK(s4.gram_error() < 1e-12);
  // cos^2 + sin^2 per frequency pair: the pointwise square sum is N.
  CHECK(std::abs(s4.boundedness_excess()) < 1e-12);

  CHECK_THROWS_AS(trig_system(3, grid), std::invalid_argument);
  CHECK_THROWS_AS(trig_system(8, make_uniform_grid(17)), std::invalid_argument);
}

TEST_CASE("haar orthogonality and sign distribution") {
  for (int n : {1, 2, 5, 16}) {
    const OrthogonalMatrix o = haar_orthogonal(n, 42 + n);
    CHECK(o.orth_error() < 1e-10);
  }
  CHECK_THROWS_AS(haar_orthogonal(0, 1), std::invalid_argument);

  int plus = 0;
  for (int s = 0; s < 10000; ++s) {
    const OrthogonalMatrix o = haar_orthogonal(1, derive_seed(2, 1, s));
    const double e = o.entries(0, 0);
    CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
    if (e > 0) ++plus;
  }
  CHECK(plus / 10000.0 == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("haar first entry second moment is 1/N") {
  const int n = 8;
  double mean = 0.0, sq = 0.0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const double e = haar_orthogonal(n, derive_seed(2, 2, s)).entries(0, 0);
    mean += e * e;
    sq += e * e * e * e;
  }
  mean /= trials;
  const double se = std::sqrt((sq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 1.0 / n) <= 4.0 * se);
}

TEST_CASE("haar left invariance (two-sample Kolmogorov-Smirnov)") {
  const int n = 8;
  const int samples = 2000;
  const OrthogonalMatrix p = haar_orthogonal(n, 777);
  std::vector<double> a(samples), b(samples);
  for (int s = 0; s < samples; ++s) {
    a[s] = haar_orthogonal(n, derive_seed(3, 1, s)).entries(0, 0);
    b[s] = (p.entries * haar_orthogonal(n, derive_seed(3, 2, s)).entries)(0, 0);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) - static_cast<double>(j)) / samples);
  }
  const double critical = 1.6276 * std::sqrt(2.0 / samples);  // 1% level
  CHECK(d < critical);
}

TEST_CASE("rotation: identity, inverse, Parseval, evaluation-order identity") {
  const int n = 16;
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(n, grid);

  OrthogonalMatrix identity{Eigen::MatrixXd::Identity(n, n)};
  const SampledSystem same = rotate_system(trig, identity);
  CHECK((same.values - trig.values).cwiseAbs().maxCoeff() == 0.0);

  const OrthogonalMatrix o = haar_orthogonal(n, 5);
  const SampledSystem rotated = rotate_system(trig, o);
  CHECK(rotated.gram_error() < 1e-8);
  CHECK(rotated.bounded);

  OrthogonalMatrix inverse{o.entries.transpose()};
  const SampledSystem back = rotate_system(rotated, inverse);
  CHECK((back.values - trig.values).cwiseAbs().maxCoeff() < 1e-8);

  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    CoeffVector a{rng.normal_vector(n)};
    CHECK(lp_norm(synthesize(a, rotated), 2.0) ==
          doctest::Approx(a.l2_norm()).epsilon(1e-8));

    // sum_n a_n psi_n = sum_i (O a)_i phi_i.
    const Eigen::Map<const Eigen::VectorXd> av(a.entries.data(), n);
    Eigen::VectorXd oa = o.entries * av;
    CoeffVector rotated_coeffs;
    rotated_coeffs.entries.assign(oa.data(), oa.data() + n);
    CHECK(lp_norm(synthesize(a, rotated), 2.0) ==
          doctest::Approx(lp_norm(synthesize(rotated_coeffs, trig), 2.0)).epsilon(1e-10));
  }

  OrthogonalMatrix wrong{Eigen::MatrixXd::Identity(n + 2, n + 2)};
  CHECK_THROWS_AS(rotate_system(trig, wrong), std::invalid_argument);
}

TEST_CASE("gaussian sequence determinism and moments") {
  const std::vector<double> a = gaussian_sequence(100, 9);
  const std::vector<double> b = gaussian_sequence(100, 9);
  CHECK(a == b);

  const std::size_t n = 100000;
  const std::vector<double> g = gaussian_sequence(n, 10);
  double mean = 0.0, var = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(n);
  for (double v : g) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n - 1);
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("reweighting: flat density is a no-op") {
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(16, grid);
  const ReweightResult rw = reweight_system(trig);
  for (double nu : rw.density.values) CHECK(nu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rw.system.values - trig.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(rw.system.boundedness_excess()) < 1e-9);
}

TEST_CASE("reweighting rejects a vanishing density") {
  // Two indicator-style rows supported on the first two points only.
  const GridPtr grid = make_uniform_grid(4);
  SampledSystem s;
  s.values = Eigen::MatrixXd::Zero(2, 4);
  s.values(0, 0) = 2.0;
  s.values(1, 1) = 2.0;
  s.grid = grid;
  CHECK(s.gram_error() < 1e-12);
  CHECK_THROWS_WITH_AS(reweight_system(s),
                       "reweight_system: degenerate density (nu = 0 at a grid point)",
                       std::runtime_error);
}

TEST_CASE("masked system has non-constant density and stays orthonormal") {
  const int n = 16;
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(n, grid);
  std::vector<double> mask(grid->size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * grid->point(i));
  }
  const SampledSystem masked = masked_orthonormal_system(trig, mask);
  CHECK(masked.gram_error() < 1e-8);
  CHECK_FALSE(masked.bounded);
  const ReweightResult rw = reweight_system(masked);
  const double nu_min = *std::min_element(rw.density.values.begin(), rw.density.values.end());
  const double nu_max = *std::max_element(rw.density.values.begin(), rw.density.values.end());
  CHECK(nu_max - nu_min > 0.1);
  CHECK(std::abs(rw.system.boundedness_excess()) < 1e-9);
}

TEST_CASE("change-of-measure identity for the square variation") {
  const int n = 16;
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(n, grid);
  std::vector<double> mask(grid->size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * grid->point(i)) +
              0.25 * std::cos(6.0 * std::numbers::pi * grid->point(i));
  }
  const SampledSystem base = masked_orthonormal_system(trig, mask);
  const ReweightResult rw = reweight_system(base);
  for (int t = 0; t < 20; ++t) {
    const OrthogonalMatrix o = haar_orthogonal(n, derive_seed(5, 1, t));
    const SampledSystem base_rot = rotate_system(base, o);
    const SampledSystem psi_rot = rotate_system(rw.system, o);
    const CoeffVector a{gaussian_sequence(n, derive_seed(5, 2, t))};
    // Both sides integrate the same pointwise max over partitions; the
    // right side carries the density inside its grid weights.
    const double lhs = std::pow(v_r_field(a, base_rot, 2.0).norm2, 2);
    const double rhs = std::pow(v_r_field(a, psi_rot, 2.0).norm2, 2);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("coefficient support counting") {
  CoeffVector a{{0.0, 1.0, 0.0, -2.0, 0.0}};
  CHECK(a.support() == 2);
  CHECK(a.l2_norm() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("matrix dumps round-trip") {
  Rng rng(11);
  Eigen::MatrixXd m(5, 7);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 7; ++j) m(i, j) = rng.normal();
  }
  const std::string bin_path = "test_io_matrix.bin";
  const std::string csv_path = "test_io_matrix.csv";
  save_matrix_binary(m, bin_path);
  save_matrix_csv(m, csv_path);
  const Eigen::MatrixXd from_bin = load_matrix_binary(bin_path);
  const Eigen::MatrixXd from_csv = load_matrix_csv(csv_path);
  CHECK((from_bin - m).cwiseAbs().maxCoeff() == 0.0);
  CHECK((from_csv - m).cwiseAbs().maxCoeff() == 0.0);  // %.17g round-trips exactly
  std::remove(bin_path.c_str());
  std::remove(csv_path.c_str());
}
