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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "varlab/rng.hpp"

namespace varlab {

namespace {

constexpr double kGramTolerance = 1e-8;

Eigen::VectorXd weight_vector(const Grid& grid) {
  return Eigen::Map<const Eigen::VectorXd>(grid.weights().data(),
                                           static_cast<Eigen::Index>(grid.size()));
}

}  // namespace

std::size_t CoeffVector::support() const {
  std::size_t count = 0;
  for (double a : entries) {
    if (a != 0.0) ++count;
  }
  return count;
}

double CoeffVector::l2_norm() const {
  double acc = 0.0;
  for (double a : entries) acc += a * a;
  return std::sqrt(acc);
}

double SampledSystem::gram_error() const {
  const Eigen::VectorXd w = weight_vector(*grid);
  Eigen::MatrixXd gram = values * w.asDiagonal() * values.transpose();
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

double SampledSystem::boundedness_excess() const {
  const Eigen::VectorXd column_sq = values.colwise().squaredNorm();
  return column_sq.maxCoeff() - static_cast<double>(size());
}

void validate_system(const SampledSystem& system) {
  const double err = system.gram_error();
  if (!(err < kGramTolerance)) {
    throw std::runtime_error("SampledSystem: Gram matrix deviates from identity by " +
                             std::to_string(err));
  }
}

double OrthogonalMatrix::orth_error() const {
  Eigen::MatrixXd g = entries.transpose() * entries;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

SampledSystem trig_system(int n, GridPtr grid) {
  if (n <= 0 || n % 2 != 0) {
    throw std::invalid_argument("trig_system: N must be a positive even integer");
  }
  if (!grid || grid->size() < static_cast<std::size_t>(2 * n + 2)) {
    throw std::invalid_argument("trig_system: grid must have at least 2N+2 points");
  }
  const auto x_count = static_cast<Eigen::Index>(grid->size());
  SampledSystem system;
  system.values.resize(n, x_count);
  system.grid = std::move(grid);
  system.bounded = true;
  const double root2 = std::numbers::sqrt2;
  for (Eigen::Index x = 0; x < x_count; ++x) {
    const double t = system.grid->point(static_cast<std::size_t>(x));
    for (int j = 1; j <= n / 2; ++j) {
      const double angle = 2.0 * std::numbers::pi * j * t;
      system.values(2 * (j - 1), x) = root2 * std::cos(angle);
      system.values(2 * (j - 1) + 1, x) = root2 * std::sin(angle);
    }
  }
  validate_system(system);
  return system;
}

OrthogonalMatrix haar_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_orthogonal: N must be >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::MatrixXd gauss(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) gauss(i, j) = rng.normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      const double d = r(j, j);
      if (std::abs(d) < 1e-12) {
        degenerate = true;
        break;
      }
      if (d < 0.0) q.col(j) = -q.col(j);
    }
    if (degenerate) continue;
    OrthogonalMatrix o{std::move(q)};
    if (o.orth_error() < 1e-10) return o;
  }
  throw std::runtime_error("haar_orthogonal: repeated rank deficiency");
}

SampledSystem rotate_system(const SampledSystem& base, const OrthogonalMatrix& o) {
  if (o.size() != base.size()) {
    throw std::invalid_argument("rotate_system: dimension mismatch");
  }
  SampledSystem rotated;
  // Row n of the result is sum_i o_{i,n} phi_i.
  rotated.values = o.entries.transpose() * base.values;
  rotated.grid = base.grid;
  rotated.bounded = base.bounded;
  validate_system(rotated);
  return rotated;
}

std::vector<double> gaussian_sequence(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gaussian_sequence: N must be >= 1");
  Rng rng(seed);
  return rng.normal_vector(n);
}

ReweightResult reweight_system(const SampledSystem& base) {
  const std::size_t x_count = base.grid->size();
  const auto n = static_cast<double>(base.size());
  std::vector<double> nu(x_count);
  for (std::size_t x = 0; x < x_count; ++x) {
    nu[x] = base.values.col(static_cast<Eigen::Index>(x)).squaredNorm() / n;
    if (!(nu[x] > 0.0)) {
      throw std::runtime_error("reweight_system: degenerate density (nu = 0 at a grid point)");
    }
  }
  GridPtr new_grid = reweight_grid(*base.grid, nu);
  SampledSystem reweighted;
  reweighted.values = base.values;
  for (std::size_t x = 0; x < x_count; ++x) {
    reweighted.values.col(static_cast<Eigen::Index>(x)) /= std::sqrt(nu[x]);
  }
  reweighted.grid = new_grid;
  reweighted.bounded = true;
  validate_system(reweighted);
  return ReweightResult{std::move(reweighted),
                        SampledFunction(base.grid, std::move(nu))};
}

SampledSystem masked_orthonormal_system(const SampledSystem& base,
                                        const std::vector<double>& mask) {
  if (mask.size() != base.grid->size()) {
    throw std::invalid_argument("masked_orthonormal_system: mask length mismatch");
  }
  for (double m : mask) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("masked_orthonormal_system: mask must be positive");
    }
  }
  Eigen::MatrixXd masked = base.values;
  for (std::size_t x = 0; x < mask.size(); ++x) {
    masked.col(static_cast<Eigen::Index>(x)) *= mask[x];
  }
  const Eigen::VectorXd w = weight_vector(*base.grid);
  const Eigen::MatrixXd gram = masked * w.asDiagonal() * masked.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("masked_orthonormal_system: masked Gram not positive definite");
  }
  SampledSystem out;
  // L^{-1} (masked rows) has Gram L^{-1} G L^{-T} = I.
  out.values = llt.matrixL().solve(masked);
  out.grid = base.grid;
  out.bounded = false;
  validate_system(out);
  return out;
}

SampledFunction synthesize(const CoeffVector& coeffs, const SampledSystem& system) {
  if (static_cast<int>(coeffs.size()) != system.size()) {
    throw std::invalid_argument("synthesize: coefficient count must match the system size");
  }
  const Eigen::Map<const Eigen::VectorXd> a(coeffs.entries.data(),
                                            static_cast<Eigen::Index>(coeffs.size()));
  Eigen::VectorXd f = system.values.transpose() * a;
  return SampledFunction(system.grid,
                         std::vector<double>(f.data(), f.data() + f.size()));
}

}  // namespace varlab
