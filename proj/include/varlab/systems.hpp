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

#ifndef VARLAB_SYSTEMS_HPP_
#define VARLAB_SYSTEMS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "varlab/grid.hpp"

namespace varlab {

/// Expansion coefficients a_1..a_N.
struct CoeffVector {
  std::vector<double> entries;

  std::size_t size() const { return entries.size(); }
  /// Number of nonzero entries.
  std::size_t support() const;
  double l2_norm() const;
};

/// An orthonormal system evaluated on a grid. Row n of `values` holds
/// phi_n at every grid point. Constructors verify the Gram identity
/// sum_x w(x) phi_m(x) phi_n(x) = delta_{mn} to 1e-8 entrywise; a system
/// carries `bounded = true` when sum_n phi_n(x)^2 <= N holds pointwise.
struct SampledSystem {
  Eigen::MatrixXd values;  // N x X
  GridPtr grid;
  bool bounded = false;

  int size() const { return static_cast<int>(values.rows()); }

  /// Max entrywise deviation of the Gram matrix from the identity.
  double gram_error() const;

  /// Max over grid points of sum_n phi_n(x)^2 - N.
  double boundedness_excess() const;
};

/// Throws if the Gram deviation exceeds 1e-8.
void validate_system(const SampledSystem& system);

struct OrthogonalMatrix {
  Eigen::MatrixXd entries;

  int size() const { return static_cast<int>(entries.rows()); }
  /// Max entrywise deviation of O^T O from the identity.
  double orth_error() const;
};

/// Real trigonometric system of even size N: rows are
/// sqrt(2) cos(2 pi j x), sqrt(2) sin(2 pi j x) for j = 1..N/2, ordered
/// (cos 1, sin 1, cos 2, sin 2, ...). Requires at least 2N+2 grid
/// points; on a uniform grid of >= 2N+1 points the Gram identity is
/// exact up to rounding. The system is bounded: sum_n phi_n(x)^2 = N.
SampledSystem trig_system(int n, GridPtr grid);

/// Haar-distributed orthogonal matrix: iid standard normal fill,
/// Householder QR, then each column's sign flipped so the matching
/// R diagonal entry is positive. Redraws on numerical rank deficiency.
OrthogonalMatrix haar_orthogonal(int n, std::uint64_t seed);

/// Basis change psi_n(x) = sum_i o_{i,n} phi_i(x). Spans the same
/// space; preserves orthonormality and the bounded flag.
SampledSystem rotate_system(const SampledSystem& base, const OrthogonalMatrix& o);

/// iid standard normal sequence, deterministic in the seed.
std::vector<double> gaussian_sequence(std::size_t n, std::uint64_t seed);

struct ReweightResult {
  SampledSystem system;      // psi_n = nu^{-1/2} phi_n on the reweighted grid
  SampledFunction density;   // nu(x) = N^{-1} sum_n phi_n(x)^2, on the base grid
};

/// Change of measure: divides each function by nu^{1/2} and multiplies
/// the grid weights by nu, yielding an orthonormal system with
/// sum_n psi_n(x)^2 = N exactly. Throws ("degenerate density") when
/// nu vanishes at a grid point.
ReweightResult reweight_system(const SampledSystem& base);

/// Multiplies every function pointwise by a positive mask and restores
/// orthonormality through the Cholesky factor of the new Gram matrix.
/// Produces systems with genuinely non-constant nu for change-of-measure
/// tests. The result is generally not bounded.
SampledSystem masked_orthonormal_system(const SampledSystem& base,
                                        const std::vector<double>& mask);

/// f = sum_n a_n phi_n on the system's grid.
SampledFunction synthesize(const CoeffVector& coeffs, const SampledSystem& system);

}  // namespace varlab

#endif  // VARLAB_SYSTEMS_HPP_
