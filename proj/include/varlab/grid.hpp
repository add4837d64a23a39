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

#ifndef VARLAB_GRID_HPP_
#define VARLAB_GRID_HPP_

#include <cstddef>
#include <memory>
#include <vector>

namespace varlab {

/// Discretized probability space: sample points in [0,1) with positive
/// weights summing to 1. All integrals in the library are weighted sums
/// over a Grid. Immutable after construction.
class Grid {
 public:
  /// Validates and takes ownership. Throws std::invalid_argument if the
  /// points are not strictly increasing in [0,1), the lengths differ, a
  /// weight is nonpositive, or the weights do not sum to 1 (1e-12).
  Grid(std::vector<double> points, std::vector<double> weights);

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Uniform grid {0, 1/x, ..., (x-1)/x} with equal weights 1/x.
GridPtr make_uniform_grid(std::size_t x);

/// Same points as `base` with weights reweighted by `density` and the
/// result validated as a probability measure.
GridPtr reweight_grid(const Grid& base, const std::vector<double>& density);

/// A real function sampled on a grid, one value per grid point.
struct SampledFunction {
  GridPtr grid;
  std::vector<double> values;

  SampledFunction() = default;
  SampledFunction(GridPtr g, std::vector<double> v);
};

/// Weighted sum of the values.
double integrate(const SampledFunction& f);

/// (sum_x w(x) |f(x)|^p)^{1/p}; p = infinity gives max |f|.
/// Throws for p < 1.
double lp_norm(const SampledFunction& f, double p);

double sup_abs(const SampledFunction& f);

}  // namespace varlab

#endif  // VARLAB_GRID_HPP_
