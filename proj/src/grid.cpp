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
#include <stdexcept>
#include <utility>

namespace varlab {

Grid::Grid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size()) {
    throw std::invalid_argument("Grid: points/weights must be nonempty and of equal length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i] >= 0.0 && points_[i] < 1.0)) {
      throw std::invalid_argument("Grid: points must lie in [0,1)");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw std::invalid_argument("Grid: points must be strictly increasing");
    }
    if (!(weights_[i] > 0.0)) {
      throw std::invalid_argument("Grid: weights must be positive");
    }
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("Grid: weights must sum to 1");
  }
}

GridPtr make_uniform_grid(std::size_t x) {
  if (x == 0) throw std::invalid_argument("make_uniform_grid: x must be >= 1");
  std::vector<double> points(x), weights(x, 1.0 / static_cast<double>(x));
  for (std::size_t i = 0; i < x; ++i) {
    points[i] = static_cast<double>(i) / static_cast<double>(x);
  }
  return std::make_shared<Grid>(std::move(points), std::move(weights));
}

GridPtr reweight_grid(const Grid& base, const std::vector<double>& density) {
  if (density.size() != base.size()) {
    throw std::invalid_argument("reweight_grid: density length mismatch");
  }
  std::vector<double> weights(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    weights[i] = base.weight(i) * density[i];
  }
  return std::make_shared<Grid>(base.points(), std::move(weights));
}

SampledFunction::SampledFunction(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid || values.size() != grid->size()) {
    throw std::invalid_argument("SampledFunction: values length must match the grid");
  }
}

double integrate(const SampledFunction& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    acc += f.grid->weight(i) * f.values[i];
  }
  return acc;
}

double lp_norm(const SampledFunction& f, double p) {
  if (std::isinf(p)) return sup_abs(f);
  if (!(p >= 1.0) || std::isnan(p)) {
    throw std::invalid_argument("lp_norm: p must be >= 1");
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      acc += f.grid->weight(i) * f.values[i] * f.values[i];
    }
    return std::sqrt(acc);
  }
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    acc += f.grid->weight(i) * std::pow(std::abs(f.values[i]), p);
  }
  return std::pow(acc, 1.0 / p);
}

double sup_abs(const SampledFunction& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace varlab
