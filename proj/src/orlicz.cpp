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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varlab {

OrliczModulus OrliczModulus::gauss(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("OrliczModulus::gauss: c must be positive");
  return {Kind::kGauss, c};
}

OrliczModulus OrliczModulus::truncated(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("OrliczModulus::truncated: K must be >= 1");
  return {Kind::kTruncated, k};
}

double modulus_value(double t, const OrliczModulus& mod) {
  if (mod.kind == OrliczModulus::Kind::kGauss) {
    return std::expm1(mod.param * t * t);
  }
  const double k = mod.param;
  if (std::abs(t) <= k) return std::expm1(t * t);
  const double ek2 = std::exp(k * k);
  return ek2 * t * t + ek2 * (1.0 - k * k) - 1.0;
}

namespace {

double constraint_integral(const SampledFunction& f, const OrliczModulus& mod,
                           double lambda) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    acc += f.grid->weight(i) * modulus_value(f.values[i] / lambda, mod);
    if (std::isinf(acc)) return acc;
  }
  return acc;
}

}  // namespace

double luxemburg_norm(const SampledFunction& f, const OrliczModulus& mod) {
  double l2_sq = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double v = f.values[i];
    if (!std::isfinite(v)) {
      throw std::invalid_argument("luxemburg_norm: non-finite sample");
    }
    l2_sq += f.grid->weight(i) * v * v;
    sup = std::max(sup, std::abs(v));
  }
  if (sup == 0.0) return 0.0;

  const double c = mod.kind == OrliczModulus::Kind::kGauss ? mod.param : 1.0;
  const double ln2 = std::log(2.0);
  // Phi(t) >= c t^2 makes lo infeasible; Phi(sup/hi) <= 1 pointwise
  // makes hi feasible (factor 2 for slack).
  double lo = std::sqrt(c * l2_sq);
  double hi = 2.0 * sup * std::sqrt(c / ln2);
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-9 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (constraint_integral(f, mod, mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double k_star(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw std::invalid_argument("k_star: need 1 <= m <= N");
  const double ratio = static_cast<double>(n) / static_cast<double>(m);
  const double inner = ratio * std::log(ratio + 1.0);
  if (inner <= 1.0) return 1.0;
  return std::max(1.0, std::sqrt(0.4 * std::log(inner)));
}

SplitPair split_gamma_k(const SampledFunction& f, double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("split_gamma_k: K must be >= 1");
  const double gamma = 2.0 * luxemburg_norm(f, OrliczModulus::truncated(k));
  SplitPair out;
  out.gamma = gamma;
  std::vector<double> g(f.values.size(), 0.0), e(f.values.size(), 0.0);
  if (gamma > 0.0) {
    const double threshold = k * gamma;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (std::abs(f.values[i]) <= threshold) {
        g[i] = f.values[i];
      } else {
        e[i] = f.values[i];
      }
    }
  }
  out.g_part = SampledFunction(f.grid, std::move(g));
  out.e_part = SampledFunction(f.grid, std::move(e));
  return out;
}

double split_e_part_bound_sq(double gamma, double k) {
  const double ek2 = std::exp(k * k);
  return gamma * gamma / ek2 * (1.0 + (ek2 * (k * k - 1.0) + 1.0) / (ek2 - 1.0));
}

double tail_measure(const SampledFunction& f, double lambda) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (std::abs(f.values[i]) >= lambda) acc += f.grid->weight(i);
  }
  return acc;
}

const std::vector<double>& profile_p_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> p;
    for (double v = 2.0; v <= 32.0; v += 2.0) p.push_back(v);
    return p;
  }();
  return grid;
}

SubgaussianProfile subgaussian_profile(const SampledFunction& f, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("subgaussian_profile: A must be positive");
  SubgaussianProfile out;
  for (double p : profile_p_grid()) {
    out.c1 = std::max(out.c1, lp_norm(f, p) / (std::sqrt(p) * a));
  }
  const double sup = sup_abs(f);
  constexpr int kLevels = 64;
  out.lambdas.resize(kLevels);
  out.tail.resize(kLevels);
  for (int i = 0; i < kLevels; ++i) {
    const double lambda = sup * static_cast<double>(i) / (kLevels - 1);
    out.lambdas[i] = lambda;
    out.tail[i] = tail_measure(f, lambda);
  }
  out.g_ratio = luxemburg_norm(f, OrliczModulus::gauss(1.0)) / a;
  return out;
}

double gauss_constant_from_moment_bound(double c1) {
  if (!(c1 > 0.0)) throw std::invalid_argument("gauss_constant_from_moment_bound: c1 > 0");
  const double c_prime = 1.0 / (2.0 * std::numbers::e * c1 * c1);
  const double big_c = std::numbers::e;
  const double d2 = c_prime / 2.0;
  const double d1 = std::min(1.0, std::expm1(d2) / (big_c * std::exp(c_prime)));
  return d1 * d2;
}

}  // namespace varlab
