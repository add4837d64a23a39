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

#include "varlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "varlab/orlicz.hpp"
#include "varlab/parallel.hpp"
#include "varlab/rng.hpp"

namespace varlab {

namespace {

void check_nm(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("bounds: need 1 <= m <= N");
}

double log_binomial(int n, int m) {
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

}  // namespace

CoveringBound covering_bound(int n, int m, double eps) {
  check_nm(n, m);
  // The covering statement concerns 0 < eps <= 1, but the formula is
  // well defined (and trivial) beyond, so only positivity is required.
  if (!(eps > 0.0)) {
    throw std::invalid_argument("covering_bound: eps must be positive");
  }
  const double log_value = log_binomial(n, m) + m * std::log(3.0 / eps);
  return {std::exp(log_value), log_value};
}

double packing_ceiling(int n, int m, double eps) {
  check_nm(n, m);
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("packing_ceiling: eps must lie in (0, 1]");
  }
  return std::exp(log_binomial(n, m) + m * std::log(1.0 + 4.0 / eps));
}

std::vector<std::vector<double>> packing_points(int n, int m, double eps,
                                                std::uint64_t seed, int stop_after) {
  check_nm(n, m);
  if (n > 12) throw std::invalid_argument("packing_count: N must be <= 12 (cost guard)");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("packing_count: eps must lie in (0, 1]");
  }
  if (stop_after < 1) throw std::invalid_argument("packing_count: stop_after must be >= 1");

  Rng rng(seed);
  std::vector<std::vector<double>> kept;
  const double min_dist_sq = (eps / 2.0) * (eps / 2.0);
  int rejections = 0;
  std::vector<double> candidate(static_cast<std::size_t>(n));
  while (rejections < stop_after) {
    // Uniform draw from the m-sparse unit ball: uniform support,
    // uniform direction in that subspace, radius U^{1/m}.
    std::fill(candidate.begin(), candidate.end(), 0.0);
    const auto support = rng.distinct_indices(static_cast<std::size_t>(n),
                                              static_cast<std::size_t>(m));
    std::vector<double> direction = rng.normal_vector(static_cast<std::size_t>(m));
    double norm_sq = 0.0;
    for (double v : direction) norm_sq += v * v;
    if (norm_sq == 0.0) continue;
    const double radius =
        std::pow(rng.uniform01(), 1.0 / static_cast<double>(m)) / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < support.size(); ++i) {
      candidate[support[i]] = direction[i] * radius;
    }
    bool separated = true;
    for (const auto& point : kept) {
      double dist_sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = candidate[static_cast<std::size_t>(i)] - point[static_cast<std::size_t>(i)];
        dist_sq += d * d;
      }
      if (dist_sq < min_dist_sq) {
        separated = false;
        break;
      }
    }
    if (separated) {
      kept.push_back(candidate);
      rejections = 0;
    } else {
      ++rejections;
    }
  }
  return kept;
}

int packing_count(int n, int m, double eps, std::uint64_t seed, int stop_after) {
  return static_cast<int>(packing_points(n, m, eps, seed, stop_after).size());
}

SparseGaussianSup sparse_gaussian_sup(int n, int m, int trials, std::uint64_t seed) {
  check_nm(n, m);
  if (trials < 1) throw std::invalid_argument("sparse_gaussian_sup: trials must be >= 1");
  std::vector<double> sups(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(derive_seed(seed, 0x5350u, t));
      std::vector<double> g_sq(static_cast<std::size_t>(n));
      for (auto& v : g_sq) {
        const double g = rng.normal();
        v = g * g;
      }
      std::nth_element(g_sq.begin(), g_sq.begin() + (n - m), g_sq.end());
      double top = 0.0;
      for (int i = n - m; i < n; ++i) top += g_sq[static_cast<std::size_t>(i)];
      sups[t] = std::sqrt(top);
    }
  });
  double mean = 0.0;
  for (double s : sups) mean += s;
  mean /= static_cast<double>(trials);
  const double ratio =
      mean / std::sqrt(static_cast<double>(m) *
                       std::log(static_cast<double>(n) / static_cast<double>(m) + 1.0));
  return {mean, ratio};
}

double dudley_integral(int n, int m) {
  check_nm(n, m);
  const double base = static_cast<double>(m) *
                      std::log(static_cast<double>(n) / static_cast<double>(m) + 1.0);
  // eps = t^2 tames the ln(3/eps) endpoint; d eps = 2t dt.
  constexpr int kPoints = 1024;
  double acc = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / kPoints;
    const double eps = t * t;
    acc += std::sqrt(base + m * std::log(3.0 / eps)) * 2.0 * t;
  }
  return acc / kPoints;
}

double gaussian_combination_gamma_norm(const SampledSystem& system, int m,
                                       int trials, std::uint64_t seed) {
  const int n = system.size();
  check_nm(n, m);
  if (!system.bounded) {
    throw std::invalid_argument(
        "gaussian_combination_gamma_norm: system must carry the bounded flag");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const OrliczModulus gamma_star = OrliczModulus::truncated(
      k_star(static_cast<std::size_t>(n), static_cast<std::size_t>(m)));
  std::vector<double> ratios(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      CoeffVector g{gaussian_sequence(static_cast<std::size_t>(n),
                                      derive_seed(seed, 0x4743u, t))};
      ratios[t] = luxemburg_norm(synthesize(g, system), gamma_star) /
                  std::sqrt(static_cast<double>(n));
    }
  });
  double mean = 0.0;
  for (double r : ratios) mean += r;
  return mean / static_cast<double>(trials);
}

double b_probe(const SampledSystem& base, const OrthogonalMatrix& o, int m,
               int probes, std::uint64_t seed) {
  const int n = base.size();
  check_nm(n, m);
  if (probes < 1) throw std::invalid_argument("b_probe: probes must be >= 1");
  const SampledSystem rotated = rotate_system(base, o);
  const OrliczModulus gamma_star = OrliczModulus::truncated(
      k_star(static_cast<std::size_t>(n), static_cast<std::size_t>(m)));
  std::vector<double> values(static_cast<std::size_t>(probes));
  parallel_for(static_cast<std::size_t>(probes), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(derive_seed(seed, 0x4250u, t));
      CoeffVector a;
      a.entries.assign(static_cast<std::size_t>(n), 0.0);
      const auto support = rng.distinct_indices(static_cast<std::size_t>(n),
                                                static_cast<std::size_t>(m));
      double norm_sq = 0.0;
      std::vector<double> draws(support.size());
      for (auto& v : draws) {
        v = rng.normal();
        norm_sq += v * v;
      }
      const double inv_norm = 1.0 / std::sqrt(norm_sq);
      for (std::size_t i = 0; i < support.size(); ++i) {
        a.entries[support[i]] = draws[i] * inv_norm;
      }
      values[t] = luxemburg_norm(synthesize(a, rotated), gamma_star);
    }
  });
  return *std::max_element(values.begin(), values.end());
}

double hs_lipschitz_check(const SampledSystem& system, const Eigen::MatrixXd& m_matrix,
                          const CoeffVector& a, int m) {
  const int n = system.size();
  check_nm(n, m);
  if (m_matrix.rows() != n || m_matrix.cols() != n ||
      static_cast<int>(a.size()) != n) {
    throw std::invalid_argument("hs_lipschitz_check: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> av(a.entries.data(), n);
  // Coefficients of sum_{i,n} M_{i,n} a_i phi_n.
  CoeffVector combined;
  Eigen::VectorXd c = m_matrix.transpose() * av;
  combined.entries.assign(c.data(), c.data() + c.size());
  const double k = k_star(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  const double lhs =
      luxemburg_norm(synthesize(combined, system), OrliczModulus::truncated(k));
  const double rhs = std::exp(k * k / 2.0) * m_matrix.norm() * av.norm();
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

}  // namespace varlab
