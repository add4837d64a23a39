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
#include <limits>
#include <stdexcept>
#include <vector>

#include "varlab/parallel.hpp"

namespace varlab {

namespace detail {

double v2_squared_from_prefix(const double* p, std::size_t n, double* dp) {
  dp[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double pj = p[j];
    // Four independent accumulators to keep the reduction pipelined;
    // max is exact, so the lane split cannot change the result.
    double b0 = -std::numeric_limits<double>::infinity();
    double b1 = b0, b2 = b0, b3 = b0;
    std::size_t i = 0;
    for (; i + 4 <= j; i += 4) {
      const double t0 = pj - p[i + 0];
      const double t1 = pj - p[i + 1];
      const double t2 = pj - p[i + 2];
      const double t3 = pj - p[i + 3];
      const double c0 = dp[i + 0] + t0 * t0;
      const double c1 = dp[i + 1] + t1 * t1;
      const double c2 = dp[i + 2] + t2 * t2;
      const double c3 = dp[i + 3] + t3 * t3;
      b0 = b0 > c0 ? b0 : c0;
      b1 = b1 > c1 ? b1 : c1;
      b2 = b2 > c2 ? b2 : c2;
      b3 = b3 > c3 ? b3 : c3;
    }
    for (; i < j; ++i) {
      const double t = pj - p[i];
      const double c = dp[i] + t * t;
      b0 = b0 > c ? b0 : c;
    }
    const double left = b0 > b1 ? b0 : b1;
    const double right = b2 > b3 ? b2 : b3;
    dp[j] = left > right ? left : right;
  }
  return dp[n];
}

namespace {

double v_r_from_prefix(const double* p, std::size_t n, double r, double* dp) {
  dp[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double pj = p[j];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < j; ++i) {
      const double cand = dp[i] + std::pow(std::abs(pj - p[i]), r);
      if (cand > best) best = cand;
    }
    dp[j] = best;
  }
  return std::pow(dp[n], 1.0 / r);
}

}  // namespace

}  // namespace detail

namespace {

void check_r(double r) {
  if (!(r >= 1.0) || std::isnan(r) || std::isinf(r)) {
    throw std::invalid_argument("variation: r must satisfy 1 <= r < infinity");
  }
}

std::vector<double> prefix_sums(std::span<const double> d) {
  std::vector<double> p(d.size() + 1);
  p[0] = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) p[i + 1] = p[i] + d[i];
  return p;
}

}  // namespace

double v_r_pointwise(std::span<const double> d, double r) {
  check_r(r);
  if (d.empty()) throw std::invalid_argument("v_r_pointwise: empty sequence");
  const std::vector<double> p = prefix_sums(d);
  std::vector<double> dp(d.size() + 1);
  if (r == 2.0) {
    return std::sqrt(detail::v2_squared_from_prefix(p.data(), d.size(), dp.data()));
  }
  return detail::v_r_from_prefix(p.data(), d.size(), r, dp.data());
}

double v_r_bruteforce(std::span<const double> d, double r) {
  check_r(r);
  if (d.empty()) throw std::invalid_argument("v_r_bruteforce: empty sequence");
  if (d.size() > 20) throw std::invalid_argument("v_r_bruteforce: N must be <= 20");
  const std::vector<double> p = prefix_sums(d);
  const std::size_t n = d.size();
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    // Bit b set means a cut between positions b+1 and b+2 (1-based).
    double total = 0.0;
    std::size_t start = 0;
    for (std::size_t b = 0; b < n - 1; ++b) {
      if (mask & (std::uint64_t{1} << b)) {
        total += std::pow(std::abs(p[b + 1] - p[start]), r);
        start = b + 1;
      }
    }
    total += std::pow(std::abs(p[n] - p[start]), r);
    if (total > best) best = total;
  }
  return std::pow(best, 1.0 / r);
}

double maximal_pointwise(std::span<const double> d) {
  if (d.empty()) throw std::invalid_argument("maximal_pointwise: empty sequence");
  double acc = 0.0;
  double best = 0.0;
  for (double v : d) {
    acc += v;
    best = std::max(best, std::abs(acc));
  }
  return best;
}

PrefixTable make_prefix_table(const CoeffVector& coeffs, const SampledSystem& system) {
  if (static_cast<int>(coeffs.size()) != system.size()) {
    throw std::invalid_argument("make_prefix_table: dimension mismatch");
  }
  const Eigen::Index n = system.values.rows();
  const Eigen::Index x_count = system.values.cols();
  PrefixTable table;
  table.grid = system.grid;
  table.p.resize(n + 1, x_count);
  table.p.row(0).setZero();
  for (Eigen::Index l = 0; l < n; ++l) {
    table.p.row(l + 1) =
        table.p.row(l) + coeffs.entries[static_cast<std::size_t>(l)] * system.values.row(l);
  }
  return table;
}

VariationResult v_r_field(const CoeffVector& coeffs, const SampledSystem& system,
                          double r) {
  check_r(r);
  if (static_cast<int>(coeffs.size()) != system.size()) {
    throw std::invalid_argument("v_r_field: dimension mismatch");
  }
  const std::size_t n = coeffs.size();
  const std::size_t x_count = system.grid->size();
  std::vector<double> field(x_count);
  const double* a = coeffs.entries.data();
  parallel_for(x_count, [&](std::size_t begin, std::size_t end) {
    std::vector<double> p(n + 1), dp(n + 1);
    for (std::size_t x = begin; x < end; ++x) {
      const double* col = system.values.col(static_cast<Eigen::Index>(x)).data();
      p[0] = 0.0;
      for (std::size_t i = 0; i < n; ++i) p[i + 1] = p[i] + a[i] * col[i];
      if (r == 2.0) {
        field[x] = std::sqrt(detail::v2_squared_from_prefix(p.data(), n, dp.data()));
      } else {
        field[x] = detail::v_r_from_prefix(p.data(), n, r, dp.data());
      }
    }
  });
  VariationResult out;
  out.r = r;
  out.pointwise = SampledFunction(system.grid, std::move(field));
  out.norm2 = lp_norm(out.pointwise, 2.0);
  return out;
}

double lil_statistic(std::span<const double> g) {
  if (g.size() < 16) throw std::invalid_argument("lil_statistic: N must be >= 16");
  const std::vector<double> p = prefix_sums(g);
  std::vector<double> dp(g.size() + 1);
  const double v2sq = detail::v2_squared_from_prefix(p.data(), g.size(), dp.data());
  const auto n = static_cast<double>(g.size());
  return v2sq / (2.0 * n * std::log(std::log(n)));
}

}  // namespace varlab
