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

#include "varlab/selftest.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "varlab/bounds.hpp"
#include "varlab/grid.hpp"
#include "varlab/io.hpp"
#include "varlab/massdec.hpp"
#include "varlab/orlicz.hpp"
#include "varlab/rng.hpp"
#include "varlab/systems.hpp"
#include "varlab/variation.hpp"

namespace varlab {

namespace {

constexpr double kSlack = 1e-9;

class Battery {
 public:
  explicit Battery(std::uint64_t seed) : seed_(seed) {}

  // Tracks the worst margin of `value <= limit`; positive excess fails.
  void expect_at_most(const std::string& name, double value, double limit,
                      double slack = kSlack) {
    auto& state = worst_[name];
    const double excess = value - limit * (1.0 + slack) - slack;
    if (excess > state.excess) {
      state.excess = excess;
      std::ostringstream detail;
      detail << "value=" << format_double(value) << " limit=" << format_double(limit);
      state.detail = detail.str();
    }
  }

  void expect(const std::string& name, bool ok, const std::string& detail) {
    auto& state = worst_[name];
    if (!ok && state.excess <= 0.0) {
      state.excess = 1.0;
      state.detail = detail;
    } else if (state.excess <= 0.0) {
      state.excess = std::max(state.excess, -1.0);
    }
  }

  std::uint64_t seed() const { return seed_; }

  std::vector<CheckResult> results() const {
    std::vector<CheckResult> out;
    for (const auto& [name, state] : worst_) {
      out.push_back({name, state.excess <= 0.0,
                     state.excess <= 0.0 ? "ok" : state.detail});
    }
    return out;
  }

 private:
  struct Worst {
    double excess = -1.0;
    std::string detail;
  };
  std::uint64_t seed_;
  // std::map keeps the report order stable.
  std::map<std::string, Worst> worst_;
};

CoeffVector random_coeffs(Rng& rng, int n) {
  CoeffVector a;
  a.entries = rng.normal_vector(static_cast<std::size_t>(n));
  return a;
}

void check_systems(Battery& battery) {
  for (int n : {4, 16, 64}) {
    const GridPtr grid = make_uniform_grid(static_cast<std::size_t>(4 * n));
    const SampledSystem trig = trig_system(n, grid);
    battery.expect_at_most("systems/trig_gram_error", trig.gram_error(), 1e-8, 0.0);
    battery.expect_at_most("systems/trig_pointwise_sum", std::abs(trig.boundedness_excess()),
                           1e-9, 0.0);
    const OrthogonalMatrix o = haar_orthogonal(n, derive_seed(battery.seed(), 1, n));
    battery.expect_at_most("systems/haar_orth_error", o.orth_error(), 1e-10, 0.0);
    const SampledSystem rotated = rotate_system(trig, o);
    battery.expect_at_most("systems/rotated_gram_error", rotated.gram_error(), 1e-8, 0.0);

    Rng rng(derive_seed(battery.seed(), 2, n));
    for (int t = 0; t < 20; ++t) {
      const CoeffVector a = random_coeffs(rng, n);
      const double parseval =
          std::abs(lp_norm(synthesize(a, rotated), 2.0) - a.l2_norm());
      battery.expect_at_most("systems/parseval", parseval, 1e-8, 0.0);
    }
  }
}

void check_orlicz(Battery& battery) {
  const int n = 16;
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(n, grid);
  Rng rng(derive_seed(battery.seed(), 3));
  for (int t = 0; t < 200; ++t) {
    const SampledFunction f = synthesize(random_coeffs(rng, n), trig);
    const double l2 = lp_norm(f, 2.0);
    const double gauss_norm = luxemburg_norm(f, OrliczModulus::gauss(1.0));
    for (double k : {1.0, 1.5, 2.0, 3.0}) {
      const double trunc_norm = luxemburg_norm(f, OrliczModulus::truncated(k));
      battery.expect_at_most("orlicz/gamma_le_gauss", trunc_norm, gauss_norm);
      battery.expect_at_most("orlicz/gamma_le_l2", trunc_norm,
                             std::exp(k * k / 2.0) * l2);
    }
    for (double k : {1.0, 1.5, 2.0}) {
      const SplitPair split = split_gamma_k(f, k);
      const double g_norm = luxemburg_norm(split.g_part, OrliczModulus::gauss(1.0));
      battery.expect_at_most("orlicz/split_g_le_gamma", g_norm, split.gamma);
      const double e_sq = lp_norm(split.e_part, 2.0);
      battery.expect_at_most("orlicz/split_e_sq_bound", e_sq * e_sq,
                             split_e_part_bound_sq(split.gamma, k));
    }
  }

  // Tail implications at scale A.
  for (int t = 0; t < 100; ++t) {
    const SampledFunction f = synthesize(random_coeffs(rng, n), trig);
    const double c = 1.0;
    const double a_scale = luxemburg_norm(f, OrliczModulus::gauss(c));
    if (a_scale == 0.0) continue;
    const SubgaussianProfile profile = subgaussian_profile(f, a_scale);
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
      const double lambda = profile.lambdas[i];
      battery.expect_at_most(
          "orlicz/s3_subset_s2", profile.tail[i],
          2.0 * std::exp(-c * lambda * lambda / (a_scale * a_scale)));
    }
    const double c1 = profile.c1;
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
      const double lambda = profile.lambdas[i];
      const double p_star =
          lambda * lambda / (std::numbers::e * c1 * c1 * a_scale * a_scale);
      if (p_star < 2.0 || p_star > 32.0) continue;
      battery.expect_at_most("orlicz/s1_subset_s2", profile.tail[i],
                             std::numbers::e * std::exp(-p_star / 2.0));
    }
  }
}

void check_tree(Battery& battery) {
  Rng rng(derive_seed(battery.seed(), 4));
  for (int n : {16, 64}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<double> mass(static_cast<std::size_t>(n));
      for (auto& m : mass) {
        const double g = rng.normal();
        m = g * g;
      }
      const AdmissibleTree tree(mass);
      std::vector<int> separator_seen(static_cast<std::size_t>(n) + 1, 0);
      for (const auto& node : tree.nodes()) {
        if (node.empty()) continue;
        const auto& left = tree.node(node.left);
        const auto& right = tree.node(node.right);
        const bool tiling = (left.empty() ? node.lo == node.separator
                                          : left.lo == node.lo && left.hi == node.separator - 1) &&
                            (right.empty() ? node.hi == node.separator
                                           : right.lo == node.separator + 1 && right.hi == node.hi);
        battery.expect("massdec/tiling", tiling, "children do not tile the parent");
        if (node.mass > 0.0) {
          battery.expect("massdec/left_strict",
                         left.empty() || left.mass < node.mass / 2.0,
                         "left child mass not strictly below half");
          battery.expect_at_most("massdec/right_half", right.mass, node.mass / 2.0, 1e-12);
        }
        battery.expect_at_most("massdec/mass_level_decay", node.mass,
                               std::pow(2.0, -node.k), 1e-12);
        ++separator_seen[static_cast<std::size_t>(node.separator)];
      }
      bool unique = true;
      for (int j = 1; j <= n; ++j) unique = unique && separator_seen[static_cast<std::size_t>(j)] == 1;
      battery.expect("massdec/unique_separators", unique,
                     "an index is not the separator of exactly one node");

      for (int lo = 1; lo <= n; ++lo) {
        for (int hi = lo; hi <= n; ++hi) {
          const CoverResult cover = admissible_cover(lo, hi, tree);
          battery.expect("massdec/cover_contains",
                         cover.lo <= lo && hi <= cover.hi &&
                             cover.separator >= lo && cover.separator <= hi,
                         "cover does not contain J");
          battery.expect_at_most("massdec/cover_mass", cover.mass,
                                 2.0 * tree.interval_mass(lo, hi), 1e-12);
        }
      }
    }
  }
}

void check_majorant(Battery& battery) {
  const int n = 64;
  const GridPtr grid = make_uniform_grid(256);
  const SampledSystem rotated = rotate_system(
      trig_system(n, grid), haar_orthogonal(n, derive_seed(battery.seed(), 5)));
  Rng rng(derive_seed(battery.seed(), 6));
  for (int m : {4, 16, 64}) {
    for (int t = 0; t < 3; ++t) {
      CoeffVector coeffs;
      coeffs.entries.assign(static_cast<std::size_t>(n), 0.0);
      for (std::size_t idx : rng.distinct_indices(static_cast<std::size_t>(n),
                                                  static_cast<std::size_t>(m))) {
        coeffs.entries[idx] = rng.normal();
      }
      std::vector<double> mass(coeffs.entries.size());
      for (std::size_t i = 0; i < mass.size(); ++i) {
        mass[i] = coeffs.entries[i] * coeffs.entries[i];
      }
      const AdmissibleTree tree(mass);
      const BlockSplits splits = blockwise_split(tree, coeffs, rotated);
      const TildePair tilde = assemble_tilde(splits, tree, 0, rotated);
      const PrefixTable prefix = make_prefix_table(coeffs, rotated);
      battery.expect_at_most("massdec/majorant_le_2",
                             majorant_audit(tilde_s(1, n, prefix), tilde), 2.0);
    }
  }
}

void check_bounds(Battery& battery) {
  const std::pair<int, int> shapes[] = {{4, 2}, {6, 2}, {6, 3}, {8, 2}};
  for (const auto& [n, m] : shapes) {
    for (double eps : {0.5, 1.0}) {
      const double ceiling = packing_ceiling(n, m, eps);
      const int stop_after =
          static_cast<int>(std::min(10.0 * covering_bound(n, m, eps).value, 1e5));
      for (int t = 0; t < 2; ++t) {
        const int count = packing_count(n, m, eps, derive_seed(battery.seed(), 7, t), stop_after);
        battery.expect_at_most("bounds/packing_le_ceiling", count, ceiling, 0.0);
      }
    }
  }

  for (int m : {1, 16, 64}) {
    const SparseGaussianSup sup =
        sparse_gaussian_sup(256, m, 50, derive_seed(battery.seed(), 8, m));
    battery.expect_at_most("bounds/sparse_sup_ratio_le_3", sup.ratio, 3.0, 0.0);
  }

  const int n = 16;
  const GridPtr grid = make_uniform_grid(64);
  const SampledSystem trig = trig_system(n, grid);
  Rng rng(derive_seed(battery.seed(), 9));
  for (int m : {1, 4, 16}) {
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXd mat(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) mat(i, j) = rng.normal();
      }
      const CoeffVector a = random_coeffs(rng, n);
      battery.expect_at_most("bounds/hs_ratio_le_1",
                             hs_lipschitz_check(trig, mat, a, m), 1.0);
    }
  }

  const OrthogonalMatrix o = haar_orthogonal(n, derive_seed(battery.seed(), 10));
  for (int m : {1, 4}) {
    const double probe = b_probe(trig, o, m, 50, derive_seed(battery.seed(), 11, m));
    const double k = k_star(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    battery.expect_at_most("bounds/probe_le_ceiling", probe, std::exp(k * k / 2.0));
  }
}

void check_variation(Battery& battery) {
  Rng rng(derive_seed(battery.seed(), 12));
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(9);
    const std::vector<double> d = rng.normal_vector(n);
    for (double r : {2.0, 3.0}) {
      const double dp = v_r_pointwise(d, r);
      const double brute = v_r_bruteforce(d, r);
      battery.expect_at_most("variation/oracle_agreement",
                             std::abs(dp - brute), 1e-9 * std::max(1.0, brute), 0.0);
      battery.expect_at_most("variation/maximal_le_vr", maximal_pointwise(d), dp, 1e-12);
    }
    const double v2 = v_r_pointwise(d, 2.0);
    double l2 = 0.0, total = 0.0;
    for (double v : d) {
      l2 += v * v;
      total += v;
    }
    battery.expect_at_most("variation/v2_ge_l2", std::sqrt(l2), v2, 1e-12);
    battery.expect_at_most("variation/v2_ge_total", std::abs(total), v2, 1e-12);
  }
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  Battery battery(seed);
  check_systems(battery);
  check_orlicz(battery);
  check_tree(battery);
  check_majorant(battery);
  check_bounds(battery);
  check_variation(battery);
  return battery.results();
}

}  // namespace varlab
