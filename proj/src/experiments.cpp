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

#include "varlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "varlab/bounds.hpp"
#include "varlab/grid.hpp"
#include "varlab/io.hpp"
#include "varlab/massdec.hpp"
#include "varlab/orlicz.hpp"
#include "varlab/parallel.hpp"
#include "varlab/rng.hpp"
#include "varlab/systems.hpp"
#include "varlab/variation.hpp"

namespace varlab {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kTagRotation = 0x524f54;
constexpr std::uint64_t kTagCoeff = 0x434f45;
constexpr std::uint64_t kTagSupport = 0x535550;
constexpr std::uint64_t kTagLil = 0x4c494c;
constexpr std::uint64_t kTagBounds = 0x424e44;

std::uint64_t pack_nm(int n, int m) {
  return (static_cast<std::uint64_t>(n) << 24) | static_cast<std::uint64_t>(m);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("config: " + message);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  ExperimentConfig cfg;
  if (doc.contains("experiment")) cfg.experiment = doc["experiment"].get<std::string>();
  if (doc.contains("Ns")) cfg.ns = doc["Ns"].get<std::vector<int>>();
  if (doc.contains("ms")) cfg.ms = doc["ms"].get<std::vector<int>>();
  if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("grid_factor")) cfg.grid_factor = doc["grid_factor"].get<int>();
  if (doc.contains("r")) cfg.r = doc["r"].get<double>();
  if (doc.contains("c_thresh")) cfg.c_thresh = doc["c_thresh"].get<double>();
  if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
  return cfg;
}

void ExperimentConfig::validate() const {
  require(!ns.empty(), "Ns must be nonempty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    require(ns[i] > 0, "N entries must be positive");
    require(ns[i] % 2 == 0, "N entries must be even");
    if (i > 0) require(ns[i] > ns[i - 1], "Ns must be ascending");
  }
  for (int m : ms) require(m > 0, "m entries must be positive");
  require(trials > 0, "trials must be positive");
  require(grid_factor >= 3, "grid_factor must be >= 3 (the trig system needs 2N+2 points)");
  require(c_thresh > 0.0, "c_thresh must be positive");
}

std::vector<ResultRow> run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  const double r = cfg.r == 0.0 ? 2.0 : cfg.r;
  require(r >= 1.0, "r must be >= 1 for the variation study");
  std::vector<ResultRow> rows;

  for (int n : cfg.ns) {
    const GridPtr grid = make_uniform_grid(static_cast<std::size_t>(cfg.grid_factor) *
                                           static_cast<std::size_t>(n));
    const SampledSystem trig = trig_system(n, grid);
    const OrthogonalMatrix rotation =
        haar_orthogonal(n, derive_seed(cfg.seed, kTagRotation, static_cast<std::uint64_t>(n)));
    const SampledSystem rotated = rotate_system(trig, rotation);
    const std::pair<const char*, const SampledSystem*> systems[] = {
        {"trig", &trig}, {"rotated", &rotated}};

    for (const std::string regime : {"gauss", "ones"}) {
      // The all-ones coefficients do not depend on the trial, so the
      // ratio is computed once per system and repeated.
      double cached[2] = {-1.0, -1.0};
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t coeff_seed = derive_seed(
            cfg.seed, kTagCoeff, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
        CoeffVector coeffs;
        if (regime == "gauss") {
          coeffs.entries = gaussian_sequence(static_cast<std::size_t>(n), coeff_seed);
        } else {
          coeffs.entries.assign(static_cast<std::size_t>(n), 1.0);
        }
        for (int si = 0; si < 2; ++si) {
          double ratio;
          if (regime == "ones" && cached[si] >= 0.0) {
            ratio = cached[si];
          } else {
            const SampledSystem& system = *systems[si].second;
            const VariationResult vr = v_r_field(coeffs, system, r);
            ratio = vr.norm2 / lp_norm(synthesize(coeffs, system), 2.0);
            if (regime == "ones") cached[si] = ratio;
          }
          const int m = static_cast<int>(coeffs.support());
          auto emit = [&](const std::string& stat, double value) {
            rows.push_back({cfg.experiment.empty() ? "scaling" : cfg.experiment,
                            systems[si].first, n, m, trial, coeff_seed, stat, value});
          };
          emit("v2ratio_" + regime, ratio);
          emit("v2ratio_" + regime + "_per_sqrtlogn", ratio / std::sqrt(std::log(n)));
          emit("v2ratio_" + regime + "_per_sqrtloglogn",
               ratio / std::sqrt(std::log(std::log(n))));
        }
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_lil(const ExperimentConfig& cfg) {
  cfg.validate();
  for (int n : cfg.ns) require(n >= 1024, "lil: N entries must be >= 2^10");
  std::vector<ResultRow> rows;
  for (int n : cfg.ns) {
    std::vector<double> v2sq(static_cast<std::size_t>(cfg.trials));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.trials));
    parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t begin, std::size_t end) {
      std::vector<double> prefix(static_cast<std::size_t>(n) + 1);
      std::vector<double> dp(static_cast<std::size_t>(n) + 1);
      for (std::size_t t = begin; t < end; ++t) {
        seeds[t] = derive_seed(cfg.seed, kTagLil, static_cast<std::uint64_t>(n), t);
        const std::vector<double> g = gaussian_sequence(static_cast<std::size_t>(n), seeds[t]);
        prefix[0] = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) prefix[i + 1] = prefix[i] + g[i];
        v2sq[t] = detail::v2_squared_from_prefix(prefix.data(), g.size(), dp.data());
      }
    });
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const double raw = v2sq[static_cast<std::size_t>(trial)];
      const double stat = raw / (2.0 * n * std::log(std::log(static_cast<double>(n))));
      const std::uint64_t s = seeds[static_cast<std::size_t>(trial)];
      const std::string exp = cfg.experiment.empty() ? "lil" : cfg.experiment;
      rows.push_back({exp, "gaussian_iid", n, 0, trial, s, "lil_stat", stat});
      rows.push_back({exp, "gaussian_iid", n, 0, trial, s, "v2sq_raw", raw});
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_decomposition_study(const ExperimentConfig& cfg) {
  cfg.validate();
  require(!cfg.ms.empty(), "decompose: ms must be nonempty");
  const double r = cfg.r == 0.0 ? 3.0 : cfg.r;
  require(r > 2.0, "r must exceed 2 for the assembly");
  std::vector<ResultRow> rows;
  const std::string exp = cfg.experiment.empty() ? "decompose" : cfg.experiment;

  for (int n : cfg.ns) {
    const GridPtr grid = make_uniform_grid(static_cast<std::size_t>(cfg.grid_factor) *
                                           static_cast<std::size_t>(n));
    const SampledSystem rotated = rotate_system(
        trig_system(n, grid),
        haar_orthogonal(n, derive_seed(cfg.seed, kTagRotation, static_cast<std::uint64_t>(n))));
    for (int m : cfg.ms) {
      require(m <= n, "decompose: every m must be <= N");
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t trial_seed =
            derive_seed(cfg.seed, kTagSupport, pack_nm(n, m), static_cast<std::uint64_t>(trial));
        Rng rng(trial_seed);
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
        const TildePair tilde = assemble_tilde(splits, tree, 0, rotated, r);
        const double f_norm = lp_norm(synthesize(coeffs, rotated), 2.0);

        const double etilde_ratio = lp_norm(tilde.e, 2.0) / f_norm;
        double c1 = 0.0;
        for (double p : profile_p_grid()) {
          c1 = std::max(c1, lp_norm(tilde.g, p) / (std::sqrt(p) * f_norm));
        }
        const double c_test = gauss_constant_from_moment_bound(c1);
        const double gtilde_ratio =
            luxemburg_norm(tilde.g, OrliczModulus::gauss(c_test)) / f_norm;

        const PrefixTable prefix = make_prefix_table(coeffs, rotated);
        const double majorant =
            majorant_audit(tilde_s(1, n, prefix), tilde);

        auto emit = [&](const std::string& stat, double value) {
          rows.push_back({exp, "rotated", n, m, trial, trial_seed, stat, value});
        };
        emit("etilde_ratio", etilde_ratio);
        emit("gtilde_gc_ratio", gtilde_ratio);
        emit("gtilde_c_test", c_test);
        emit("majorant_ratio", majorant);
        if (!(majorant <= 2.0 + 1e-9)) {
          std::ostringstream msg;
          msg << "majorant_ratio > 2 at experiment=" << exp << " system=rotated N=" << n
              << " m=" << m << " trial=" << trial << " value=" << format_double(majorant);
          throw HardInequalityViolation(msg.str());
        }
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_bounds_study(const ExperimentConfig& cfg) {
  cfg.validate();
  require(!cfg.ms.empty(), "bounds: ms must be nonempty");
  std::vector<ResultRow> rows;
  const std::string exp = cfg.experiment.empty() ? "bounds" : cfg.experiment;

  for (int n : cfg.ns) {
    const GridPtr grid = make_uniform_grid(static_cast<std::size_t>(cfg.grid_factor) *
                                           static_cast<std::size_t>(n));
    const SampledSystem trig = trig_system(n, grid);
    const OrthogonalMatrix rotation =
        haar_orthogonal(n, derive_seed(cfg.seed, kTagRotation, static_cast<std::uint64_t>(n)));
    for (int m : cfg.ms) {
      require(m <= n, "bounds: every m must be <= N");
      const std::uint64_t row_seed = derive_seed(cfg.seed, kTagBounds, pack_nm(n, m));

      const SparseGaussianSup sup = sparse_gaussian_sup(n, m, cfg.trials, row_seed);
      rows.push_back({exp, "gaussian", n, m, 0, row_seed, "sparse_sup_mean", sup.mean_sup});
      rows.push_back({exp, "gaussian", n, m, 0, row_seed, "sparse_sup_ratio", sup.ratio});
      if (!(sup.ratio <= 3.0)) {
        std::ostringstream msg;
        msg << "sparse_sup_ratio > 3 at N=" << n << " m=" << m
            << " value=" << format_double(sup.ratio);
        throw HardInequalityViolation(msg.str());
      }

      rows.push_back({exp, "analytic", n, m, 0, 0, "dudley", dudley_integral(n, m)});

      const double comb = gaussian_combination_gamma_norm(trig, m, cfg.trials, row_seed);
      rows.push_back({exp, "trig", n, m, 0, row_seed, "gamma_comb_ratio", comb});

      const double probe = b_probe(trig, rotation, m, cfg.trials, row_seed);
      rows.push_back({exp, "rotated", n, m, 0, row_seed, "b_probe_max", probe});
      const double k = k_star(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
      const double probe_ceiling = std::exp(k * k / 2.0);
      rows.push_back({exp, "rotated", n, m, 0, 0, "b_probe_ceiling", probe_ceiling});
      if (!(probe <= probe_ceiling * (1.0 + 1e-9))) {
        std::ostringstream msg;
        msg << "b_probe_max above e^{K^2/2} at N=" << n << " m=" << m
            << " value=" << format_double(probe);
        throw HardInequalityViolation(msg.str());
      }
    }
  }

  // Small-case packing versus the covering formula and the separation
  // ceiling; 5 independent seeds per shape.
  const std::pair<int, int> shapes[] = {{4, 2}, {6, 2}, {6, 3}, {8, 2}};
  for (const auto& [n, m] : shapes) {
    for (double eps : {0.5, 1.0}) {
      const CoveringBound bound = covering_bound(n, m, eps);
      const double ceiling = packing_ceiling(n, m, eps);
      const int stop_after =
          static_cast<int>(std::min(10.0 * bound.value, 1e5));
      for (int trial = 0; trial < 5; ++trial) {
        const std::uint64_t s = derive_seed(cfg.seed, kTagBounds, pack_nm(n, m),
                                            static_cast<std::uint64_t>(trial) * 2 +
                                                (eps < 1.0 ? 0 : 1));
        const int count = packing_count(n, m, eps, s, stop_after);
        auto emit = [&](const std::string& stat, double value) {
          rows.push_back({exp, eps < 1.0 ? "sparse_ball_eps0.5" : "sparse_ball_eps1.0",
                          n, m, trial, s, stat, value});
        };
        emit("packing_count", count);
        emit("covering_bound", bound.value);
        emit("packing_ceiling", ceiling);
        if (!(count <= ceiling)) {
          std::ostringstream msg;
          msg << "packing_count above ceiling at N=" << n << " m=" << m << " eps=" << eps
              << " trial=" << trial << " count=" << count;
          throw HardInequalityViolation(msg.str());
        }
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "scaling") return run_scaling(cfg);
  if (cfg.experiment == "lil") return run_lil(cfg);
  if (cfg.experiment == "decompose") return run_decomposition_study(cfg);
  if (cfg.experiment == "bounds") return run_bounds_study(cfg);
  throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.m != b.m) return a.m < b.m;
    return a.trial < b.trial;
  });
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "experiment,system,N,m,trial,seed,statistic,value\n";
  for (const auto& row : rows) {
    out += row.experiment;
    out += ',';
    out += row.system;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += row.statistic;
    out += ',';
    out += format_double(row.value);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << rows_to_csv(rows);
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json item;
    item["experiment"] = row.experiment;
    item["system"] = row.system;
    item["N"] = row.n;
    item["m"] = row.m;
    item["trial"] = row.trial;
    item["seed"] = row.seed;
    item["statistic"] = row.statistic;
    // 17-significant-digit string so the mirror matches the CSV exactly.
    item["value"] = format_double(row.value);
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

void write_json(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("write_json: cannot open " + path);
  out << rows_to_json(rows);
}

std::string json_mirror_path(const std::string& csv_path) {
  if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".csv") {
    return csv_path.substr(0, csv_path.size() - 4) + ".json";
  }
  return csv_path + ".json";
}

}  // namespace varlab
