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

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varlab/experiments.hpp"
#include "varlab/grid.hpp"
#include "varlab/io.hpp"
#include "varlab/massdec.hpp"
#include "varlab/parallel.hpp"
#include "varlab/rng.hpp"
#include "varlab/selftest.hpp"
#include "varlab/systems.hpp"
#include "varlab/variation.hpp"

namespace {

struct StudyFlags {
  std::string config_path;
  std::string out;
  std::vector<int> ns;
  std::vector<int> ms;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int grid_factor = -1;
  double r = -1.0;
  double c_thresh = -1.0;
};

void attach_study_flags(CLI::App* cmd, StudyFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out, "output CSV path (a .json mirror is written alongside)");
  cmd->add_option("--Ns", flags.ns, "system sizes (even)");
  cmd->add_option("--ms", flags.ms, "support sizes");
  cmd->add_option("--trials", flags.trials, "trials per cell");
  cmd->add_option("--seed", flags.seed, "root seed")->each([&](const std::string&) {
    flags.seed_set = true;
  });
  cmd->add_option("--grid-factor", flags.grid_factor, "grid points per unit of N (default 4)");
  cmd->add_option("--r", flags.r, "variation/assembly exponent");
  cmd->add_option("--c-thresh", flags.c_thresh, "threshold constant for the pointwise audit");
}

// Flags override config-file values.
varlab::ExperimentConfig merge_config(const std::string& experiment, const StudyFlags& flags) {
  varlab::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = varlab::ExperimentConfig::from_json_file(flags.config_path);
  }
  cfg.experiment = experiment;
  if (!flags.ns.empty()) cfg.ns = flags.ns;
  if (!flags.ms.empty()) cfg.ms = flags.ms;
  if (flags.trials >= 0) cfg.trials = flags.trials;
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.grid_factor >= 0) cfg.grid_factor = flags.grid_factor;
  if (flags.r >= 0.0) cfg.r = flags.r;
  if (flags.c_thresh >= 0.0) cfg.c_thresh = flags.c_thresh;
  if (!flags.out.empty()) cfg.out = flags.out;
  return cfg;
}

int run_study(const std::string& experiment, const StudyFlags& flags) {
  const varlab::ExperimentConfig cfg = merge_config(experiment, flags);
  if (cfg.out.empty()) {
    std::cerr << "error: --out (or config \"out\") is required\n";
    return 2;
  }
  const std::vector<varlab::ResultRow> rows = varlab::run_experiment(cfg);
  varlab::write_csv(rows, cfg.out);
  varlab::write_json(rows, varlab::json_mirror_path(cfg.out));
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
  return 0;
}

int run_vstat(const std::string& system_name, int n, int m, std::uint64_t seed, double r,
              int grid_factor) {
  if (n <= 0 || n % 2 != 0 || m <= 0 || m > n) {
    std::cerr << "error: need even N > 0 and 1 <= m <= N\n";
    return 2;
  }
  const varlab::GridPtr grid = varlab::make_uniform_grid(
      static_cast<std::size_t>(grid_factor) * static_cast<std::size_t>(n));
  varlab::SampledSystem system = varlab::trig_system(n, grid);
  if (system_name == "rotated") {
    system = varlab::rotate_system(
        system, varlab::haar_orthogonal(n, varlab::derive_seed(seed, 0x524f54, n)));
  } else if (system_name != "trig") {
    std::cerr << "error: --system must be trig or rotated\n";
    return 2;
  }
  varlab::Rng rng(varlab::derive_seed(seed, 0x434f45, n));
  varlab::CoeffVector coeffs;
  coeffs.entries.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t idx :
       rng.distinct_indices(static_cast<std::size_t>(n), static_cast<std::size_t>(m))) {
    coeffs.entries[idx] = rng.normal();
  }
  const varlab::VariationResult result = varlab::v_r_field(coeffs, system, r);
  const double f_norm = varlab::lp_norm(varlab::synthesize(coeffs, system), 2.0);
  std::cout << varlab::format_double(result.norm2 / f_norm) << "\n";
  return 0;
}

int run_tree(const std::string& masses_csv) {
  std::vector<double> masses;
  std::stringstream ss(masses_csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) masses.push_back(std::stod(cell));
  const varlab::AdmissibleTree tree = varlab::build_tree(masses);
  std::cout << tree.to_json() << "\n";
  return 0;
}

int run_selftest_cmd(std::uint64_t seed) {
  const std::vector<varlab::CheckResult> results = varlab::run_selftest(seed);
  bool all_pass = true;
  for (const auto& check : results) {
    std::cout << (check.pass ? "PASS " : "FAIL ") << check.name;
    if (!check.pass) std::cout << "  (" << check.detail << ")";
    std::cout << "\n";
    all_pass = all_pass && check.pass;
  }
  std::cout << (all_pass ? "selftest: all checks passed" : "selftest: FAILURES above") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"square-variation laboratory for orthonormal systems"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: machine parallelism or VARLAB_THREADS)");

  std::string vstat_system = "trig";
  int vstat_n = 64;
  int vstat_m = 64;
  std::uint64_t vstat_seed = 1;
  double vstat_r = 2.0;
  int vstat_grid_factor = 4;
  CLI::App* vstat = app.add_subcommand(
      "vstat", "variation ratio ||V^r f||_2 / ||f||_2 for one random draw");
  vstat->add_option("--system", vstat_system, "trig or rotated");
  vstat->add_option("--N", vstat_n, "system size (even)");
  vstat->add_option("--m", vstat_m, "support size");
  vstat->add_option("--seed", vstat_seed, "seed");
  vstat->add_option("--r", vstat_r, "variation exponent");
  vstat->add_option("--grid-factor", vstat_grid_factor, "grid points per unit of N");

  StudyFlags scaling_flags, lil_flags, decompose_flags, bounds_flags;
  attach_study_flags(app.add_subcommand("scaling", "ordered vs rotated V^2 growth study"),
                     scaling_flags);
  attach_study_flags(app.add_subcommand("lil", "iterated-logarithm statistic for V^2"),
                     lil_flags);
  attach_study_flags(
      app.add_subcommand("decompose", "sub-Gaussian/L^2 decomposition study"),
      decompose_flags);
  attach_study_flags(app.add_subcommand("bounds", "covering/packing and norm bound study"),
                     bounds_flags);

  std::string tree_masses;
  CLI::App* tree = app.add_subcommand("tree", "print the admissible mass decomposition as JSON");
  tree->add_option("--masses", tree_masses, "comma-separated nonnegative masses")->required();

  std::uint64_t selftest_seed = 1;
  CLI::App* selftest = app.add_subcommand("selftest", "run the hard-inequality suite");
  selftest->add_option("--seed", selftest_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  varlab::set_thread_count(threads);

  try {
    if (vstat->parsed()) {
      return run_vstat(vstat_system, vstat_n, vstat_m, vstat_seed, vstat_r, vstat_grid_factor);
    }
    if (app.get_subcommand("scaling")->parsed()) return run_study("scaling", scaling_flags);
    if (app.get_subcommand("lil")->parsed()) return run_study("lil", lil_flags);
    if (app.get_subcommand("decompose")->parsed()) return run_study("decompose", decompose_flags);
    if (app.get_subcommand("bounds")->parsed()) return run_study("bounds", bounds_flags);
    if (tree->parsed()) return run_tree(tree_masses);
    if (selftest->parsed()) return run_selftest_cmd(selftest_seed);
  } catch (const varlab::HardInequalityViolation& e) {
    std::cerr << "hard inequality violated: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
