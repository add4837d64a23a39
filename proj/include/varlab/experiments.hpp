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

#ifndef VARLAB_EXPERIMENTS_HPP_
#define VARLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace varlab {

/// Parameters shared by the seeded studies. Flags override config-file
/// values; every run is a pure function of the config.
struct ExperimentConfig {
  std::string experiment;
  std::vector<int> ns;
  std::vector<int> ms;
  int trials = 20;
  std::uint64_t seed = 1;
  int grid_factor = 4;   // X = grid_factor * N
  double r = 0.0;        // 0 picks the per-experiment default (2 or 3)
  double c_thresh = 10.0;
  std::string out;

  /// Loads keys {"experiment","Ns","ms","trials","seed","grid_factor",
  /// "r","c_thresh","out"} from a JSON file; absent keys keep defaults.
  static ExperimentConfig from_json_file(const std::string& path);

  /// Counts positive, N entries even and ascending.
  void validate() const;
};

struct ResultRow {
  std::string experiment;
  std::string system;
  int n = 0;
  int m = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
};

/// A hard inequality failed while producing rows; carries the row.
class HardInequalityViolation : public std::runtime_error {
 public:
  explicit HardInequalityViolation(const std::string& what)
      : std::runtime_error(what) {}
};

/// Square-variation ratios ||V^2 f||_2 / ||f||_2 for the ordered
/// trigonometric system and its Haar rotation (one rotation per N,
/// shared across trials), under iid Gaussian and all-ones coefficients
/// with identical coefficient seeds for both systems. Emits v2ratio and
/// its sqrt(ln N) / sqrt(ln ln N) normalizations per regime.
std::vector<ResultRow> run_scaling(const ExperimentConfig& cfg);

/// Square-variation law of the iterated logarithm for iid Gaussian
/// sequences: the normalized statistic and the raw squared variation.
std::vector<ResultRow> run_lil(const ExperimentConfig& cfg);

/// Sub-Gaussian/L^2 decomposition study on rotated systems with sparse
/// Gaussian coefficients: E~ and G~ ratios plus the majorant audit.
std::vector<ResultRow> run_decomposition_study(const ExperimentConfig& cfg);

/// Covering/packing counts, sparse Gaussian suprema, entropy-integral
/// values, Gamma_* norms of Gaussian combinations, B(m, O) probes, and
/// the Hilbert-Schmidt chain check.
std::vector<ResultRow> run_bounds_study(const ExperimentConfig& cfg);

/// Runs the study named by cfg.experiment.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Stable sort by (N, m, trial), preserving statistic order in a group.
void sort_rows(std::vector<ResultRow>& rows);

/// CSV with header experiment,system,N,m,trial,seed,statistic,value and
/// 17-significant-digit floats; byte-identical across reruns.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// JSON mirror: array of objects with the same fields.
std::string rows_to_json(const std::vector<ResultRow>& rows);
void write_json(const std::vector<ResultRow>& rows, const std::string& path);

/// Output path of the JSON mirror for a CSV path (swaps/appends .json).
std::string json_mirror_path(const std::string& csv_path);

}  // namespace varlab

#endif  // VARLAB_EXPERIMENTS_HPP_
