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

#ifndef VARLAB_IO_HPP_
#define VARLAB_IO_HPP_

#include <Eigen/Dense>
#include <string>

namespace varlab {

/// Flat binary matrix dump: an 8-byte magic "VARLABM1", two
/// little-endian uint64 dimensions (rows, cols), then rows*cols
/// little-endian IEEE-754 doubles in row-major order.
void save_matrix_binary(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_matrix_binary(const std::string& path);

/// Plain CSV dump, one matrix row per line, 17 significant digits.
void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_matrix_csv(const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace varlab

#endif  // VARLAB_IO_HPP_
