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

#ifndef VARLAB_MASSDEC_HPP_
#define VARLAB_MASSDEC_HPP_

#include <string>
#include <vector>

#include "varlab/grid.hpp"
#include "varlab/orlicz.hpp"
#include "varlab/systems.hpp"
#include "varlab/variation.hpp"

namespace varlab {

/// One interval of the recursive halving-by-mass decomposition of [N].
/// Intervals are 1-based inclusive [lo, hi]; lo > hi encodes EMPTY.
/// A nonempty node splits as parent = left ++ {separator} ++ right,
/// where the left child is the maximal prefix with mass strictly below
/// half the parent's and the right child is the maximal suffix with
/// mass at most half.
struct AdmissibleNode {
  int k = 0;        // level
  long long s = 1;  // index within the level, 1-based, s <= 2^k
  int lo = 1;
  int hi = 0;
  double mass = 0.0;
  int separator = 0;  // 0 when the node is empty
  int left = -1;      // child node ids, -1 when the node is empty
  int right = -1;

  bool empty() const { return lo > hi; }
  int length() const { return empty() ? 0 : hi - lo + 1; }
};

/// The full decomposition of [N] driven by the mass |a_n|^2. Masses are
/// normalized so the root carries mass 1; the original total is kept.
/// Every index of [N] is the separator of exactly one node.
class AdmissibleTree {
 public:
  /// Builds from nonnegative per-index masses. Throws when every mass
  /// is zero.
  explicit AdmissibleTree(const std::vector<double>& mass);

  int n() const { return n_; }
  double total_mass() const { return total_mass_; }
  const std::vector<AdmissibleNode>& nodes() const { return nodes_; }
  const AdmissibleNode& root() const { return nodes_.front(); }
  const AdmissibleNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  /// Node whose separator is index j (1-based).
  int separator_node(int j) const { return separator_node_[static_cast<std::size_t>(j)]; }

  /// Normalized mass of [lo, hi]; 0 for an empty interval.
  double interval_mass(int lo, int hi) const;

  /// Normalized per-index mass.
  double index_mass(int j) const;

  /// JSON dump: {"n", "total_mass", "nodes": [{"k","s","lo","hi","mass",
  /// "separator"}]} with empty intervals serialized as lo = 0, hi = -1.
  std::string to_json() const;

 private:
  int n_ = 0;
  double total_mass_ = 0.0;
  std::vector<double> prefix_mass_;  // normalized, prefix_mass_[j] = sum_{i<=j}
  std::vector<AdmissibleNode> nodes_;
  std::vector<int> separator_node_;
};

AdmissibleTree build_tree(const std::vector<double>& mass);

/// The admissible cover of an interval J: J_tilde = left ++ {sep} ++
/// right is an interval containing J made of two admissible intervals
/// and one admissible point, with mass at most twice the mass of J.
struct CoverResult {
  int left_node = -1;   // node id of the left admissible interval (-1 = EMPTY)
  int right_node = -1;  // node id of the right admissible interval
  int separator = 0;    // i_J
  int lo = 0, hi = 0;   // extent of J_tilde
  double mass = 0.0;    // normalized mass of J_tilde
};

CoverResult admissible_cover(int lo, int hi, const AdmissibleTree& tree);

/// S_J = sum_{n in J} a_n phi_n; the zero function for empty J.
SampledFunction block_sum(int lo, int hi, const CoeffVector& coeffs,
                          const SampledSystem& system);

/// S~_J(x) = max over subintervals I of J of |S_I(x)|, computed as the
/// running max minus running min of the prefix table over the window.
SampledFunction tilde_s(int lo, int hi, const PrefixTable& prefix);

/// Lemma-2.2 splits of every admissible block and separator. Functions
/// for zero-mass blocks are left empty and mean the zero function.
struct BlockSplits {
  std::vector<SplitPair> interval_splits;   // by node id
  std::vector<SplitPair> separator_splits;  // by separator index, [0..n], 0 unused
  std::vector<double> interval_k;           // K used per node (0 when skipped)
  std::vector<double> separator_k;
};

/// K per block is k_star(N, #nonzero coefficients in the block);
/// separators use k_star(N, 1).
BlockSplits blockwise_split(const AdmissibleTree& tree, const CoeffVector& coeffs,
                            const SampledSystem& system);

struct TildePair {
  SampledFunction g;
  SampledFunction e;
};

/// Level-wise l^r aggregation (r = 3 by default) of the block splits
/// over all admissible intervals and points inside the node's interval:
/// G~ = sum_k (sum_s |G_{k,s}|^r)^{1/r} + sum_k (sum_s |G_{i_{k,s}}|^r)^{1/r},
/// and the same for E~.
TildePair assemble_tilde(const BlockSplits& splits, const AdmissibleTree& tree,
                         int node_id, const SampledSystem& system, double r = 3.0);

/// sup_x S~(x) / (G~(x) + E~(x)), with 0/0 counted as 0. The level-wise
/// triangle inequality forces the ratio to stay at or below 2.
double majorant_audit(const SampledFunction& s_tilde, const TildePair& tilde);

/// Pointwise comparison of |V^2 f|^2 against the decomposition bound
/// sum_{k,s} |S~_{I_{k,s}} 1_B|^2 + sum_{k,s} |S_{i_{k,s}}|^2 + ln ln N,
/// where B keeps the points with S~^2 >= C ln ln N M(I). Diagnostic.
struct V2Audit {
  double sup_ratio = 0.0;   // sup_x lhs(x) / rhs(x)
  double lhs_sq_l2 = 0.0;   // integral of |V^2 f|^2
  double term_stilde = 0.0; // integral of the thresholded S~ sum
  double term_sep = 0.0;    // integral of the separator sum
  double term_loglog = 0.0; // ln ln N (0 when excluded)
};

V2Audit v2_audit(const CoeffVector& coeffs, const SampledSystem& system,
                 double c_thresh = 10.0, bool include_loglog = true);

}  // namespace varlab

#endif  // VARLAB_MASSDEC_HPP_
