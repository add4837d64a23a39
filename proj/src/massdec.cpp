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

#include "varlab/massdec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "varlab/parallel.hpp"

namespace varlab {

namespace {

// Dyadic child addresses overflow 64 bits past this level (only
// reachable through chains of empty intervals); s = 0 marks them.
constexpr int kMaxAddressLevel = 62;

long long child_address(const AdmissibleNode& parent, bool left_child) {
  if (parent.k >= kMaxAddressLevel || parent.s <= 0) return 0;
  return left_child ? 2 * parent.s - 1 : 2 * parent.s;
}

}  // namespace

AdmissibleTree::AdmissibleTree(const std::vector<double>& mass) {
  if (mass.empty()) throw std::invalid_argument("AdmissibleTree: empty mass vector");
  n_ = static_cast<int>(mass.size());
  total_mass_ = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0)) throw std::invalid_argument("AdmissibleTree: masses must be nonnegative");
    total_mass_ += m;
  }
  if (!(total_mass_ > 0.0)) {
    throw std::invalid_argument("AdmissibleTree: total mass must be positive");
  }
  prefix_mass_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
  for (int j = 1; j <= n_; ++j) {
    prefix_mass_[static_cast<std::size_t>(j)] =
        prefix_mass_[static_cast<std::size_t>(j - 1)] +
        mass[static_cast<std::size_t>(j - 1)] / total_mass_;
  }
  separator_node_.assign(static_cast<std::size_t>(n_) + 1, -1);

  AdmissibleNode root;
  root.k = 0;
  root.s = 1;
  root.lo = 1;
  root.hi = n_;
  root.mass = 1.0;
  nodes_.push_back(root);

  std::vector<int> work{0};
  while (!work.empty()) {
    const int id = work.back();
    work.pop_back();
    AdmissibleNode node = nodes_[static_cast<std::size_t>(id)];
    if (node.empty()) continue;

    // Maximal prefix [lo, a] with mass strictly below half the
    // parent's; a = lo-1 encodes the empty prefix. A zero-mass parent
    // admits no qualifying prefix (0 < 0 fails), so the chain
    // convention left = EMPTY, separator = lo applies there.
    const double half = node.mass / 2.0;
    int a = node.lo - 1;
    while (a + 1 <= node.hi - 1 && interval_mass(node.lo, a + 1) < half) ++a;

    const int separator = a + 1;

    AdmissibleNode left;
    left.k = node.k + 1;
    left.s = child_address(node, true);
    left.lo = node.lo;
    left.hi = a;
    left.mass = interval_mass(left.lo, left.hi);

    AdmissibleNode right;
    right.k = node.k + 1;
    right.s = child_address(node, false);
    right.lo = separator + 1;
    right.hi = node.hi;
    right.mass = interval_mass(right.lo, right.hi);

    const int left_id = static_cast<int>(nodes_.size());
    nodes_.push_back(left);
    const int right_id = static_cast<int>(nodes_.size());
    nodes_.push_back(right);

    auto& stored = nodes_[static_cast<std::size_t>(id)];
    stored.separator = separator;
    stored.left = left_id;
    stored.right = right_id;
    separator_node_[static_cast<std::size_t>(separator)] = id;

    work.push_back(left_id);
    work.push_back(right_id);
  }
}

double AdmissibleTree::interval_mass(int lo, int hi) const {
  if (lo > hi) return 0.0;
  if (lo < 1 || hi > n_) throw std::out_of_range("interval_mass: interval outside [1, N]");
  const double m = prefix_mass_[static_cast<std::size_t>(hi)] -
                   prefix_mass_[static_cast<std::size_t>(lo - 1)];
  return std::max(m, 0.0);
}

double AdmissibleTree::index_mass(int j) const { return interval_mass(j, j); }

std::string AdmissibleTree::to_json() const {
  nlohmann::ordered_json doc;
  doc["n"] = n_;
  doc["total_mass"] = total_mass_;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : nodes_) {
    nlohmann::ordered_json item;
    item["k"] = node.k;
    item["s"] = node.s;
    item["lo"] = node.empty() ? 0 : node.lo;
    item["hi"] = node.empty() ? -1 : node.hi;
    item["mass"] = node.mass;
    item["separator"] = node.separator;
    doc["nodes"].push_back(std::move(item));
  }
  return doc.dump(2);
}

AdmissibleTree build_tree(const std::vector<double>& mass) {
  return AdmissibleTree(mass);
}

CoverResult admissible_cover(int lo, int hi, const AdmissibleTree& tree) {
  if (lo < 1 || hi > tree.n() || lo > hi) {
    throw std::invalid_argument("admissible_cover: J must be a nonempty subinterval of [1, N]");
  }
  // Descend to the unique deepest node whose separator lies in J. If a
  // node's separator misses J, the whole of J sits in one child.
  int cur = 0;
  while (true) {
    const AdmissibleNode& node = tree.node(cur);
    if (node.separator >= lo && node.separator <= hi) break;
    cur = node.separator < lo ? node.right : node.left;
  }
  const AdmissibleNode& split = tree.node(cur);

  CoverResult out;
  out.separator = split.separator;

  if (lo <= split.separator - 1) {
    // The left part of J is a suffix of the left child; walk down
    // right children to the smallest admissible interval containing it.
    int walker = split.left;
    while (tree.node(walker).separator > 0 && lo > tree.node(walker).separator) {
      walker = tree.node(walker).right;
    }
    out.left_node = walker;
  }
  if (split.separator + 1 <= hi) {
    int walker = split.right;
    while (tree.node(walker).separator > 0 && hi < tree.node(walker).separator) {
      walker = tree.node(walker).left;
    }
    out.right_node = walker;
  }

  out.lo = out.left_node >= 0 ? tree.node(out.left_node).lo : out.separator;
  out.hi = out.right_node >= 0 ? tree.node(out.right_node).hi : out.separator;
  out.mass = tree.interval_mass(out.lo, out.hi);
  return out;
}

SampledFunction block_sum(int lo, int hi, const CoeffVector& coeffs,
                          const SampledSystem& system) {
  if (static_cast<int>(coeffs.size()) != system.size()) {
    throw std::invalid_argument("block_sum: dimension mismatch");
  }
  const std::size_t x_count = system.grid->size();
  if (lo > hi) return SampledFunction(system.grid, std::vector<double>(x_count, 0.0));
  if (lo < 1 || hi > system.size()) {
    throw std::invalid_argument("block_sum: interval outside [1, N]");
  }
  const int len = hi - lo + 1;
  const Eigen::Map<const Eigen::VectorXd> a(coeffs.entries.data() + (lo - 1), len);
  Eigen::VectorXd f = system.values.middleRows(lo - 1, len).transpose() * a;
  return SampledFunction(system.grid,
                         std::vector<double>(f.data(), f.data() + f.size()));
}

SampledFunction tilde_s(int lo, int hi, const PrefixTable& prefix) {
  const int n = static_cast<int>(prefix.p.rows()) - 1;
  if (lo < 1 || hi > n || lo > hi) {
    throw std::invalid_argument("tilde_s: J must be a nonempty subinterval of [1, N]");
  }
  const std::size_t x_count = prefix.grid->size();
  std::vector<double> out(x_count);
  parallel_for(x_count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      const double* col = prefix.p.col(static_cast<Eigen::Index>(x)).data();
      double mn = col[lo - 1];
      double mx = mn;
      for (int u = lo; u <= hi; ++u) {
        mn = std::min(mn, col[u]);
        mx = std::max(mx, col[u]);
      }
      out[x] = mx - mn;
    }
  });
  return SampledFunction(prefix.grid, std::move(out));
}

BlockSplits blockwise_split(const AdmissibleTree& tree, const CoeffVector& coeffs,
                            const SampledSystem& system) {
  if (static_cast<int>(coeffs.size()) != tree.n() ||
      static_cast<int>(coeffs.size()) != system.size()) {
    throw std::invalid_argument("blockwise_split: dimension mismatch");
  }
  const std::size_t n = coeffs.size();
  const auto& nodes = tree.nodes();
  BlockSplits out;
  out.interval_splits.resize(nodes.size());
  out.interval_k.assign(nodes.size(), 0.0);
  out.separator_splits.resize(n + 1);
  out.separator_k.assign(n + 1, 0.0);

  parallel_for(nodes.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t id = begin; id < end; ++id) {
      const AdmissibleNode& node = nodes[id];
      if (node.empty() || node.mass <= 0.0) continue;
      std::size_t m_block = 0;
      for (int j = node.lo; j <= node.hi; ++j) {
        if (coeffs.entries[static_cast<std::size_t>(j - 1)] != 0.0) ++m_block;
      }
      if (m_block == 0) continue;
      const double k = k_star(n, m_block);
      out.interval_k[id] = k;
      out.interval_splits[id] =
          split_gamma_k(block_sum(node.lo, node.hi, coeffs, system), k);
    }
  });

  const double k_single = k_star(n, 1);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const double a = coeffs.entries[j];
      if (a == 0.0) continue;
      out.separator_k[j + 1] = k_single;
      out.separator_splits[j + 1] = split_gamma_k(
          block_sum(static_cast<int>(j) + 1, static_cast<int>(j) + 1, coeffs, system),
          k_single);
    }
  });
  return out;
}

namespace {

void accumulate_abs_pow(std::vector<double>& acc, const SampledFunction& f, double r) {
  if (f.values.empty()) return;
  for (std::size_t x = 0; x < acc.size(); ++x) {
    acc[x] += std::pow(std::abs(f.values[x]), r);
  }
}

}  // namespace

TildePair assemble_tilde(const BlockSplits& splits, const AdmissibleTree& tree,
                         int node_id, const SampledSystem& system, double r) {
  if (!(r > 2.0)) throw std::invalid_argument("assemble_tilde: r must exceed 2");
  const std::size_t x_count = system.grid->size();
  const AdmissibleNode& top = tree.node(node_id);
  if (top.empty()) {
    return TildePair{SampledFunction(system.grid, std::vector<double>(x_count, 0.0)),
                     SampledFunction(system.grid, std::vector<double>(x_count, 0.0))};
  }

  // Group the subtree's blocks by level: intervals at the node's own
  // level, separators one level deeper (they sit between the children).
  std::map<int, std::vector<int>> interval_ids;   // level -> node ids
  std::map<int, std::vector<int>> separator_ids;  // level -> separator indices
  std::vector<int> stack{node_id};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const AdmissibleNode& node = tree.node(id);
    if (node.empty()) continue;
    interval_ids[node.k].push_back(id);
    separator_ids[node.k + 1].push_back(node.separator);
    stack.push_back(node.left);
    stack.push_back(node.right);
  }

  std::vector<double> g_tilde(x_count, 0.0), e_tilde(x_count, 0.0);
  std::vector<double> g_level(x_count), e_level(x_count);
  const double inv_r = 1.0 / r;

  auto flush_level = [&](const std::vector<double>& g_acc, const std::vector<double>& e_acc) {
    for (std::size_t x = 0; x < x_count; ++x) {
      if (g_acc[x] > 0.0) g_tilde[x] += std::pow(g_acc[x], inv_r);
      if (e_acc[x] > 0.0) e_tilde[x] += std::pow(e_acc[x], inv_r);
    }
  };

  for (const auto& [level, ids] : interval_ids) {
    std::fill(g_level.begin(), g_level.end(), 0.0);
    std::fill(e_level.begin(), e_level.end(), 0.0);
    for (int id : ids) {
      const SplitPair& split = splits.interval_splits[static_cast<std::size_t>(id)];
      accumulate_abs_pow(g_level, split.g_part, r);
      accumulate_abs_pow(e_level, split.e_part, r);
    }
    flush_level(g_level, e_level);
  }
  for (const auto& [level, seps] : separator_ids) {
    std::fill(g_level.begin(), g_level.end(), 0.0);
    std::fill(e_level.begin(), e_level.end(), 0.0);
    for (int j : seps) {
      const SplitPair& split = splits.separator_splits[static_cast<std::size_t>(j)];
      accumulate_abs_pow(g_level, split.g_part, r);
      accumulate_abs_pow(e_level, split.e_part, r);
    }
    flush_level(g_level, e_level);
  }

  return TildePair{SampledFunction(system.grid, std::move(g_tilde)),
                   SampledFunction(system.grid, std::move(e_tilde))};
}

double majorant_audit(const SampledFunction& s_tilde, const TildePair& tilde) {
  double worst = 0.0;
  for (std::size_t x = 0; x < s_tilde.values.size(); ++x) {
    const double num = s_tilde.values[x];
    const double den = tilde.g.values[x] + tilde.e.values[x];
    if (den > 0.0) {
      worst = std::max(worst, num / den);
    } else if (num > 0.0) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

V2Audit v2_audit(const CoeffVector& coeffs, const SampledSystem& system,
                 double c_thresh, bool include_loglog) {
  const std::size_t n = coeffs.size();
  if (n < 16) throw std::invalid_argument("v2_audit: N must be >= 16");
  if (static_cast<int>(n) != system.size()) {
    throw std::invalid_argument("v2_audit: dimension mismatch");
  }
  std::vector<double> mass(n);
  for (std::size_t j = 0; j < n; ++j) mass[j] = coeffs.entries[j] * coeffs.entries[j];
  const AdmissibleTree tree(mass);
  const PrefixTable prefix = make_prefix_table(coeffs, system);
  const VariationResult v2 = v_r_field(coeffs, system, 2.0);
  const std::size_t x_count = system.grid->size();
  const double loglog = include_loglog ? std::log(std::log(static_cast<double>(n))) : 0.0;

  // Raw (unnormalized) masses keep the indicator threshold homogeneous
  // of degree two, matching the normalization ||f||_2 = 1.
  std::vector<double> term_stilde(x_count, 0.0);
  for (const auto& node : tree.nodes()) {
    if (node.empty() || node.mass <= 0.0) continue;
    const double raw_mass = node.mass * tree.total_mass();
    const double threshold = c_thresh * std::log(std::log(static_cast<double>(n))) * raw_mass;
    const SampledFunction st = tilde_s(node.lo, node.hi, prefix);
    for (std::size_t x = 0; x < x_count; ++x) {
      const double sq = st.values[x] * st.values[x];
      if (sq >= threshold) term_stilde[x] += sq;
    }
  }

  std::vector<double> term_sep(x_count, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = coeffs.entries[j];
    if (a == 0.0) continue;
    for (std::size_t x = 0; x < x_count; ++x) {
      const double v = a * system.values(static_cast<Eigen::Index>(j),
                                         static_cast<Eigen::Index>(x));
      term_sep[x] += v * v;
    }
  }

  V2Audit out;
  out.term_loglog = loglog;
  double int_stilde = 0.0, int_sep = 0.0, int_lhs = 0.0;
  for (std::size_t x = 0; x < x_count; ++x) {
    const double lhs = v2.pointwise.values[x] * v2.pointwise.values[x];
    const double rhs = term_stilde[x] + term_sep[x] + loglog;
    const double w = system.grid->weight(x);
    int_stilde += w * term_stilde[x];
    int_sep += w * term_sep[x];
    int_lhs += w * lhs;
    if (rhs > 0.0) {
      out.sup_ratio = std::max(out.sup_ratio, lhs / rhs);
    } else if (lhs > 0.0) {
      out.sup_ratio = std::numeric_limits<double>::infinity();
    }
  }
  out.term_stilde = int_stilde;
  out.term_sep = int_sep;
  out.lhs_sq_l2 = int_lhs;
  return out;
}

}  // namespace varlab
