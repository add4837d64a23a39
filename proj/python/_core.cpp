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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "varlab/bounds.hpp"
#include "varlab/experiments.hpp"
#include "varlab/grid.hpp"
#include "varlab/io.hpp"
#include "varlab/massdec.hpp"
#include "varlab/orlicz.hpp"
#include "varlab/parallel.hpp"
#include "varlab/rng.hpp"
#include "varlab/selftest.hpp"
#include "varlab/systems.hpp"
#include "varlab/variation.hpp"

namespace py = pybind11;
using namespace varlab;

namespace {

// The bindings hold grids as shared_ptr<Grid> (older pybind11 releases
// reject const holders); Grid itself is immutable, so the cast is safe.
std::shared_ptr<Grid> unconst(GridPtr g) { return std::const_pointer_cast<Grid>(std::move(g)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "square-variation laboratory core";

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("points"),
           py::arg("weights"))
      .def_property_readonly("points", &Grid::points)
      .def_property_readonly("weights", &Grid::weights)
      .def("__len__", &Grid::size);
  m.def(
      "make_uniform_grid", [](std::size_t x) { return unconst(make_uniform_grid(x)); },
      py::arg("x"));

  py::class_<SampledFunction>(m, "SampledFunction")
      .def(py::init([](std::shared_ptr<Grid> grid, std::vector<double> values) {
             return SampledFunction(std::move(grid), std::move(values));
           }),
           py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid",
                             [](const SampledFunction& f) { return unconst(f.grid); })
      .def_readonly("values", &SampledFunction::values);
  m.def("integrate", &integrate);
  m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"));
  m.def("sup_abs", &sup_abs);

  py::class_<CoeffVector>(m, "CoeffVector")
      .def(py::init([](std::vector<double> entries) {
             return CoeffVector{std::move(entries)};
           }),
           py::arg("entries"))
      .def_readonly("entries", &CoeffVector::entries)
      .def_property_readonly("support", &CoeffVector::support)
      .def("l2_norm", &CoeffVector::l2_norm);

  py::class_<SampledSystem>(m, "SampledSystem")
      .def_readonly("values", &SampledSystem::values)
      .def_property_readonly("grid",
                             [](const SampledSystem& s) { return unconst(s.grid); })
      .def_readonly("bounded", &SampledSystem::bounded)
      .def_property_readonly("size", &SampledSystem::size)
      .def("gram_error", &SampledSystem::gram_error)
      .def("boundedness_excess", &SampledSystem::boundedness_excess);

  py::class_<OrthogonalMatrix>(m, "OrthogonalMatrix")
      .def(py::init([](Eigen::MatrixXd entries) {
             return OrthogonalMatrix{std::move(entries)};
           }),
           py::arg("entries"))
      .def_readonly("entries", &OrthogonalMatrix::entries)
      .def("orth_error", &OrthogonalMatrix::orth_error);

  m.def(
      "trig_system",
      [](int n, std::shared_ptr<Grid> grid) { return trig_system(n, std::move(grid)); },
      py::arg("n"), py::arg("grid"));
  m.def("haar_orthogonal", &haar_orthogonal, py::arg("n"), py::arg("seed"));
  m.def("rotate_system", &rotate_system, py::arg("base"), py::arg("o"));
  m.def("gaussian_sequence", &gaussian_sequence, py::arg("n"), py::arg("seed"));
  m.def(
      "reweight_system",
      [](const SampledSystem& base) {
        ReweightResult result = reweight_system(base);
        return py::make_tuple(std::move(result.system), std::move(result.density));
      },
      py::arg("base"));
  m.def("masked_orthonormal_system", &masked_orthonormal_system, py::arg("base"),
        py::arg("mask"));
  m.def("synthesize", &synthesize, py::arg("coeffs"), py::arg("system"));

  m.def(
      "v_r_pointwise",
      [](const std::vector<double>& d, double r) { return v_r_pointwise(d, r); },
      py::arg("d"), py::arg("r") = 2.0);
  m.def(
      "v_r_bruteforce",
      [](const std::vector<double>& d, double r) { return v_r_bruteforce(d, r); },
      py::arg("d"), py::arg("r") = 2.0);
  m.def(
      "maximal_pointwise",
      [](const std::vector<double>& d) { return maximal_pointwise(d); }, py::arg("d"));
  m.def(
      "lil_statistic", [](const std::vector<double>& g) { return lil_statistic(g); },
      py::arg("g"));

  py::class_<PrefixTable>(m, "PrefixTable")
      .def_readonly("p", &PrefixTable::p)
      .def_property_readonly("grid",
                             [](const PrefixTable& t) { return unconst(t.grid); });
  m.def("make_prefix_table", &make_prefix_table, py::arg("coeffs"), py::arg("system"));

  py::class_<VariationResult>(m, "VariationResult")
      .def_readonly("r", &VariationResult::r)
      .def_readonly("pointwise", &VariationResult::pointwise)
      .def_readonly("norm2", &VariationResult::norm2);
  m.def("v_r_field", &v_r_field, py::arg("coeffs"), py::arg("system"), py::arg("r") = 2.0);

  py::class_<OrliczModulus>(m, "OrliczModulus")
      .def_static("gauss", &OrliczModulus::gauss, py::arg("c"))
      .def_static("truncated", &OrliczModulus::truncated, py::arg("k"));
  m.def("modulus_value", &modulus_value, py::arg("t"), py::arg("mod"));
  m.def("luxemburg_norm", &luxemburg_norm, py::arg("f"), py::arg("mod"));
  m.def("k_star", &k_star, py::arg("n"), py::arg("m"));

  py::class_<SplitPair>(m, "SplitPair")
      .def_readonly("g_part", &SplitPair::g_part)
      .def_readonly("e_part", &SplitPair::e_part)
      .def_readonly("gamma", &SplitPair::gamma);
  m.def("split_gamma_k", &split_gamma_k, py::arg("f"), py::arg("k"));
  m.def("split_e_part_bound_sq", &split_e_part_bound_sq, py::arg("gamma"), py::arg("k"));
  m.def("tail_measure", &tail_measure, py::arg("f"), py::arg("lambda_"));

  py::class_<SubgaussianProfile>(m, "SubgaussianProfile")
      .def_readonly("c1", &SubgaussianProfile::c1)
      .def_readonly("lambdas", &SubgaussianProfile::lambdas)
      .def_readonly("tail", &SubgaussianProfile::tail)
      .def_readonly("g_ratio", &SubgaussianProfile::g_ratio);
  m.def("subgaussian_profile", &subgaussian_profile, py::arg("f"), py::arg("a"));
  m.def("gauss_constant_from_moment_bound", &gauss_constant_from_moment_bound,
        py::arg("c1"));

  py::class_<AdmissibleNode>(m, "AdmissibleNode")
      .def_readonly("k", &AdmissibleNode::k)
      .def_readonly("s", &AdmissibleNode::s)
      .def_readonly("lo", &AdmissibleNode::lo)
      .def_readonly("hi", &AdmissibleNode::hi)
      .def_readonly("mass", &AdmissibleNode::mass)
      .def_readonly("separator", &AdmissibleNode::separator)
      .def_readonly("left", &AdmissibleNode::left)
      .def_readonly("right", &AdmissibleNode::right)
      .def_property_readonly("empty", &AdmissibleNode::empty);

  py::class_<AdmissibleTree>(m, "AdmissibleTree")
      .def(py::init<const std::vector<double>&>(), py::arg("mass"))
      .def_property_readonly("n", &AdmissibleTree::n)
      .def_property_readonly("total_mass", &AdmissibleTree::total_mass)
      .def_property_readonly("nodes", &AdmissibleTree::nodes)
      .def("separator_node", &AdmissibleTree::separator_node, py::arg("j"))
      .def("interval_mass", &AdmissibleTree::interval_mass, py::arg("lo"), py::arg("hi"))
      .def("index_mass", &AdmissibleTree::index_mass, py::arg("j"))
      .def("to_json", &AdmissibleTree::to_json);
  m.def("build_tree", &build_tree, py::arg("mass"));

  py::class_<CoverResult>(m, "CoverResult")
      .def_readonly("left_node", &CoverResult::left_node)
      .def_readonly("right_node", &CoverResult::right_node)
      .def_readonly("separator", &CoverResult::separator)
      .def_readonly("lo", &CoverResult::lo)
      .def_readonly("hi", &CoverResult::hi)
      .def_readonly("mass", &CoverResult::mass);
  m.def("admissible_cover", &admissible_cover, py::arg("lo"), py::arg("hi"),
        py::arg("tree"));

  m.def("block_sum", &block_sum, py::arg("lo"), py::arg("hi"), py::arg("coeffs"),
        py::arg("system"));
  m.def("tilde_s", &tilde_s, py::arg("lo"), py::arg("hi"), py::arg("prefix"));

  py::class_<BlockSplits>(m, "BlockSplits")
      .def_readonly("interval_splits", &BlockSplits::interval_splits)
      .def_readonly("separator_splits", &BlockSplits::separator_splits)
      .def_readonly("interval_k", &BlockSplits::interval_k)
      .def_readonly("separator_k", &BlockSplits::separator_k);
  m.def("blockwise_split", &blockwise_split, py::arg("tree"), py::arg("coeffs"),
        py::arg("system"));

  py::class_<TildePair>(m, "TildePair")
      .def_readonly("g", &TildePair::g)
      .def_readonly("e", &TildePair::e);
  m.def("assemble_tilde", &assemble_tilde, py::arg("splits"), py::arg("tree"),
        py::arg("node_id"), py::arg("system"), py::arg("r") = 3.0);
  m.def("majorant_audit", &majorant_audit, py::arg("s_tilde"), py::arg("tilde"));

  py::class_<V2Audit>(m, "V2Audit")
      .def_readonly("sup_ratio", &V2Audit::sup_ratio)
      .def_readonly("lhs_sq_l2", &V2Audit::lhs_sq_l2)
      .def_readonly("term_stilde", &V2Audit::term_stilde)
      .def_readonly("term_sep", &V2Audit::term_sep)
      .def_readonly("term_loglog", &V2Audit::term_loglog);
  m.def("v2_audit", &v2_audit, py::arg("coeffs"), py::arg("system"),
        py::arg("c_thresh") = 10.0, py::arg("include_loglog") = true);

  m.def(
      "covering_bound",
      [](int n, int mm, double eps) {
        const CoveringBound b = covering_bound(n, mm, eps);
        return py::make_tuple(b.value, b.log_value);
      },
      py::arg("n"), py::arg("m"), py::arg("eps"));
  m.def("packing_ceiling", &packing_ceiling, py::arg("n"), py::arg("m"), py::arg("eps"));
  m.def("packing_count", &packing_count, py::arg("n"), py::arg("m"), py::arg("eps"),
        py::arg("seed"), py::arg("stop_after"));
  m.def(
      "sparse_gaussian_sup",
      [](int n, int mm, int trials, std::uint64_t seed) {
        const SparseGaussianSup s = sparse_gaussian_sup(n, mm, trials, seed);
        return py::make_tuple(s.mean_sup, s.ratio);
      },
      py::arg("n"), py::arg("m"), py::arg("trials"), py::arg("seed"));
  m.def("dudley_integral", &dudley_integral, py::arg("n"), py::arg("m"));
  m.def("gaussian_combination_gamma_norm", &gaussian_combination_gamma_norm,
        py::arg("system"), py::arg("m"), py::arg("trials"), py::arg("seed"));
  m.def("b_probe", &b_probe, py::arg("base"), py::arg("o"), py::arg("m"),
        py::arg("probes"), py::arg("seed"));
  m.def("hs_lipschitz_check", &hs_lipschitz_check, py::arg("system"), py::arg("m_matrix"),
        py::arg("a"), py::arg("m"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("experiment", &ExperimentConfig::experiment)
      .def_readwrite("Ns", &ExperimentConfig::ns)
      .def_readwrite("ms", &ExperimentConfig::ms)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("grid_factor", &ExperimentConfig::grid_factor)
      .def_readwrite("r", &ExperimentConfig::r)
      .def_readwrite("c_thresh", &ExperimentConfig::c_thresh)
      .def_readwrite("out", &ExperimentConfig::out)
      .def_static("from_json_file", &ExperimentConfig::from_json_file, py::arg("path"));

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("experiment", &ResultRow::experiment)
      .def_readonly("system", &ResultRow::system)
      .def_readonly("N", &ResultRow::n)
      .def_readonly("m", &ResultRow::m)
      .def_readonly("trial", &ResultRow::trial)
      .def_readonly("seed", &ResultRow::seed)
      .def_readonly("statistic", &ResultRow::statistic)
      .def_readonly("value", &ResultRow::value);
  m.def("run_scaling", &run_scaling, py::arg("cfg"));
  m.def("run_lil", &run_lil, py::arg("cfg"));
  m.def("run_decomposition_study", &run_decomposition_study, py::arg("cfg"));
  m.def("run_bounds_study", &run_bounds_study, py::arg("cfg"));
  m.def("run_experiment", &run_experiment, py::arg("cfg"));
  m.def("rows_to_csv", &rows_to_csv, py::arg("rows"));
  m.def("write_csv", &write_csv, py::arg("rows"), py::arg("path"));
  m.def("rows_to_json", &rows_to_json, py::arg("rows"));
  m.def("write_json", &write_json, py::arg("rows"), py::arg("path"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);
  m.def("run_selftest", &run_selftest, py::arg("seed") = 1);

  m.def("derive_seed", &derive_seed, py::arg("root"), py::arg("a"), py::arg("b") = 0,
        py::arg("c") = 0);
  m.def("set_thread_count", &set_thread_count, py::arg("n"));

  m.attr("__all__") = py::make_tuple(
      "Grid", "make_uniform_grid", "SampledFunction", "integrate", "lp_norm", "sup_abs",
      "CoeffVector", "SampledSystem", "OrthogonalMatrix", "trig_system",
      "haar_orthogonal", "rotate_system", "gaussian_sequence", "reweight_system",
      "masked_orthonormal_system", "synthesize", "v_r_pointwise", "v_r_bruteforce",
      "maximal_pointwise", "lil_statistic", "PrefixTable", "make_prefix_table",
      "VariationResult", "v_r_field", "OrliczModulus", "modulus_value", "luxemburg_norm",
      "k_star", "SplitPair", "split_gamma_k", "split_e_part_bound_sq", "tail_measure",
      "SubgaussianProfile", "subgaussian_profile", "gauss_constant_from_moment_bound",
      "AdmissibleNode", "AdmissibleTree", "build_tree", "CoverResult", "admissible_cover",
      "block_sum", "tilde_s", "BlockSplits", "blockwise_split", "TildePair",
      "assemble_tilde", "majorant_audit", "V2Audit", "v2_audit", "covering_bound",
      "packing_ceiling", "packing_count", "sparse_gaussian_sup", "dudley_integral",
      "gaussian_combination_gamma_norm", "b_probe", "hs_lipschitz_check",
      "ExperimentConfig", "ResultRow", "run_scaling", "run_lil",
      "run_decomposition_study", "run_bounds_study", "run_experiment", "rows_to_csv",
      "write_csv", "rows_to_json", "write_json", "CheckResult", "run_selftest",
      "derive_seed", "set_thread_count");
}
