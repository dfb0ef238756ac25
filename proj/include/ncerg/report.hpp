// Copyright 2026 The ncerg Authors
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

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncerg/dynamics.hpp"
#include "ncerg/lab.hpp"
#include "ncerg/rearrangement.hpp"
#include "ncerg/util.hpp"
#include "ncerg/version.hpp"

namespace ncerg {

// Insertion-ordered JSON keeps report bytes stable across runs.
using json = nlohmann::ordered_json;

inline json shape_to_json(const AlgebraShape& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks) blocks.push_back({b.dim, b.weight});
  return json{{"blocks", blocks}};
}

// Operator literal: per block a flat row-major list of [re, im] pairs.
inline json operator_to_json(const Operator& x) {
  json blocks = json::array();
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    json entries = json::array();
    const int n = x.shape.blocks[k].dim;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        entries.push_back({x.blocks[k](i, j).real(), x.blocks[k](i, j).imag()});
    blocks.push_back(entries);
  }
  return blocks;
}

inline Operator operator_from_json(const AlgebraShape& s, const json& j) {
  if (!j.is_array() || j.size() != s.block_count())
    throw std::invalid_argument("operator literal: block count mismatch");
  Operator x = Operator::zero(s);
  for (std::size_t k = 0; k < s.block_count(); ++k) {
    const int n = s.blocks[k].dim;
    const json& entries = j[k];
    if (!entries.is_array() || static_cast<int>(entries.size()) != n * n)
      throw std::invalid_argument("operator literal: block entry count mismatch");
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) {
        const json& e = entries[i * n + jj];
        if (!e.is_array() || e.size() != 2)
          throw std::invalid_argument("operator literal: entries must be [re, im] pairs");
        x.blocks[k](i, jj) = cplx(e[0].get<double>(), e[1].get<double>());
      }
  }
  return x;
}

// StepFunction textual form: ordered [right_endpoint, value] pairs.
inline json step_function_to_json(const StepFunction& f) {
  json knots = json::array();
  for (const auto& [end, val] : f.knots) knots.push_back({end, val});
  return knots;
}

inline json certificate_to_json(const DSCertificate& c) {
  json j;
  switch (c.positivity) {
    case PositivityEvidence::CpChoiPassed:
      j["positivity"] = "cp_choi_passed";
      break;
    case PositivityEvidence::DiagonalStochasticPassed:
      j["positivity"] = "diagonal_stochastic_passed";
      break;
    case PositivityEvidence::Failed:
      j["positivity"] = "failed";
      j["witness"] = c.witness;
      break;
  }
  j["subunital"] = c.subunital;
  j["subunital_slack"] = c.subunital_slack;
  j["subtracial"] = c.subtracial;
  j["subtracial_slack"] = c.subtracial_slack;
  j["verdict"] = c.verdict;
  if (c.verdict) {
    j["contraction_l1_max_ratio"] = c.contraction_l1_max_ratio;
    j["contraction_linf_max_ratio"] = c.contraction_linf_max_ratio;
  }
  return j;
}

inline json convergence_to_json(const ConvergenceReport& r) {
  json j;
  j["norm"] = r.norm_name;
  j["t_grid"] = r.t_grid;
  j["values"] = r.values;
  j["monotone_tail"] = r.monotone_tail;
  j["final_ratio"] = r.final_ratio;
  // on a finite-dimensional algebra the almost-uniform convergence modes
  // coincide with norm convergence, so norm decay is the verified surrogate
  j["convergence_mode"] = "norm (coincides with almost-uniform in finite dimension)";
  return j;
}

inline json bound_to_json(const BoundReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(
        {{"label", row.label}, {"a", row.a}, {"b", row.b}, {"lhs", row.lhs}, {"rhs", row.rhs}});
  json j;
  j["name"] = r.name;
  j["slack"] = r.slack;
  j["passed"] = r.passed;
  j["max_violation"] = r.max_violation;
  j["rows"] = rows;
  return j;
}

inline json maximal_to_json(const MaximalReport& r) {
  json j;
  j["strategy"] = r.strategy;
  j["lambda"] = r.lambda;
  j["trace_budget"] = r.trace_budget;
  j["projection_found"] = r.projection_found;
  j["tau_e_perp"] = r.tau_e_perp;
  j["achieved_sup"] = r.achieved_sup;
  j["achieved_constant"] = r.achieved_constant;
  j["grid_modulus_bound"] = r.grid_modulus_bound;
  return j;
}

// Tolerances in force, embedded in every emitted report.
inline json tolerances_json() {
  return json{{"projection_tol", kProjectionTol},
              {"eigenvalue_merge_rel", 1e-9},
              {"distribution_boundary", kDistributionBoundaryTol},
              {"hl_leq_rel", 1e-10},
              {"choi_min_eig_rel", 1e-9},
              {"bound_slack", kBoundSlack},
              {"cross_method_tol", 1e-8},
              {"luxemburg_modular_tol", 1e-8}};
}

inline json report_envelope(const std::string& experiment, const std::string& scenario_hash,
                            std::uint64_t seed) {
  json j;
  j["schema_version"] = 1;
  j["library_version"] = version();
  j["scenario_hash"] = scenario_hash;
  j["seed"] = seed;
  j["tolerances"] = tolerances_json();
  j["experiment"] = experiment;
  return j;
}

// CSV rows with 17 significant digits; round-trip safe.
inline std::string csv_string(const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_double(row[i]);
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << contents;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ncerg
