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

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncerg/oracles.hpp"
#include "ncerg/report.hpp"

namespace ncerg {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace scenario_detail {

inline void check_keys(const json& j, const std::vector<std::string>& allowed,
                       const std::string& ctx) {
  if (!j.is_object()) throw ScenarioError(ctx + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ScenarioError(ctx + ": unknown key '" + key + "'");
  }
}

inline const json& require(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) throw ScenarioError(ctx + ": missing required key '" + key + "'");
  return j.at(key);
}

inline AlgebraShape parse_shape(const json& j) {
  check_keys(j, {"blocks"}, "algebra");
  const json& blocks = require(j, "blocks", "algebra");
  if (!blocks.is_array() || blocks.empty())
    throw ScenarioError("algebra.blocks: expected a non-empty array");
  std::vector<Block> bs;
  for (const auto& b : blocks) {
    if (!b.is_array() || b.size() != 2)
      throw ScenarioError("algebra.blocks: entries must be [dim, weight]");
    bs.push_back({b[0].get<int>(), b[1].get<double>()});
  }
  try {
    return AlgebraShape(std::move(bs));
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("algebra: ") + e.what());
  }
}

inline Operator parse_element(const json& j, const AlgebraShape& shape, std::uint64_t seed) {
  check_keys(j, {"literal", "diag", "generator", "seed"}, "element");
  const int spec_count =
      int(j.contains("literal")) + int(j.contains("diag")) + int(j.contains("generator"));
  if (spec_count != 1)
    throw ScenarioError("element: give exactly one of 'literal', 'diag', 'generator'");
  if (j.contains("literal")) return operator_from_json(shape, j.at("literal"));
  if (j.contains("diag")) {
    const auto vals = j.at("diag").get<std::vector<double>>();
    return Operator::diagonal(shape, vals);
  }
  const std::string gen = j.at("generator").get<std::string>();
  Rng rng(j.contains("seed") ? j.at("seed").get<std::uint64_t>() : seed);
  if (gen == "random_positive") return random_positive(shape, rng);
  if (gen == "random_selfadjoint") return random_selfadjoint(shape, rng);
  if (gen == "random") return random_operator(shape, rng);
  if (gen == "random_contraction") return random_contraction(shape, rng);
  throw ScenarioError("element.generator: unknown generator '" + gen + "'");
}

inline Eigen::MatrixXd parse_real_matrix(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ScenarioError(ctx + ": expected a matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw ScenarioError(ctx + ": ragged matrix");
    for (int k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

// Flat row-major [re, im] list of a D x D complex matrix.
inline Matrix parse_complex_matrix(const json& j, int d, const std::string& ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != d * d)
    throw ScenarioError(ctx + ": expected " + std::to_string(d * d) + " [re, im] pairs");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const json& e = j[i * d + k];
      if (!e.is_array() || e.size() != 2) throw ScenarioError(ctx + ": entries must be [re, im]");
      m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

inline FamilySpec parse_family(const json& j) {
  const std::string fam = require(j, "family", "semigroup").get<std::string>();
  if (fam == "heat_cycle") {
    check_keys(j, {"family", "n"}, "semigroup");
    return FamilySpec::heat_cycle(require(j, "n", "semigroup").get<int>());
  }
  if (fam == "schur") {
    check_keys(j, {"family", "n", "kernels", "weight"}, "semigroup");
    const int n = require(j, "n", "semigroup").get<int>();
    std::vector<Eigen::MatrixXd> qs;
    for (const auto& k : require(j, "kernels", "semigroup")) {
      if (k.is_string())
        qs.push_back(schur_kernel(k.get<std::string>(), n));
      else
        qs.push_back(parse_real_matrix(k, "semigroup.kernels"));
    }
    return FamilySpec::schur(n, std::move(qs),
                             j.contains("weight") ? j.at("weight").get<double>() : 1.0);
  }
  if (fam == "substochastic") {
    check_keys(j, {"family", "matrix", "weights"}, "semigroup");
    std::vector<double> w;
    if (j.contains("weights")) w = j.at("weights").get<std::vector<double>>();
    return FamilySpec::substochastic(parse_real_matrix(require(j, "matrix", "semigroup"), "semigroup.matrix"),
                                     std::move(w));
  }
  if (fam == "trivial") {
    check_keys(j, {"family", "algebra"}, "semigroup");
    return FamilySpec::trivial(parse_shape(require(j, "algebra", "semigroup.trivial")));
  }
  if (fam == "tensor_d") {
    check_keys(j, {"family", "factors"}, "semigroup");
    std::vector<FamilySpec> factors;
    for (const auto& f : require(j, "factors", "semigroup")) factors.push_back(parse_family(f));
    return FamilySpec::tensor_d(std::move(factors));
  }
  if (fam == "raw") {
    check_keys(j, {"family", "algebra", "generators"}, "semigroup");
    const AlgebraShape shape = parse_shape(require(j, "algebra", "semigroup.raw"));
    std::vector<Matrix> gens;
    for (const auto& g : require(j, "generators", "semigroup"))
      gens.push_back(parse_complex_matrix(g, shape.hs_dim(), "semigroup.generators"));
    return FamilySpec::raw(shape, std::move(gens));
  }
  if (fam == "builtin") {
    check_keys(j, {"family", "name"}, "semigroup");
    const std::string name = require(j, "name", "semigroup").get<std::string>();
    for (const auto& [fname, fspec] : builtin_families())
      if (fname == name) return fspec;
    throw ScenarioError("semigroup: unknown builtin family '" + name + "'");
  }
  throw ScenarioError("semigroup: unknown family '" + fam + "'");
}

inline ConcavePhi parse_concave_phi(const json& j, const std::string& ctx) {
  const std::string name = require(j, "name", ctx).get<std::string>();
  if (name == "power") {
    check_keys(j, {"name", "alpha"}, ctx);
    return ConcavePhi::power(require(j, "alpha", ctx).get<double>());
  }
  if (name == "min_t") {
    check_keys(j, {"name", "c"}, ctx);
    return ConcavePhi::min_t(require(j, "c", ctx).get<double>());
  }
  if (name == "log1p") {
    check_keys(j, {"name"}, ctx);
    return ConcavePhi::log1p_t();
  }
  if (name == "piecewise") {
    check_keys(j, {"name", "jump", "points"}, ctx);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : require(j, "points", ctx))
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    return ConcavePhi::piecewise_linear(j.contains("jump") ? j.at("jump").get<double>() : 0.0,
                                        std::move(pts));
  }
  throw ScenarioError(ctx + ": unknown concave function '" + name + "'");
}

inline OrliczFunction parse_orlicz(const json& j, const std::string& ctx) {
  const std::string name = require(j, "name", ctx).get<std::string>();
  if (name == "power") {
    check_keys(j, {"name", "p"}, ctx);
    return OrliczFunction::power(require(j, "p", ctx).get<double>());
  }
  if (name == "exp_minus_one") {
    check_keys(j, {"name"}, ctx);
    return OrliczFunction::exp_minus_one();
  }
  if (name == "piecewise") {
    check_keys(j, {"name", "points", "delta2_zero", "delta2_inf"}, ctx);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : require(j, "points", ctx))
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    return OrliczFunction::piecewise_linear(std::move(pts),
                                            require(j, "delta2_zero", ctx).get<bool>(),
                                            require(j, "delta2_inf", ctx).get<bool>());
  }
  throw ScenarioError(ctx + ": unknown Orlicz function '" + name + "'");
}

inline double parse_p(const json& j, const std::string& ctx) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw ScenarioError(ctx + ": p must be a number or \"inf\"");
  }
  return j.get<double>();
}

inline NormDescriptor parse_norm(const json& j) {
  const std::string kind = require(j, "kind", "norm").get<std::string>();
  if (kind == "lp") {
    check_keys(j, {"kind", "p"}, "norm");
    return NormDescriptor::lp(parse_p(require(j, "p", "norm"), "norm"));
  }
  if (kind == "l1+linf") {
    check_keys(j, {"kind"}, "norm");
    return NormDescriptor::l1_plus_linf();
  }
  if (kind == "l1&linf") {
    check_keys(j, {"kind"}, "norm");
    return NormDescriptor::l1_cap_linf();
  }
  if (kind == "orlicz") {
    check_keys(j, {"kind", "phi"}, "norm");
    return NormDescriptor::orlicz(parse_orlicz(require(j, "phi", "norm"), "norm.phi"));
  }
  if (kind == "lorentz") {
    check_keys(j, {"kind", "phi"}, "norm");
    return NormDescriptor::lorentz(parse_concave_phi(require(j, "phi", "norm"), "norm.phi"));
  }
  if (kind == "marcinkiewicz") {
    check_keys(j, {"kind", "phi"}, "norm");
    return NormDescriptor::marcinkiewicz(parse_concave_phi(require(j, "phi", "norm"), "norm.phi"));
  }
  throw ScenarioError("norm: unknown kind '" + kind + "'");
}

}  // namespace scenario_detail

struct RunResult {
  int exit_code = 0;
  json report;
  std::string csv;  // empty when the experiment emits none
};

// Validates and runs one scenario document.  Throws ScenarioError on
// validation problems; bound-check violations are reported through exit code
// 2, not exceptions.
inline RunResult dispatch_scenario(const json& scenario, const std::string& raw_bytes,
                                   std::optional<std::uint64_t> seed_override) {
  using namespace scenario_detail;
  check_keys(scenario,
             {"schema_version", "algebra", "element", "semigroup", "experiment", "params",
              "output", "seed"},
             "scenario");
  if (require(scenario, "schema_version", "scenario").get<int>() != 1)
    throw ScenarioError("scenario: unsupported schema_version");
  const std::string experiment = require(scenario, "experiment", "scenario").get<std::string>();
  const std::uint64_t seed = seed_override.value_or(
      scenario.contains("seed") ? scenario.at("seed").get<std::uint64_t>() : 12345ull);
  const json params = scenario.contains("params") ? scenario.at("params") : json::object();

  RunResult res;
  res.report = report_envelope(experiment, fnv1a64_hex(raw_bytes), seed);

  // shared ingredients
  std::optional<AlgebraShape> shape;
  if (scenario.contains("algebra")) shape = parse_shape(scenario.at("algebra"));
  std::optional<Semigroup> sg;
  std::optional<Superoperator> raw_map;
  if (scenario.contains("semigroup")) {
    const json& sj = scenario.at("semigroup");
    if (sj.contains("family") && sj.at("family") == "raw_map") {
      check_keys(sj, {"family", "algebra", "matrix"}, "semigroup");
      const AlgebraShape ms = parse_shape(require(sj, "algebra", "semigroup.raw_map"));
      raw_map = Superoperator(
          ms, parse_complex_matrix(require(sj, "matrix", "semigroup"), ms.hs_dim(),
                                   "semigroup.matrix"));
    } else {
      try {
        sg = make_family(parse_family(sj));
      } catch (const ScenarioError&) {
        throw;
      } catch (const std::exception& e) {
        throw ScenarioError(std::string("semigroup: ") + e.what());
      }
    }
  }
  const AlgebraShape* element_shape = nullptr;
  if (sg)
    element_shape = &sg->shape;
  else if (raw_map)
    element_shape = &raw_map->shape;
  else if (shape)
    element_shape = &*shape;
  if (shape && sg && !(*shape == sg->shape))
    throw ScenarioError("algebra and semigroup shapes disagree");

  std::optional<Operator> element;
  if (scenario.contains("element")) {
    if (!element_shape) throw ScenarioError("element: no algebra or semigroup shape to build on");
    element = parse_element(scenario.at("element"), *element_shape, seed);
  }
  const auto need_element = [&]() -> const Operator& {
    if (!element) throw ScenarioError(experiment + ": scenario needs an 'element'");
    return *element;
  };
  const auto need_semigroup = [&]() -> const Semigroup& {
    if (!sg) throw ScenarioError(experiment + ": scenario needs a 'semigroup'");
    return *sg;
  };

  if (experiment == "mu") {
    check_keys(params, {}, "params");
    const StepFunction f = mu(need_element());
    res.report["result"] = {{"mu", step_function_to_json(f)},
                            {"trace_norm", total_integral(f)},
                            {"sup", f.sup_value()}};
    std::vector<std::vector<double>> rows;
    for (const auto& [end, val] : f.knots) rows.push_back({end, val});
    res.csv = csv_string({"right_endpoint", "value"}, rows);
  } else if (experiment == "norm") {
    check_keys(params, {"norm"}, "params");
    const NormDescriptor nd = parse_norm(require(params, "norm", "params"));
    const SpaceTraits traits = space_traits(nd);
    res.report["result"] = {
        {"norm", nd.name()},
        {"value", nd(need_element())},
        {"traits",
         {{"order_continuous", traits.order_continuous},
          {"contains_unit_when_trace_infinite", traits.contains_unit_when_trace_infinite},
          {"subset_of_R_tau", traits.subset_of_R_tau}}}};
  } else if (experiment == "ds-verify") {
    check_keys(params, {"u", "tol"}, "params");
    const double tol = params.contains("tol") ? params.at("tol").get<double>() : 1e-9;
    Superoperator t = raw_map ? *raw_map : [&] {
      const Semigroup& s = need_semigroup();
      std::vector<double> u(s.d, 1.0);
      if (params.contains("u")) u = params.at("u").get<std::vector<double>>();
      return evolve_superop(s, u);
    }();
    res.report["result"] = certificate_to_json(verify_ds_plus(t, tol));
  } else if (experiment == "average") {
    check_keys(params, {"t", "method", "order", "factorized"}, "params");
    const double t = require(params, "t", "params").get<double>();
    const std::string method =
        params.contains("method") ? params.at("method").get<std::string>() : "phi1";
    const Semigroup& s = need_semigroup();
    const Operator& x = need_element();
    json result;
    if (method == "phi1") {
      result["value"] = operator_to_json(average_phi1(s, x, t));
    } else if (method == "quad") {
      const int order =
          params.contains("order") ? params.at("order").get<int>() : kDefaultQuadratureOrder;
      const bool factorized =
          params.contains("factorized") ? params.at("factorized").get<bool>() : true;
      if (factorized) {
        const QuadratureAverage qa = average_quadrature_with_error(s, x, t, order);
        result["value"] = operator_to_json(qa.value);
        result["estimated_error"] = qa.estimated_error;
      } else {
        result["value"] = operator_to_json(average_quadrature(s, x, t, order, false));
      }
    } else {
      throw ScenarioError("average: unknown method '" + method + "'");
    }
    result["t"] = t;
    result["method"] = method;
    res.report["result"] = result;
  } else if (experiment == "converge") {
    check_keys(params, {"norm", "t_grid"}, "params");
    const NormDescriptor nd = parse_norm(require(params, "norm", "params"));
    const auto t_grid = require(params, "t_grid", "params").get<std::vector<double>>();
    const ConvergenceReport rep =
        mean_convergence_table(need_semigroup(), need_element(), nd, t_grid);
    res.report["result"] = convergence_to_json(rep);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
      rows.push_back({rep.t_grid[i], rep.values[i]});
    res.csv = csv_string({"t", "norm_value"}, rows);
  } else if (experiment == "maximal") {
    check_keys(params, {"lambda", "strategy", "mode", "t_grid", "n_max", "u"}, "params");
    const double lambda = require(params, "lambda", "params").get<double>();
    const std::string mode =
        params.contains("mode") ? params.at("mode").get<std::string>() : "continuous";
    MaximalReport rep;
    if (mode == "continuous") {
      std::vector<double> grid;
      if (params.contains("t_grid")) grid = params.at("t_grid").get<std::vector<double>>();
      const std::string strategy =
          params.contains("strategy") ? params.at("strategy").get<std::string>() : "chebyshev";
      rep = maximal_projection_search(need_semigroup(), need_element(), lambda, grid, strategy);
    } else if (mode == "discrete") {
      const int n_max = params.contains("n_max") ? params.at("n_max").get<int>() : 50;
      Superoperator t = raw_map ? *raw_map : [&] {
        const Semigroup& s = need_semigroup();
        std::vector<double> u(s.d, 1.0);
        if (params.contains("u")) u = params.at("u").get<std::vector<double>>();
        return evolve_superop(s, u);
      }();
      rep = yeadon_discrete_check(t, need_element(), lambda, n_max);
    } else {
      throw ScenarioError("maximal: unknown mode '" + mode + "'");
    }
    res.report["result"] = maximal_to_json(rep);
  } else if (experiment == "bounds") {
    check_keys(params, {"check", "p", "t0", "t_grid", "pairs", "slack"}, "params");
    const std::string check = require(params, "check", "params").get<std::string>();
    const double slack =
        params.contains("slack") ? params.at("slack").get<double>() : kBoundSlack;
    const Semigroup& s = need_semigroup();
    const Operator& x = need_element();
    BoundReport rep;
    if (check == "rate") {
      const double p = parse_p(require(params, "p", "params"), "params.p");
      const double t0 = require(params, "t0", "params").get<double>();
      const auto grid = require(params, "t_grid", "params").get<std::vector<double>>();
      rep = check_average_rate_bound(s, x, t0, p, grid, slack);
    } else if (check == "continuity") {
      const double p = parse_p(require(params, "p", "params"), "params.p");
      std::vector<std::pair<double, double>> pairs;
      for (const auto& pr : require(params, "pairs", "params"))
        pairs.emplace_back(pr[0].get<double>(), pr[1].get<double>());
      rep = check_continuity_bound(s, x, p, pairs, slack);
    } else if (check == "dyadic") {
      const auto grid = require(params, "t_grid", "params").get<std::vector<double>>();
      rep = check_dyadic_comparison(s, x, grid, slack);
    } else {
      throw ScenarioError("bounds: unknown check '" + check + "'");
    }
    res.report["result"] = bound_to_json(rep);
    std::vector<std::vector<double>> rows;
    for (const auto& row : rep.rows) rows.push_back({row.a, row.lhs, row.rhs});
    res.csv = csv_string({"t", "lhs", "rhs"}, rows);
    if (!rep.passed) res.exit_code = 2;
  } else {
    throw ScenarioError("scenario: unknown experiment '" + experiment + "'");
  }
  return res;
}

// Reads, validates, runs and emits.  Returns the process exit code: 0 on
// success, 1 on validation/I-O errors (the caller prints the message), 2 when
// a bound check inside the scenario failed its tolerance.
inline int run_scenario_file(const std::string& path, const std::string& out_dir,
                             std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot read scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string raw = buf.str();
  json scenario;
  try {
    scenario = json::parse(raw);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }

  RunResult res = dispatch_scenario(scenario, raw, seed_override);

  std::string json_name = "report.json", csv_name;
  if (scenario.contains("output")) {
    const json& out = scenario.at("output");
    scenario_detail::check_keys(out, {"json", "csv"}, "output");
    if (out.contains("json")) json_name = out.at("json").get<std::string>();
    if (out.contains("csv")) csv_name = out.at("csv").get<std::string>();
  }
  std::filesystem::create_directories(out_dir);
  write_file((std::filesystem::path(out_dir) / json_name).string(), res.report.dump(2) + "\n");
  if (!csv_name.empty() && !res.csv.empty())
    write_file((std::filesystem::path(out_dir) / csv_name).string(), res.csv);
  return res.exit_code;
}

}  // namespace ncerg
