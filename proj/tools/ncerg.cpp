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

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ncerg/scenario.hpp"
#include "ncerg/selftest.hpp"

namespace {

using ncerg::json;

struct CommonOpts {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "Output directory for reports");
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
}

json parse_json_arg(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw ncerg::ScenarioError(what + ": invalid JSON (" + e.what() + ")");
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    g.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return g;
}

// Dispatches an in-memory scenario and writes its artifacts.
int run_inline(const json& scenario, const CommonOpts& opts, const std::string& json_name,
               const std::string& csv_name = "") {
  const std::string raw = scenario.dump();
  ncerg::RunResult res = ncerg::dispatch_scenario(scenario, raw, opts.seed);
  std::filesystem::create_directories(opts.out_dir);
  const auto out = std::filesystem::path(opts.out_dir);
  ncerg::write_file((out / json_name).string(), res.report.dump(2) + "\n");
  if (!csv_name.empty() && !res.csv.empty()) ncerg::write_file((out / csv_name).string(), res.csv);
  std::printf("%s\n", res.report.dump(2).c_str());
  return res.exit_code;
}

int run_selftest(const CommonOpts& opts, std::uint64_t seed, int quad_order) {
  const auto results = ncerg::run_acceptance(seed, quad_order);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%2d/13] %s  %-28s %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.details.c_str());
    all = all && r.passed;
  }
  std::printf("selftest: %s (seed %llu)\n", all ? "all criteria passed" : "FAILURES present",
              static_cast<unsigned long long>(seed));
  if (opts.out_dir != ".") std::filesystem::create_directories(opts.out_dir);
  const auto report = ncerg::acceptance_report_json(results, seed);
  ncerg::write_file((std::filesystem::path(opts.out_dir) / "selftest_report.json").string(),
                    report.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncerg: a numerical laboratory for local ergodic averages of "
               "Dunford-Schwartz semigroups on finite tracial algebras"};
  app.require_subcommand(1);

  // run
  CommonOpts run_opts;
  std::string scenario_path;
  CLI::App* cmd_run = app.add_subcommand("run", "Run a scenario file");
  cmd_run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  add_common(cmd_run, run_opts);

  // selftest
  CommonOpts st_opts;
  std::uint64_t st_seed = 12345;
  int st_quad_order = ncerg::kDefaultQuadratureOrder;
  CLI::App* cmd_st = app.add_subcommand("selftest", "Run the embedded acceptance suite");
  cmd_st->add_option("--seed", st_seed, "Seed for randomized criteria");
  cmd_st->add_option("--out", st_opts.out_dir, "Output directory for the report");
  cmd_st->add_option("--debug-quad-order", st_quad_order, "")->group("");  // debugging hook

  // mu
  CommonOpts mu_opts;
  std::string mu_algebra, mu_element;
  CLI::App* cmd_mu = app.add_subcommand("mu", "Singular value function of an element");
  cmd_mu->add_option("--algebra", mu_algebra, "Algebra JSON, e.g. {\"blocks\":[[2,1.0]]}")
      ->required();
  cmd_mu->add_option("--element", mu_element, "Element JSON")->required();
  add_common(cmd_mu, mu_opts);

  // norm
  CommonOpts norm_opts;
  std::string norm_algebra, norm_element, norm_desc;
  CLI::App* cmd_norm = app.add_subcommand("norm", "Symmetric-space norm of an element");
  cmd_norm->add_option("--algebra", norm_algebra, "Algebra JSON")->required();
  cmd_norm->add_option("--element", norm_element, "Element JSON")->required();
  cmd_norm->add_option("--norm", norm_desc, "Norm descriptor JSON")->required();
  add_common(cmd_norm, norm_opts);

  // average
  CommonOpts avg_opts;
  std::string avg_family, avg_element, avg_method = "phi1";
  double avg_t = 1.0;
  int avg_order = ncerg::kDefaultQuadratureOrder;
  CLI::App* cmd_avg = app.add_subcommand("average", "Local ergodic average A_t of an element");
  cmd_avg->add_option("--family", avg_family, "Semigroup family JSON")->required();
  cmd_avg->add_option("--element", avg_element, "Element JSON")->required();
  cmd_avg->add_option("--t", avg_t, "Averaging time t > 0")->required();
  cmd_avg->add_option("--method", avg_method, "quad | phi1");
  cmd_avg->add_option("--order", avg_order, "Quadrature order per axis");
  add_common(cmd_avg, avg_opts);

  // ds-verify
  CommonOpts ds_opts;
  std::string ds_family, ds_u;
  CLI::App* cmd_ds = app.add_subcommand("ds-verify", "Certify a map as DS+");
  cmd_ds->add_option("--family", ds_family, "Semigroup family JSON (or raw_map)")->required();
  cmd_ds->add_option("--u", ds_u, "Comma-separated evolution parameter");
  add_common(cmd_ds, ds_opts);

  // converge
  CommonOpts cv_opts;
  std::string cv_family, cv_element, cv_norm, cv_grid;
  CLI::App* cmd_cv = app.add_subcommand("converge", "Tabulate ||A_t(x) - x||_N over a t-grid");
  cmd_cv->add_option("--family", cv_family, "Semigroup family JSON")->required();
  cmd_cv->add_option("--element", cv_element, "Element JSON")->required();
  cmd_cv->add_option("--norm", cv_norm, "Norm descriptor JSON")->required();
  cmd_cv->add_option("--t-grid", cv_grid, "Comma-separated decreasing t values")->required();
  add_common(cmd_cv, cv_opts);

  // maximal
  CommonOpts mx_opts;
  std::string mx_family, mx_element, mx_strategy = "chebyshev", mx_mode = "continuous";
  double mx_lambda = 1.0;
  int mx_nmax = 50;
  CLI::App* cmd_mx = app.add_subcommand("maximal", "Maximal-inequality projection search");
  cmd_mx->add_option("--family", mx_family, "Semigroup family JSON")->required();
  cmd_mx->add_option("--element", mx_element, "Element JSON (positive)")->required();
  cmd_mx->add_option("--lambda", mx_lambda, "Level lambda > 0")->required();
  cmd_mx->add_option("--strategy", mx_strategy, "chebyshev | greedy_peel | brute_force");
  cmd_mx->add_option("--mode", mx_mode, "continuous | discrete");
  cmd_mx->add_option("--n-max", mx_nmax, "Discrete horizon N");
  add_common(cmd_mx, mx_opts);

  // bounds
  CommonOpts bd_opts;
  std::string bd_family, bd_element, bd_check, bd_grid, bd_p = "2";
  double bd_t0 = 1.0, bd_slack = ncerg::kBoundSlack;
  CLI::App* cmd_bd = app.add_subcommand("bounds", "Check a quantitative averaging bound");
  cmd_bd->add_option("--family", bd_family, "Semigroup family JSON")->required();
  cmd_bd->add_option("--element", bd_element, "Element JSON")->required();
  cmd_bd->add_option("--check", bd_check, "rate | continuity | dyadic")->required();
  cmd_bd->add_option("--t-grid", bd_grid, "Comma-separated t values (pairs use s,t;s,t)");
  cmd_bd->add_option("--p", bd_p, "Norm exponent (number or inf)");
  cmd_bd->add_option("--t0", bd_t0, "Base time for the rate check");
  cmd_bd->add_option("--slack", bd_slack, "Additive tolerance");
  add_common(cmd_bd, bd_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_run) {
      return ncerg::run_scenario_file(scenario_path, run_opts.out_dir, run_opts.seed);
    }
    if (*cmd_st) {
      return run_selftest(st_opts, st_seed, st_quad_order);
    }
    if (*cmd_mu) {
      json s{{"schema_version", 1},
             {"algebra", parse_json_arg(mu_algebra, "--algebra")},
             {"element", parse_json_arg(mu_element, "--element")},
             {"experiment", "mu"}};
      return run_inline(s, mu_opts, "mu_report.json", "mu.csv");
    }
    if (*cmd_norm) {
      json s{{"schema_version", 1},
             {"algebra", parse_json_arg(norm_algebra, "--algebra")},
             {"element", parse_json_arg(norm_element, "--element")},
             {"experiment", "norm"},
             {"params", {{"norm", parse_json_arg(norm_desc, "--norm")}}}};
      return run_inline(s, norm_opts, "norm_report.json");
    }
    if (*cmd_avg) {
      json s{{"schema_version", 1},
             {"semigroup", parse_json_arg(avg_family, "--family")},
             {"element", parse_json_arg(avg_element, "--element")},
             {"experiment", "average"},
             {"params", {{"t", avg_t}, {"method", avg_method}, {"order", avg_order}}}};
      return run_inline(s, avg_opts, "average_report.json");
    }
    if (*cmd_ds) {
      json params = json::object();
      if (!ds_u.empty()) params["u"] = parse_grid(ds_u);
      json s{{"schema_version", 1},
             {"semigroup", parse_json_arg(ds_family, "--family")},
             {"experiment", "ds-verify"},
             {"params", params}};
      return run_inline(s, ds_opts, "ds_verify_report.json");
    }
    if (*cmd_cv) {
      json s{{"schema_version", 1},
             {"semigroup", parse_json_arg(cv_family, "--family")},
             {"element", parse_json_arg(cv_element, "--element")},
             {"experiment", "converge"},
             {"params", {{"norm", parse_json_arg(cv_norm, "--norm")}, {"t_grid", parse_grid(cv_grid)}}}};
      return run_inline(s, cv_opts, "converge_report.json", "converge.csv");
    }
    if (*cmd_mx) {
      json s{{"schema_version", 1},
             {"semigroup", parse_json_arg(mx_family, "--family")},
             {"element", parse_json_arg(mx_element, "--element")},
             {"experiment", "maximal"},
             {"params",
              {{"lambda", mx_lambda},
               {"strategy", mx_strategy},
               {"mode", mx_mode},
               {"n_max", mx_nmax}}}};
      return run_inline(s, mx_opts, "maximal_report.json");
    }
    if (*cmd_bd) {
      json params{{"check", bd_check}, {"slack", bd_slack}};
      if (bd_check == "rate") {
        params["p"] = bd_p == "inf" ? json("inf") : json(std::stod(bd_p));
        params["t0"] = bd_t0;
        params["t_grid"] = parse_grid(bd_grid);
      } else if (bd_check == "continuity") {
        params["p"] = bd_p == "inf" ? json("inf") : json(std::stod(bd_p));
        json pairs = json::array();
        std::size_t pos = 0;
        const std::string& text = bd_grid;
        while (pos < text.size()) {
          std::size_t next = text.find(';', pos);
          if (next == std::string::npos) next = text.size();
          const auto pair = parse_grid(text.substr(pos, next - pos));
          if (pair.size() != 2) throw ncerg::ScenarioError("--t-grid pairs must be s,t;s,t;...");
          pairs.push_back({pair[0], pair[1]});
          pos = next + 1;
        }
        params["pairs"] = pairs;
      } else {
        params["t_grid"] = parse_grid(bd_grid);
      }
      json s{{"schema_version", 1},
             {"semigroup", parse_json_arg(bd_family, "--family")},
             {"element", parse_json_arg(bd_element, "--element")},
             {"experiment", "bounds"},
             {"params", params}};
      return run_inline(s, bd_opts, "bounds_report.json", "bounds.csv");
    }
  } catch (const ncerg::ScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
