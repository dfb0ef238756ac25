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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ncerg/scenario.hpp"

using namespace ncerg;
using Catch::Approx;

namespace {

json base_converge_scenario() {
  return json{
      {"schema_version", 1},
      {"semigroup", {{"family", "heat_cycle"}, {"n", 4}}},
      {"element", {{"generator", "random_positive"}}},
      {"experiment", "converge"},
      {"params",
       {{"norm", {{"kind", "lp"}, {"p", 1}}}, {"t_grid", {0.5, 0.25, 0.125, 0.0625}}}},
  };
}

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto d = std::filesystem::temp_directory_path() / ("ncerg_test_" + tag);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("converge scenario produces a report and csv") {
  const json s = base_converge_scenario();
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  CHECK(res.report["experiment"] == "converge");
  CHECK(res.report["result"]["values"].size() == 4);
  CHECK(res.csv.rfind("t,norm_value\n", 0) == 0);
  // values decay along the grid
  const auto vals = res.report["result"]["values"].get<std::vector<double>>();
  CHECK(vals.back() < vals.front());
}

TEST_CASE("ds-verify on a doubling map reports a false verdict with exit 0") {
  json s{{"schema_version", 1},
         {"semigroup",
          {{"family", "raw_map"},
           {"algebra", {{"blocks", {{1, 1.0}, {1, 1.0}}}}},
           {"matrix", {{2.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}}}}},
         {"experiment", "ds-verify"}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  CHECK(res.report["result"]["verdict"] == false);
  CHECK(res.report["result"]["subunital_slack"].get<double>() == Approx(1.0));
}

TEST_CASE("bounds scenario with sabotaged slack exits 2") {
  // a nearly-coincident pair keeps both sides of the bound far below 1, so a
  // slack of -1 is guaranteed to flag a violation
  json s{{"schema_version", 1},
         {"semigroup", {{"family", "heat_cycle"}, {"n", 4}}},
         {"element", {{"generator", "random_positive"}}},
         {"experiment", "bounds"},
         {"params",
          {{"check", "continuity"},
           {"p", 2},
           {"pairs", {{0.9999, 1.0}}},
           {"slack", -1.0}}}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 2);
  CHECK(res.report["result"]["passed"] == false);

  s["params"]["slack"] = 1e-9;
  const RunResult ok = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(ok.exit_code == 0);
}

TEST_CASE("unknown keys are rejected") {
  json s = base_converge_scenario();
  s["typo_field"] = 1;
  CHECK_THROWS_AS(dispatch_scenario(s, s.dump(), std::nullopt), ScenarioError);

  json s2 = base_converge_scenario();
  s2["params"]["bogus"] = true;
  CHECK_THROWS_AS(dispatch_scenario(s2, s2.dump(), std::nullopt), ScenarioError);

  json s3 = base_converge_scenario();
  s3["semigroup"]["extra"] = 1;
  CHECK_THROWS_AS(dispatch_scenario(s3, s3.dump(), std::nullopt), ScenarioError);
}

TEST_CASE("schema version is enforced") {
  json s = base_converge_scenario();
  s["schema_version"] = 2;
  CHECK_THROWS_AS(dispatch_scenario(s, s.dump(), std::nullopt), ScenarioError);
}

TEST_CASE("algebra and semigroup shapes must agree") {
  json s = base_converge_scenario();
  s["algebra"] = {{"blocks", {{1, 1.0}, {1, 1.0}}}};  // 2 atoms vs heat_cycle(4)
  CHECK_THROWS_AS(dispatch_scenario(s, s.dump(), std::nullopt), ScenarioError);
}

TEST_CASE("identical scenario and seed give identical report bytes") {
  const json s = base_converge_scenario();
  const RunResult a = dispatch_scenario(s, s.dump(), 99);
  const RunResult b = dispatch_scenario(s, s.dump(), 99);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.csv == b.csv);
  // the seed is embedded
  CHECK(a.report["seed"] == 99);
  CHECK(a.report["scenario_hash"] == fnv1a64_hex(s.dump()));
}

TEST_CASE("run_scenario_file writes byte-identical artifacts") {
  const auto dir = fresh_dir("files");
  const json s = base_converge_scenario();
  const auto spath = dir / "scenario.json";
  {
    std::ofstream f(spath);
    f << s.dump(2);
  }
  const auto out1 = dir / "r1";
  const auto out2 = dir / "r2";
  json with_output = s;
  with_output["output"] = {{"json", "rep.json"}, {"csv", "rep.csv"}};
  {
    std::ofstream f(spath);
    f << with_output.dump(2);
  }
  CHECK(run_scenario_file(spath.string(), out1.string(), 7) == 0);
  CHECK(run_scenario_file(spath.string(), out2.string(), 7) == 0);
  CHECK(slurp(out1 / "rep.json") == slurp(out2 / "rep.json"));
  CHECK(slurp(out1 / "rep.csv") == slurp(out2 / "rep.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("operator literals round-trip through the mu experiment") {
  json s{{"schema_version", 1},
         {"algebra", {{"blocks", {{2, 1.0}, {1, 0.5}}}}},
         {"element",
          {{"literal",
            {{{3.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{2.0, 0.0}}}}}},
         {"experiment", "mu"}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  // singular values 3, 2, 1 with weights 1, 0.5, 1
  const auto knots = res.report["result"]["mu"];
  REQUIRE(knots.size() == 3);
  CHECK(knots[0][0].get<double>() == Approx(1.0));
  CHECK(knots[0][1].get<double>() == Approx(3.0));
  CHECK(knots[1][0].get<double>() == Approx(1.5));
  CHECK(knots[1][1].get<double>() == Approx(2.0));
  CHECK(knots[2][0].get<double>() == Approx(2.5));
  CHECK(knots[2][1].get<double>() == Approx(1.0));
  CHECK(res.report["result"]["trace_norm"].get<double>() == Approx(5.0));
}

TEST_CASE("norm experiment reports traits") {
  json s{{"schema_version", 1},
         {"algebra", {{"blocks", {{1, 1.0}, {1, 1.0}}}}},
         {"element", {{"diag", {3.0, 4.0}}}},
         {"experiment", "norm"},
         {"params", {{"norm", {{"kind", "orlicz"}, {"phi", {{"name", "power"}, {"p", 2}}}}}}}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.report["result"]["value"].get<double>() == Approx(5.0).margin(1e-8));
  CHECK(res.report["result"]["traits"]["order_continuous"] == true);
}

TEST_CASE("maximal scenario in discrete mode") {
  json s{{"schema_version", 1},
         {"semigroup", {{"family", "substochastic"},
                        {"matrix", {{0.5, 0.3}, {0.3, 0.5}}}}},
         {"element", {{"diag", {2.0, 1.0}}}},
         {"experiment", "maximal"},
         {"params", {{"lambda", 1.0}, {"mode", "discrete"}, {"n_max", 30}}}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  CHECK(res.report["result"]["strategy"] == "brute_force");
  CHECK(res.report["result"]["trace_budget"].get<double>() == Approx(3.0));
}

TEST_CASE("raw generators go through the mandatory certification pass") {
  // heat generator on two atoms, given directly as a superoperator matrix
  json good{{"schema_version", 1},
            {"semigroup",
             {{"family", "raw"},
              {"algebra", {{"blocks", {{1, 1.0}, {1, 1.0}}}}},
              {"generators",
               {{{-1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}}}}}},
            {"element", {{"diag", {1.0, -1.0}}}},
            {"experiment", "average"},
            {"params", {{"t", 1.0}}}};
  const RunResult res = dispatch_scenario(good, good.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  const double factor = -std::expm1(-2.0) / 2.0;
  CHECK(res.report["result"]["value"][0][0][0].get<double>() == Approx(factor).margin(1e-10));

  // a growth generator fails the DS spot-checks at construction
  json bad = good;
  bad["semigroup"]["generators"] = {{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(dispatch_scenario(bad, bad.dump(), std::nullopt), ScenarioError);
}

TEST_CASE("builtin family registry is reachable from scenarios") {
  json s{{"schema_version", 1},
         {"semigroup", {{"family", "builtin"}, {"name", "tensor_2x2x2"}}},
         {"element", {{"generator", "random_positive"}}},
         {"experiment", "converge"},
         {"params",
          {{"norm", {{"kind", "lp"}, {"p", "inf"}}}, {"t_grid", {0.5, 0.25, 0.125}}}}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  CHECK(res.report["result"]["values"].size() == 3);
}

TEST_CASE("average scenario reports a quadrature error estimate") {
  json s{{"schema_version", 1},
         {"semigroup", {{"family", "heat_cycle"}, {"n", 3}}},
         {"element", {{"generator", "random_selfadjoint"}}},
         {"experiment", "average"},
         {"params", {{"t", 1.0}, {"method", "quad"}, {"order", 12}}}};
  const RunResult res = dispatch_scenario(s, s.dump(), std::nullopt);
  CHECK(res.exit_code == 0);
  CHECK(res.report["result"]["estimated_error"].get<double>() < 1e-9);
}
