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

#include <atomic>
#include <cmath>
#include <string>
#include <vector>

#include "ncerg/oracles.hpp"
#include "ncerg/report.hpp"
#include "ncerg/util.hpp"

// The embedded acceptance suite: every quantitative contract of the library,
// checked end to end with fixed tolerances.  `ncerg selftest` runs it; the
// acceptance test binary prints one line per criterion.

namespace ncerg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
};

namespace selftest_detail {

inline Rng trial_rng(std::uint64_t seed, int criterion, std::size_t trial) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ull * (criterion * 1000003ull + trial + 1)));
}

struct TrialStats {
  std::atomic<int> failures{0};
  std::vector<double> errors;

  explicit TrialStats(std::size_t n) : errors(n, 0.0) {}
  double max_error() const {
    double m = 0.0;
    for (double e : errors) m = std::max(m, e);
    return m;
  }
};

// 1. mu against the infimum-definition scan oracle.
inline CriterionResult c1_mu_oracle(std::uint64_t seed) {
  const std::size_t trials = 100;
  TrialStats stats(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng = trial_rng(seed, 1, i);
    const AlgebraShape shape = random_shape(rng, 3, 6);
    const Operator x = random_operator(shape, rng);
    const StepFunction f = mu(x);
    const double t_max = shape.total_trace() * 1.02;
    double err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double t = uniform(rng, 0.0, t_max);
      err = std::max(err, std::abs(f(t) - oracles::mu_at(x, t)));
    }
    stats.errors[i] = err;
    if (err > 1e-9) stats.failures++;
  });
  return {1, "mu-oracle-equivalence", stats.failures == 0,
          "100 operators x 1000 samples, max error " + format_double(stats.max_error())};
}

// 2. Gauss-Legendre vs phi1 averaging on every built-in family.
inline CriterionResult c2_cross_method(std::uint64_t seed, int quad_order) {
  const auto fams = builtin_families();
  double worst = 0.0;
  int failures = 0;
  std::size_t trial = 0;
  for (const auto& [name, spec] : fams) {
    const Semigroup sg = make_family(spec);
    for (double t : {0.1, 1.0, 2.0}) {
      const Superoperator q = average_superop_quadrature(sg, t, quad_order);
      const Superoperator p = average_superop_phi1(sg, t);
      for (int i = 0; i < 50; ++i) {
        Rng rng = trial_rng(seed, 2, trial++);
        const Operator x = random_operator(sg.shape, rng);
        const double err = norm_inf(apply(q, x) - apply(p, x));
        const double rel = err / norm_inf(x);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ++failures;
      }
    }
  }
  return {2, "cross-method-averaging", failures == 0,
          "all families, t in {0.1,1,2}, max rel error " + format_double(worst)};
}

// 3. Heat pair: averaging the (1,-1) mode over [0,1] contracts it by
// (1 - e^{-2})/2.
inline CriterionResult c3_closed_form_anchor(std::uint64_t, int quad_order) {
  const Semigroup sg = make_family(FamilySpec::heat_cycle(2));
  const Operator x = Operator::diagonal(sg.shape, {1.0, -1.0});
  const double expected = -std::expm1(-2.0) / 2.0;
  const Operator a_phi = average_phi1(sg, x, 1.0);
  const Operator a_quad = average_quadrature(sg, x, 1.0, quad_order);
  const double f_phi = a_phi.blocks[0](0, 0).real();
  const double f_quad = a_quad.blocks[0](0, 0).real();
  const double err = std::max(std::abs(f_phi - expected), std::abs(f_quad - expected));
  return {3, "closed-form-anchor", err <= 1e-10,
          "factor " + format_double(f_phi) + " vs " + format_double(expected) + ", error " +
              format_double(err)};
}

// 4. Rate bound with C(t0,d) = (2/t0)(2^d - 1), 500 randomized trials over the
// d <= 2 families.
inline CriterionResult c4_rate_bound(std::uint64_t seed) {
  std::vector<Semigroup> fams;
  for (const auto& [name, spec] : builtin_families()) {
    const Semigroup sg = make_family(spec);
    if (sg.d <= 2) fams.push_back(sg);
  }
  const std::size_t trials = 500;
  TrialStats stats(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng = trial_rng(seed, 4, i);
    const Semigroup& sg = fams[uniform_int(rng, 0, static_cast<int>(fams.size()) - 1)];
    const Operator y = random_operator(sg.shape, rng);
    const double t0 = uniform(rng, 0.3, 2.0);
    const double p_choices[] = {1.0, 2.0, kInf};
    const double p = p_choices[uniform_int(rng, 0, 2)];
    std::vector<double> grid;
    for (int k = 0; k < 3; ++k) grid.push_back(uniform(rng, 1e-3, 0.999) * t0);
    const BoundReport rep = check_average_rate_bound(sg, y, t0, p, grid);
    stats.errors[i] = rep.max_violation;
    if (!rep.passed) stats.failures++;
  });
  return {4, "rate-bound", stats.failures == 0,
          "500 trials, d in {1,2}, max violation " + format_double(stats.max_error())};
}

// 5. Continuity bound 2 (t^d - s^d)/t^d, 500 randomized pairs.
inline CriterionResult c5_continuity_bound(std::uint64_t seed) {
  std::vector<Semigroup> fams;
  for (const auto& [name, spec] : builtin_families()) fams.push_back(make_family(spec));
  const std::size_t trials = 500;
  TrialStats stats(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng = trial_rng(seed, 5, i);
    const Semigroup& sg = fams[uniform_int(rng, 0, static_cast<int>(fams.size()) - 1)];
    const Operator x = random_operator(sg.shape, rng);
    const double t = uniform(rng, 0.05, 3.0);
    const double s = uniform(rng, 0.01, 0.999) * t;
    const double p_choices[] = {1.0, 2.0, 3.5, kInf};
    const double p = p_choices[uniform_int(rng, 0, 3)];
    const BoundReport rep = check_continuity_bound(sg, x, p, {{s, t}});
    stats.errors[i] = rep.max_violation;
    if (!rep.passed) stats.failures++;
  });
  return {5, "continuity-bound", stats.failures == 0,
          "500 random (s,t) pairs, max violation " + format_double(stats.max_error())};
}

// 6. Dyadic comparison: hand coefficient (d=1, t=0.3 -> 0.2) and the checked
// inequality along the grid 0.3 * 2^{-0..6}.
inline CriterionResult c6_dyadic(std::uint64_t seed) {
  const double c_hand = dyadic_comparison_coefficient(0.3, 1);
  if (std::abs(c_hand - 0.2) > 1e-12)
    return {6, "dyadic-comparison", false, "coefficient(0.3, d=1) = " + format_double(c_hand)};
  const Semigroup sg = make_family(FamilySpec::heat_cycle(4));
  Rng rng = trial_rng(seed, 6, 0);
  const Operator x = random_operator(sg.shape, rng);
  std::vector<double> grid;
  for (int j = 0; j <= 6; ++j) grid.push_back(0.3 * std::ldexp(1.0, -j));
  const BoundReport rep = check_dyadic_comparison(sg, x, grid);
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
    if (rep.rows[i + 1].b > rep.rows[i].b) decreasing = false;
  const double last_coeff = rep.rows.back().b;
  const bool ok = rep.passed && decreasing && last_coeff < 0.02;
  return {6, "dyadic-comparison", ok,
          "coefficient(0.3)=0.2 exact, grid coefficients decrease to " +
              format_double(last_coeff) + ", max violation " + format_double(rep.max_violation)};
}

// 7. Mean convergence across seven norms on the 8-cycle heat flow.
inline CriterionResult c7_mean_convergence(std::uint64_t seed) {
  const Semigroup sg = make_family(FamilySpec::heat_cycle(8));
  Rng rng = trial_rng(seed, 7, 0);
  const Operator x = random_operator(sg.shape, rng);
  const std::vector<double> grid = dyadic_grid(1, 10);
  const std::vector<NormDescriptor> norms = {
      NormDescriptor::lp(1.0),
      NormDescriptor::lp(2.0),
      NormDescriptor::lp(kInf),
      NormDescriptor::l1_plus_linf(),
      NormDescriptor::orlicz(OrliczFunction::power(3.0)),
      NormDescriptor::lorentz(ConcavePhi::power(0.5)),
      NormDescriptor::marcinkiewicz(ConcavePhi::power(0.5))};
  double worst = 0.0;
  std::string worst_norm;
  bool ok = true;
  for (const auto& nd : norms) {
    const ConvergenceReport rep = mean_convergence_table(sg, x, nd, grid);
    if (rep.final_ratio > worst) {
      worst = rep.final_ratio;
      worst_norm = nd.name();
    }
    if (rep.final_ratio > 0.05) ok = false;
  }
  return {7, "mean-convergence", ok,
          "worst final ratio " + format_double(worst) + " (" + worst_norm + ")"};
}

// 8. Submajorization and norm contraction under every certified built-in map.
inline CriterionResult c8_ds_submajorization(std::uint64_t seed) {
  const auto fams = builtin_families();
  const std::vector<NormDescriptor> norms = {
      NormDescriptor::lp(1.0),
      NormDescriptor::lp(2.0),
      NormDescriptor::lp(kInf),
      NormDescriptor::l1_plus_linf(),
      NormDescriptor::l1_cap_linf(),
      NormDescriptor::orlicz(OrliczFunction::power(2.0)),
      NormDescriptor::orlicz(OrliczFunction::exp_minus_one()),
      NormDescriptor::lorentz(ConcavePhi::power(0.5)),
      NormDescriptor::lorentz(ConcavePhi::min_t(1.0)),
      NormDescriptor::marcinkiewicz(ConcavePhi::power(0.5)),
      NormDescriptor::marcinkiewicz(ConcavePhi::min_t(1.0))};
  std::atomic<int> failures{0};
  double w = 0.0;
  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    const Semigroup sg = make_family(fams[fi].spec);
    const Superoperator t = evolve_superop(sg, std::vector<double>(sg.d, 1.0));
    std::vector<double> excess(100, 0.0);
    parallel_for(100, [&](std::size_t i) {
      Rng rng = trial_rng(seed, 8, fi * 1000 + i);
      const Operator x = random_operator(sg.shape, rng);
      const Operator tx = apply(t, x);
      if (!hl_leq(mu(tx), mu(x))) failures++;
      for (const auto& nd : norms) {
        const double nx = nd(x), ntx = nd(tx);
        excess[i] = std::max(excess[i], ntx - nx);
        if (ntx > nx + 1e-9) failures++;
      }
    });
    for (double v : excess) w = std::max(w, v);
  }
  return {8, "ds-submajorization", failures == 0,
          "all families x 100 x x 11 norms, max norm excess " + format_double(w)};
}

// 9. Cross-identities tying the parametric norms to the classical ones.
inline CriterionResult c9_norm_identities(std::uint64_t seed) {
  int failures = 0;
  double worst = 0.0;
  const auto check = [&](double a, double b) {
    const double rel = std::abs(a - b) / (1.0 + std::abs(b));
    worst = std::max(worst, rel);
    if (rel > 1e-8) ++failures;
  };
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng = trial_rng(seed, 9, i);
    const AlgebraShape shape = random_shape(rng, 3, 5);
    const Operator x = random_operator(shape, rng);
    const double p_choices[] = {1.0, 2.0, 3.0, 4.5};
    const double p = p_choices[uniform_int(rng, 0, 3)];
    check(luxemburg_norm(x, OrliczFunction::power(p)), norm_p(x, p));
    check(lorentz_norm(x, ConcavePhi::power(1.0)), norm_p(x, 1.0));
    check(lorentz_norm(x, ConcavePhi::min_t(1.0)), norm_l1_plus_linf(x));
    check(marcinkiewicz_norm(x, ConcavePhi::min_t(1.0)), norm_l1_cap_linf(x));
    check(marcinkiewicz_norm(x, ConcavePhi::power(1.0)), norm_p(x, kInf));
  }
  return {9, "norm-cross-identities", failures == 0,
          "50 operators x 5 identities, max rel deviation " + format_double(worst)};
}

// 10. The Luxemburg norm attains unit modular for x != 0.
inline CriterionResult c10_luxemburg_modular(std::uint64_t seed) {
  int failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng = trial_rng(seed, 10, i);
    const AlgebraShape shape = random_shape(rng, 3, 5);
    const Operator x = random_operator(shape, rng);
    const double p_choices[] = {1.0, 1.5, 2.0, 3.0};
    const std::vector<OrliczFunction> phis = {
        OrliczFunction::power(p_choices[uniform_int(rng, 0, 3)]),
        OrliczFunction::exp_minus_one()};
    for (const auto& phi : phis) {
      const double a = luxemburg_norm(x, phi);
      double modular = 0.0;
      for (const auto& [s, w] : singular_values(x))
        if (s > 0.0) modular += w * phi(s / a);
      worst = std::max(worst, std::abs(modular - 1.0));
      if (std::abs(modular - 1.0) > 1e-6) ++failures;
    }
  }
  return {10, "luxemburg-modular-equality", failures == 0,
          "50 operators x 2 families, max |modular - 1| " + format_double(worst)};
}

// 11. Maximal inequalities: discrete exhaustive search on the shift and on
// random substochastic instances; spectral-cut strategy on every built-in.
inline CriterionResult c11_maximal(std::uint64_t seed) {
  std::string details;
  // (a) 4-atom cyclic shift, x = (4,0,0,0), lambda = 1
  const Superoperator shift = cyclic_shift_superop(4);
  const Operator x0 = Operator::diagonal(shift.shape, {4.0, 0.0, 0.0, 0.0});
  const MaximalReport ra = yeadon_discrete_check(shift, x0, 1.0, 50);
  bool ok = ra.projection_found && ra.tau_e_perp <= ra.trace_budget + 1e-12 &&
            ra.achieved_constant <= 1.0 + 1e-9;
  details += "shift: constant " + format_double(ra.achieved_constant);

  // (b) 50 random diagonal instances with <= 10 atoms
  std::atomic<int> failures{0};
  parallel_for(50, [&](std::size_t i) {
    Rng rng = trial_rng(seed, 11, i);
    const int n = uniform_int(rng, 2, 10);
    // random doubly substochastic action: convex mix of permutations, scaled
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    double wsum = 0.0;
    for (int perm = 0; perm < 3; ++perm) {
      std::vector<int> p(n);
      for (int k = 0; k < n; ++k) p[k] = k;
      for (int k = n - 1; k > 0; --k) std::swap(p[k], p[uniform_int(rng, 0, k)]);
      const double w = uniform(rng, 0.1, 1.0);
      for (int k = 0; k < n; ++k) m(p[k], k) += w;
      wsum += w;
    }
    m *= uniform(rng, 0.6, 1.0) / wsum;
    const AlgebraShape shape = AlgebraShape::atoms(std::vector<double>(n, 1.0));
    const Superoperator t = diagonal_action(shape, m);
    std::vector<double> vals(n);
    for (auto& v : vals) v = uniform(rng, 0.0, 3.0);
    const Operator x = Operator::diagonal(shape, vals);
    const double l1 = norm_p(x, 1.0);
    const double lambda = l1 / (uniform(rng, 0.2, 0.8) * n);
    const MaximalReport r = yeadon_discrete_check(t, x, lambda, 50);
    if (!(r.projection_found && r.tau_e_perp <= r.trace_budget + 1e-12 &&
          r.achieved_constant <= 1.0 + 1e-9))
      failures++;
  });
  ok = ok && failures == 0;
  details += ", 50 random instances: " + std::to_string(50 - failures.load()) + "/50";

  // (c) spectral-cut strategy on every built-in; constant tracked on the
  // commutative suite (soft regression threshold 10)
  double worst_const = 0.0;
  for (const auto& [name, spec] : builtin_families()) {
    const Semigroup sg = make_family(spec);
    Rng rng = trial_rng(seed, 11, 500 + std::hash<std::string>{}(name) % 100);
    const Operator x = random_positive(sg.shape, rng);
    const double lambda = norm_p(x, 1.0) / (0.4 * sg.shape.total_trace());
    const MaximalReport r = maximal_projection_search(sg, x, lambda, {}, "chebyshev");
    if (!r.projection_found || r.tau_e_perp > r.trace_budget + 1e-12) ok = false;
    if (sg.shape.is_diagonal()) worst_const = std::max(worst_const, r.achieved_constant);
  }
  if (worst_const > 10.0) ok = false;
  details += ", chebyshev commutative constant " + format_double(worst_const);
  return {11, "maximal-inequalities", ok, details};
}

// 12. Product decomposition at rational times equals the direct average.
inline CriterionResult c12_product_average(std::uint64_t seed, int quad_order) {
  double worst = 0.0;
  int failures = 0;
  const std::vector<FamilySpec> specs = {
      FamilySpec::heat_cycle(4),
      FamilySpec::tensor_d({FamilySpec::heat_cycle(2), FamilySpec::heat_cycle(2)})};
  std::size_t trial = 0;
  for (const auto& spec : specs) {
    const Semigroup sg = make_family(spec);
    Rng rng = trial_rng(seed, 12, trial++);
    const Operator x = random_operator(sg.shape, rng);
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) {
        const Operator lhs = product_average(sg, x, n, m, quad_order);
        const Operator rhs = average_phi1(sg, x, double(n) / m);
        const double rel = norm_inf(lhs - rhs) / norm_inf(x);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ++failures;
      }
  }
  return {12, "product-decomposition", failures == 0,
          "(n,m) in {1..4}^2 on two families, max rel error " + format_double(worst)};
}

inline std::vector<CriterionResult> run_criteria_1_12(std::uint64_t seed, int quad_order) {
  std::vector<CriterionResult> out;
  const auto guard = [&](int id, const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({id, name, false, std::string("exception: ") + e.what()});
    }
  };
  guard(1, "mu-oracle-equivalence", [&] { return c1_mu_oracle(seed); });
  guard(2, "cross-method-averaging", [&] { return c2_cross_method(seed, quad_order); });
  guard(3, "closed-form-anchor", [&] { return c3_closed_form_anchor(seed, quad_order); });
  guard(4, "rate-bound", [&] { return c4_rate_bound(seed); });
  guard(5, "continuity-bound", [&] { return c5_continuity_bound(seed); });
  guard(6, "dyadic-comparison", [&] { return c6_dyadic(seed); });
  guard(7, "mean-convergence", [&] { return c7_mean_convergence(seed); });
  guard(8, "ds-submajorization", [&] { return c8_ds_submajorization(seed); });
  guard(9, "norm-cross-identities", [&] { return c9_norm_identities(seed); });
  guard(10, "luxemburg-modular-equality", [&] { return c10_luxemburg_modular(seed); });
  guard(11, "maximal-inequalities", [&] { return c11_maximal(seed); });
  guard(12, "product-decomposition", [&] { return c12_product_average(seed, quad_order); });
  return out;
}

}  // namespace selftest_detail

inline json acceptance_report_json(const std::vector<CriterionResult>& results,
                                   std::uint64_t seed) {
  json j;
  j["schema_version"] = 1;
  j["library_version"] = version();
  j["kind"] = "selftest";
  j["seed"] = seed;
  j["tolerances"] = tolerances_json();
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    all = all && r.passed;
  }
  j["criteria"] = arr;
  j["all_passed"] = all;
  return j;
}

// Runs the full acceptance suite.  The final criterion replays the suite with
// the same seed and demands byte-identical serialized reports.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                                   int quad_order = kDefaultQuadratureOrder) {
  auto results = selftest_detail::run_criteria_1_12(seed, quad_order);
  const std::string first = acceptance_report_json(results, seed).dump();
  const auto replay = selftest_detail::run_criteria_1_12(seed, quad_order);
  const std::string second = acceptance_report_json(replay, seed).dump();
  const bool identical = first == second;
  results.push_back({13, "determinism", identical,
                     identical ? "two runs, byte-identical reports"
                               : "reports differ between identically seeded runs"});
  return results;
}

}  // namespace ncerg
