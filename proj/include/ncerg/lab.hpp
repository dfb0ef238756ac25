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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ncerg/averaging.hpp"
#include "ncerg/spaces.hpp"

namespace ncerg {

inline constexpr double kBoundSlack = 1e-9;

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return g;
}

// t_grid = {2^-first, ..., 2^-last}, decreasing.
inline std::vector<double> dyadic_grid(int first, int last) {
  std::vector<double> g;
  for (int j = first; j <= last; ++j) g.push_back(std::ldexp(1.0, -j));
  return g;
}

// --- mean convergence ---------------------------------------------------------

struct ConvergenceReport {
  std::vector<double> t_grid;   // strictly decreasing
  std::vector<double> values;   // ||A_t(x) - x||_N
  std::string norm_name;
  bool monotone_tail = false;   // non-increasing over the last half of the grid
  double final_ratio = 0.0;     // values.back() / values.front()
};

inline ConvergenceReport mean_convergence_table(const Semigroup& sg, const Operator& x,
                                                const NormDescriptor& norm,
                                                const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i + 1]))
      throw std::invalid_argument("mean_convergence_table: t_grid must decrease");
  if (t_grid.empty() || !(t_grid.back() > 0.0))
    throw std::invalid_argument("mean_convergence_table: t_grid must be positive");

  ConvergenceReport rep;
  rep.t_grid = t_grid;
  rep.norm_name = norm.name();
  rep.values.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    rep.values[i] = norm(average_phi1(sg, x, t_grid[i]) - x);

  rep.monotone_tail = true;
  const std::size_t half = t_grid.size() / 2;
  for (std::size_t i = half; i + 1 < t_grid.size(); ++i)
    if (rep.values[i + 1] > rep.values[i] + 1e-12) rep.monotone_tail = false;
  rep.final_ratio =
      rep.values.front() > 0.0 ? rep.values.back() / rep.values.front() : 0.0;
  return rep;
}

// --- quantitative bound checks -------------------------------------------------

struct BoundCheckRow {
  std::string label;
  double a = 0.0;  // primary parameter (t, or v)
  double b = 0.0;  // secondary parameter (s, or coefficient), 0 when unused
  double lhs = 0.0;
  double rhs = 0.0;
};

struct BoundReport {
  std::string name;
  std::vector<BoundCheckRow> rows;
  double slack = kBoundSlack;
  double max_violation = 0.0;  // max(lhs - rhs - slack, 0)
  bool passed = true;

  void add(BoundCheckRow row) {
    max_violation = std::max(max_violation, row.lhs - row.rhs - slack);
    if (row.lhs > row.rhs + slack) passed = false;
    rows.push_back(std::move(row));
  }
};

// Rate constant C(t0, d) = (2/t0) * sum_{k=1}^{d} binom(d, k) = (2/t0)(2^d - 1).
inline double rate_constant(double t0, int d) {
  return 2.0 / t0 * (std::ldexp(1.0, d) - 1.0);
}

// Rate bound for x = A_{t0}(y): for every grid t < t0,
//   ||A_t(x) - x||_p <= t * C(t0, d) * ||y||_p,
// plus the intermediate evolution bound
//   ||T_v(x) - x||_p <= 2 (t0^d - (t0-v)^d) / t0^d * ||y||_p
// at v = (t, ..., t).
inline BoundReport check_average_rate_bound(const Semigroup& sg, const Operator& y, double t0, double p,
                                  const std::vector<double>& t_grid, double slack = kBoundSlack) {
  if (!(t0 > 0.0)) throw std::invalid_argument("check_average_rate_bound: t0 must be > 0");
  for (double t : t_grid)
    if (!(t > 0.0 && t < t0)) throw std::invalid_argument("check_average_rate_bound: grid must lie in (0,t0)");

  BoundReport rep;
  rep.name = "rate";
  rep.slack = slack;
  const Operator x = average_phi1(sg, y, t0);
  const double ynorm = norm_p(y, p);
  const double c = rate_constant(t0, sg.d);
  for (double t : t_grid) {
    rep.add({"A_t", t, 0.0, norm_p(average_phi1(sg, x, t) - x, p), t * c * ynorm});
    const double coeff =
        2.0 * (std::pow(t0, sg.d) - std::pow(t0 - t, sg.d)) / std::pow(t0, sg.d);
    rep.add({"T_v", t, 0.0, norm_p(evolve(sg, t, x) - x, p), coeff * ynorm});
  }
  return rep;
}

// Continuity bound ||A_t(x) - A_s(x)||_p <= 2 (t^d - s^d)/t^d ||x||_p, 0 < s < t.
inline BoundReport check_continuity_bound(const Semigroup& sg, const Operator& x, double p,
                                         const std::vector<std::pair<double, double>>& st_pairs,
                                         double slack = kBoundSlack) {
  BoundReport rep;
  rep.name = "continuity";
  rep.slack = slack;
  const double xnorm = norm_p(x, p);
  for (const auto& [s, t] : st_pairs) {
    if (!(0.0 < s && s < t)) throw std::invalid_argument("check_continuity_bound: need 0 < s < t");
    const double coeff = 2.0 * (std::pow(t, sg.d) - std::pow(s, sg.d)) / std::pow(t, sg.d);
    rep.add({"A_t-A_s", t, s,
             norm_p(average_phi1(sg, x, t) - average_phi1(sg, x, s), p), coeff * xnorm});
  }
  return rep;
}

// Dyadic comparison of A_t against A_{1/floor(1/t)} in the uniform norm.  With
// k = floor(1/t) and cube-shaped averaging regions the coefficient is
//   k^d (k^-d - t^d) + |k^d - t^-d| t^d,
// which vanishes as t -> 0.
inline double dyadic_comparison_coefficient(double t, int d) {
  const double k = std::floor(1.0 / t);
  const double kd = std::pow(k, d);
  const double td = std::pow(t, d);
  return kd * (1.0 / kd - td) + std::abs(kd - 1.0 / td) * td;
}

inline BoundReport check_dyadic_comparison(const Semigroup& sg, const Operator& x,
                                   const std::vector<double>& t_grid, double slack = kBoundSlack) {
  BoundReport rep;
  rep.name = "dyadic";
  rep.slack = slack;
  const double xnorm = norm_inf(x);
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("check_dyadic_comparison: t must be in (0,1)");
    const int k = static_cast<int>(std::floor(1.0 / t));
    const double coeff = dyadic_comparison_coefficient(t, sg.d);
    rep.add({"dyadic", t, coeff,
             norm_inf(average_phi1(sg, x, t) - average_phi1(sg, x, 1.0 / k)), coeff * xnorm});
  }
  return rep;
}

// --- maximal inequalities -------------------------------------------------------

struct BruteForceTooLarge : std::invalid_argument {
  BruteForceTooLarge()
      : std::invalid_argument("brute-force projection search needs an atomic algebra with <= 12 atoms") {}
};

struct MaximalReport {
  double lambda = 0.0;
  double trace_budget = 0.0;
  bool projection_found = false;
  double tau_e_perp = 0.0;
  double achieved_sup = 0.0;
  double achieved_constant = 0.0;
  std::string strategy;
  double grid_modulus_bound = 0.0;  // continuity modulus of the t-grid spacing
  Operator projection;
};

namespace detail {

// Spectral cut e = chi_{[0, level]}(s) for self-adjoint s.
inline Operator spectral_cut(const Operator& s, double level) {
  const SpectralDecomposition sd = spectral_decompose(s, 1e-7);
  Operator e = Operator::zero(s.shape);
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues[i] <= level) e = e + sd.eigenprojections[i];
  return e;
}

inline double compressed_sup(const std::vector<Operator>& orbit, const Operator& e) {
  double sup = 0.0;
  for (const auto& a : orbit) sup = std::max(sup, norm_inf(e * a * e));
  return sup;
}

struct BruteForceResult {
  unsigned mask = 0;
  double sup = 0.0;
  double tau_perp = 0.0;
  bool any = false;
};

// Exhaustive subset search over atoms.  Feasible = trace budget respected;
// minimizes the compressed sup, tie-breaking toward larger kept trace.
inline BruteForceResult brute_force_min_sup(const std::vector<std::vector<double>>& orbit_diag,
                                            const std::vector<double>& weights, double budget) {
  const int n = static_cast<int>(weights.size());
  BruteForceResult best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double tau_perp = 0.0;
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) tau_perp += weights[i];
    if (tau_perp > budget + 1e-12) continue;
    double sup = 0.0;
    for (const auto& row : orbit_diag)
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) sup = std::max(sup, std::abs(row[i]));
    double tau_kept = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) tau_kept += weights[i];
    const double best_kept = [&] {
      double k = 0.0;
      for (int i = 0; i < n; ++i)
        if (best.mask & (1u << i)) k += weights[i];
      return k;
    }();
    if (!best.any || sup < best.sup - 1e-15 ||
        (std::abs(sup - best.sup) <= 1e-15 && tau_kept > best_kept)) {
      best = {mask, sup, tau_perp, true};
    }
  }
  return best;
}

inline Operator mask_projection(const AlgebraShape& shape, unsigned mask) {
  std::vector<double> d(shape.block_count(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (mask & (1u << i)) d[i] = 1.0;
  return Operator::diagonal(shape, d);
}

}  // namespace detail

// Searches for a projection e with tau(e^perp) <= 2 ||x||_1 / lambda on which
// all averages A_t(x) over the t-grid stay uniformly bounded.  The sup over
// t > 0 is under-approximated by the finite grid; the report carries the
// continuity modulus of the grid spacing so refinement controls the gap.
inline MaximalReport maximal_projection_search(const Semigroup& sg, const Operator& x,
                                               double lambda, std::vector<double> t_grid,
                                               const std::string& strategy) {
  if (!(lambda > 0.0)) throw std::invalid_argument("maximal search: lambda must be > 0");
  if (!is_positive(x, 1e-7)) throw std::invalid_argument("maximal search: x must be positive");
  if (t_grid.empty()) t_grid = log_grid(1e-3, 1e3, 64);
  std::sort(t_grid.begin(), t_grid.end());

  MaximalReport rep;
  rep.lambda = lambda;
  rep.strategy = strategy;
  rep.trace_budget = 2.0 * norm_p(x, 1.0) / lambda;

  std::vector<Operator> orbit;
  orbit.reserve(t_grid.size());
  for (double t : t_grid) orbit.push_back(average_phi1(sg, x, t));
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double s = t_grid[i], t = t_grid[i + 1];
    rep.grid_modulus_bound =
        std::max(rep.grid_modulus_bound,
                 2.0 * (std::pow(t, sg.d) - std::pow(s, sg.d)) / std::pow(t, sg.d) * norm_inf(x));
  }

  const double total = sg.shape.total_trace();
  if (strategy == "chebyshev") {
    Operator s = Operator::zero(sg.shape);
    for (const auto& a : orbit) s = s + a;
    s = (1.0 / static_cast<double>(orbit.size())) * s;
    // cut at lambda/2: tau{S > lambda/2} <= ||S||_1/(lambda/2) <= 2||x||_1/lambda
    rep.projection = detail::spectral_cut(s, 0.5 * lambda);
    rep.tau_e_perp = total - trace(rep.projection).real();
    rep.achieved_sup = detail::compressed_sup(orbit, rep.projection);
    rep.projection_found = rep.tau_e_perp <= rep.trace_budget + 1e-12;
  } else if (strategy == "greedy_peel") {
    Operator e = Operator::identity(sg.shape);
    double tau_perp = 0.0;
    while (true) {
      const double sup = detail::compressed_sup(orbit, e);
      if (sup <= lambda * (1.0 + 1e-9)) {
        rep.projection_found = true;
        break;
      }
      // peel the top spectral cluster of the worst compressed average
      std::size_t worst = 0;
      double worst_norm = -1.0;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        const double v = norm_inf(e * orbit[i] * e);
        if (v > worst_norm) {
          worst_norm = v;
          worst = i;
        }
      }
      const SpectralDecomposition sd = spectral_decompose(e * orbit[worst] * e, 1e-7);
      const Operator& top = sd.eigenprojections.back();
      const double top_trace = sd.traces.back();
      if (tau_perp + top_trace > rep.trace_budget + 1e-12) break;  // budget exhausted
      e = e - top;
      tau_perp += top_trace;
    }
    rep.projection = e;
    rep.tau_e_perp = total - trace(e).real();
    rep.achieved_sup = detail::compressed_sup(orbit, e);
  } else if (strategy == "brute_force") {
    if (!sg.shape.is_diagonal() || sg.shape.block_count() > 12) throw BruteForceTooLarge();
    std::vector<std::vector<double>> orbit_diag;
    for (const auto& a : orbit) orbit_diag.push_back(a.diagonal_values());
    std::vector<double> w;
    for (const auto& b : sg.shape.blocks) w.push_back(b.weight);
    const auto best = detail::brute_force_min_sup(orbit_diag, w, rep.trace_budget);
    rep.projection_found = best.any;
    if (best.any) {
      rep.projection = detail::mask_projection(sg.shape, best.mask);
      rep.tau_e_perp = best.tau_perp;
      rep.achieved_sup = best.sup;
    }
  } else {
    throw std::invalid_argument("unknown strategy: " + strategy);
  }
  rep.achieved_constant = rep.achieved_sup / lambda;
  return rep;
}

// Discrete maximal inequality check: looks for e with tau(e^perp) <= ||x||_1 /
// lambda and sup_{n <= N} ||e M_n(x) e||_inf <= lambda, where M_n is the n-th
// Cesaro average of T.  Exhaustive over atoms when possible, spectral-cut
// fallback otherwise.
inline MaximalReport yeadon_discrete_check(const Superoperator& t, const Operator& x,
                                           double lambda, int n_max) {
  if (!(lambda > 0.0)) throw std::invalid_argument("yeadon check: lambda must be > 0");
  if (!is_positive(x, 1e-7)) throw std::invalid_argument("yeadon check: x must be positive");
  if (n_max < 1) throw std::invalid_argument("yeadon check: N must be >= 1");

  MaximalReport rep;
  rep.lambda = lambda;
  rep.trace_budget = norm_p(x, 1.0) / lambda;

  std::vector<Operator> orbit;  // M_1, ..., M_N
  orbit.reserve(n_max);
  Operator cur = x, acc = x;
  orbit.push_back(x);
  for (int n = 2; n <= n_max; ++n) {
    cur = apply(t, cur);
    acc = acc + cur;
    orbit.push_back((1.0 / n) * acc);
  }
  const double total = t.shape.total_trace();

  if (t.shape.is_diagonal() && t.shape.block_count() <= 12) {
    rep.strategy = "brute_force";
    std::vector<std::vector<double>> orbit_diag;
    for (const auto& a : orbit) orbit_diag.push_back(a.diagonal_values());
    std::vector<double> w;
    for (const auto& b : t.shape.blocks) w.push_back(b.weight);
    // among budget-feasible masks achieving sup <= lambda, keep the largest
    // trace; fall back to the min-sup mask when the target is unreachable
    const int n = static_cast<int>(w.size());
    unsigned best_mask = 0;
    double best_kept = -1.0, best_sup = 0.0, best_perp = 0.0;
    bool found = false;
    const auto fallback = detail::brute_force_min_sup(orbit_diag, w, rep.trace_budget);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double tau_perp = 0.0, tau_kept = 0.0;
      for (int i = 0; i < n; ++i)
        ((mask & (1u << i)) ? tau_kept : tau_perp) += w[i];
      if (tau_perp > rep.trace_budget + 1e-12) continue;
      double sup = 0.0;
      for (const auto& row : orbit_diag)
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) sup = std::max(sup, std::abs(row[i]));
      if (sup <= lambda * (1.0 + 1e-9) && tau_kept > best_kept) {
        best_mask = mask;
        best_kept = tau_kept;
        best_sup = sup;
        best_perp = tau_perp;
        found = true;
      }
    }
    rep.projection_found = found;
    if (found) {
      rep.projection = detail::mask_projection(t.shape, best_mask);
      rep.tau_e_perp = best_perp;
      rep.achieved_sup = best_sup;
    } else if (fallback.any) {
      rep.projection = detail::mask_projection(t.shape, fallback.mask);
      rep.tau_e_perp = fallback.tau_perp;
      rep.achieved_sup = fallback.sup;
    }
  } else {
    rep.strategy = "chebyshev";
    Operator s = Operator::zero(t.shape);
    for (const auto& a : orbit) s = s + a;
    s = (1.0 / static_cast<double>(orbit.size())) * s;
    rep.projection = detail::spectral_cut(s, lambda);
    rep.tau_e_perp = total - trace(rep.projection).real();
    rep.achieved_sup = detail::compressed_sup(orbit, rep.projection);
    rep.projection_found = rep.tau_e_perp <= rep.trace_budget + 1e-12 &&
                           rep.achieved_sup <= lambda * (1.0 + 1e-9);
  }
  rep.achieved_constant = rep.achieved_sup / lambda;
  return rep;
}

}  // namespace ncerg
