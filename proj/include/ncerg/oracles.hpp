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
#include <vector>

#include "ncerg/rearrangement.hpp"
#include "ncerg/spaces.hpp"

// Independent reference routes for quantities the library computes through
// structured paths.  Each oracle works from the defining formula alone; the
// self-test and the unit suites compare the two routes.

namespace ncerg::oracles {

namespace detail {

inline std::vector<std::pair<double, double>> raw_singular_values(const Operator& x) {
  std::vector<std::pair<double, double>> sv;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(x.blocks[k]);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      sv.emplace_back(svd.singularValues()(i), x.shape.blocks[k].weight);
  }
  return sv;
}

}  // namespace detail

// mu_t(x) straight from the infimum definition: scan the candidate levels
// (all singular values and zero) for the least one whose distribution weight
// does not exceed t.
inline double mu_at(const Operator& x, double t) {
  const auto sv = detail::raw_singular_values(x);
  std::vector<double> candidates{0.0};
  for (const auto& [s, w] : sv) candidates.push_back(s);
  std::sort(candidates.begin(), candidates.end());
  for (double lambda : candidates) {
    double d = 0.0;
    for (const auto& [s, w] : sv)
      if (s > lambda) d += w;
    if (d <= t) return lambda;
  }
  return candidates.back();
}

// Brute-force submajorization on a dense s-grid over both supports.
inline bool hl_leq_dense(const StepFunction& a, const StepFunction& b, int samples = 4096) {
  const double end = std::max(a.support_end(), b.support_end()) * 1.02 + 1e-9;
  const double tol = 1e-10 * (1.0 + std::max(total_integral(a), total_integral(b)));
  for (int i = 1; i <= samples; ++i) {
    const double s = end * i / samples;
    if (partial_integral(a, s) > partial_integral(b, s) + tol) return false;
  }
  return true;
}

// ||x||_{L1+M} from the decomposition x = y + z with y = u(|x|-c)_+ and
// z = u min(|x|, c), minimized over the cut level c.  The objective is
// piecewise linear in c with breakpoints at the singular values.
inline double l1_plus_linf_split(const Operator& x) {
  const auto sv = detail::raw_singular_values(x);
  double smax = 0.0;
  for (const auto& [s, w] : sv) smax = std::max(smax, s);
  std::vector<double> cuts{0.0, smax};
  for (const auto& [s, w] : sv) cuts.push_back(s);
  double best = std::numeric_limits<double>::infinity();
  for (double c : cuts) {
    double l1 = 0.0;
    for (const auto& [s, w] : sv) l1 += w * std::max(s - c, 0.0);
    best = std::min(best, l1 + std::min(smax, c));
  }
  return best;
}

// Luxemburg norm by a plain grid sweep in the scale parameter.
inline double luxemburg_sweep(const Operator& x, const OrliczFunction& phi, int samples = 20000) {
  const auto sv = detail::raw_singular_values(x);
  double smax = 0.0;
  for (const auto& [s, w] : sv) smax = std::max(smax, s);
  if (smax == 0.0) return 0.0;
  const double lo = smax * 1e-4, hi = smax * 1e4;
  double best = hi;
  for (int i = samples; i >= 0; --i) {
    const double a = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / samples);
    double m = 0.0;
    for (const auto& [s, w] : sv)
      if (s > 0.0) m += w * phi(s / a);
    if (m <= 1.0)
      best = a;
    else
      break;
  }
  return best;
}

// Marcinkiewicz sup on a dense logarithmic s-grid: coarse scan, then a fine
// re-scan around the coarse argmax.
inline double marcinkiewicz_dense(const StepFunction& f, const ConcavePhi& phi,
                                  int samples = 100000) {
  if (f.empty()) return 0.0;
  const double end = f.support_end();
  const auto scan = [&](double lo, double hi, int n, double& arg) {
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double s = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / n);
      const double r = partial_integral(f, s) / phi(s);
      if (r > best) {
        best = r;
        arg = s;
      }
    }
    return best;
  };
  double arg = end;
  double best = scan(end * 1e-9, end, samples, arg);
  const double step = std::pow(1e9, 1.0 / samples);
  double arg2 = arg;
  best = std::max(best, scan(arg / (step * step), std::min(arg * step * step, end), 20000, arg2));
  return best;
}

}  // namespace ncerg::oracles
