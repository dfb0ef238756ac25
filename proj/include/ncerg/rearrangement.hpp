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
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncerg/algebra.hpp"

namespace ncerg {

// Eigenvalues within this distance of the threshold count as not exceeding it
// when evaluating the distribution function tau{|x| > lambda}.
inline constexpr double kDistributionBoundaryTol = 1e-12;

// Non-increasing, right-continuous step function on (0, inf) with finite
// support: value knots[i].second on [knots[i-1].first, knots[i].first), zero
// from the last endpoint on.  Canonical form: endpoints strictly increasing,
// values strictly decreasing, no zero values stored.
struct StepFunction {
  // (right_endpoint, value) pairs
  std::vector<std::pair<double, double>> knots;

  StepFunction() = default;

  // Builds the canonical form from arbitrary (right_endpoint, value) data
  // given in increasing endpoint order.
  static StepFunction from_knots(std::vector<std::pair<double, double>> raw) {
    StepFunction f;
    double prev_end = 0.0;
    double prev_val = std::numeric_limits<double>::infinity();
    for (auto& [end, val] : raw) {
      if (!(end > prev_end)) {
        if (end == prev_end) continue;  // zero-length interval
        throw std::invalid_argument("StepFunction: endpoints must increase");
      }
      if (val < 0.0) throw std::invalid_argument("StepFunction: values must be >= 0");
      if (val > prev_val + 1e-15)
        throw std::invalid_argument("StepFunction: values must be non-increasing");
      if (val == 0.0) break;  // zero tail is implicit
      if (!f.knots.empty() && f.knots.back().second == val) {
        f.knots.back().first = end;  // merge equal adjacent values
      } else {
        f.knots.emplace_back(end, val);
      }
      prev_end = end;
      prev_val = val;
    }
    return f;
  }

  bool empty() const { return knots.empty(); }

  double support_end() const { return knots.empty() ? 0.0 : knots.back().first; }

  // sup value = value at 0+
  double sup_value() const { return knots.empty() ? 0.0 : knots.front().second; }

  double operator()(double t) const {
    if (t < 0.0) throw std::invalid_argument("StepFunction: negative argument");
    for (const auto& [end, val] : knots)
      if (t < end) return val;
    return 0.0;
  }

  bool operator==(const StepFunction& o) const { return knots == o.knots; }
};

// Scaled copy c*f, c >= 0.
inline StepFunction scale(const StepFunction& f, double c) {
  if (c < 0.0) throw std::invalid_argument("scale: factor must be >= 0");
  if (c == 0.0) return StepFunction{};
  StepFunction r = f;
  for (auto& [end, val] : r.knots) val *= c;
  return r;
}

// tau{|x| > lambda}: trace weight of the spectral part of |x| strictly above
// lambda.  Non-increasing and right-continuous in lambda.
inline double distribution(const Operator& x, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("distribution: lambda must be >= 0");
  double d = 0.0;
  for (const auto& [s, w] : singular_values(x))
    if (s - lambda > kDistributionBoundaryTol) d += w;
  return d;
}

// Generalized singular value function mu_t(x) = inf{lambda > 0 :
// tau{|x| > lambda} <= t} as a step function: the k-th largest singular value
// on the interval of cumulative trace weight it occupies.
inline StepFunction mu(const Operator& x) {
  auto sv = singular_values(x);
  std::sort(sv.begin(), sv.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, double>> raw;
  double cum = 0.0;
  for (const auto& [s, w] : sv) {
    cum += w;
    raw.emplace_back(cum, s);
  }
  return StepFunction::from_knots(std::move(raw));
}

// Exact cumulative integral K(s) = int_0^s f(t) dt; piecewise linear,
// concave, non-decreasing.
inline double partial_integral(const StepFunction& f, double s) {
  if (s < 0.0) throw std::invalid_argument("partial_integral: s must be >= 0");
  double acc = 0.0;
  double prev = 0.0;
  for (const auto& [end, val] : f.knots) {
    if (s <= end) return acc + val * (s - prev);
    acc += val * (end - prev);
    prev = end;
  }
  return acc;
}

// int_0^inf f = total integral.
inline double total_integral(const StepFunction& f) {
  double acc = 0.0;
  double prev = 0.0;
  for (const auto& [end, val] : f.knots) {
    acc += val * (end - prev);
    prev = end;
  }
  return acc;
}

// Hardy-Littlewood submajorization: true iff int_0^s a <= int_0^s b for all
// s > 0.  Both cumulatives are piecewise linear with knots at the two knot
// sets, so checking the union of knots decides the inequality everywhere.
inline bool hl_leq(const StepFunction& a, const StepFunction& b) {
  const double tol = 1e-10 * (1.0 + std::max(total_integral(a), total_integral(b)));
  std::vector<double> points;
  points.reserve(a.knots.size() + b.knots.size());
  for (const auto& [end, val] : a.knots) points.push_back(end);
  for (const auto& [end, val] : b.knots) points.push_back(end);
  std::sort(points.begin(), points.end());
  for (double s : points)
    if (partial_integral(a, s) > partial_integral(b, s) + tol) return false;
  return true;
}

}  // namespace ncerg
