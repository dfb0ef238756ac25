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
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncerg/algebra.hpp"
#include "ncerg/rearrangement.hpp"
#include "ncerg/util.hpp"

namespace ncerg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct InvalidOrlicz : std::invalid_argument {
  explicit InvalidOrlicz(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidPhi : std::invalid_argument {
  explicit InvalidPhi(const std::string& what) : std::invalid_argument(what) {}
};

// Convex Orlicz function Phi on [0,inf) with Phi(0)=0, Phi(u)>0 for u>0.
// Built-ins: power u^p (p>=1) and e^u-1; user functions are piecewise linear
// with explicitly supplied Delta_2 growth flags.
class OrliczFunction {
 public:
  static OrliczFunction power(double p) {
    if (!(p >= 1.0)) throw InvalidOrlicz("Orlicz power exponent must be >= 1");
    OrliczFunction f;
    f.kind_ = Kind::Power;
    f.p_ = p;
    f.delta2_zero_ = true;
    f.delta2_inf_ = true;
    f.name_ = "power(" + format_double(p) + ")";
    f.validate();
    return f;
  }

  static OrliczFunction exp_minus_one() {
    OrliczFunction f;
    f.kind_ = Kind::ExpM1;
    f.delta2_zero_ = true;   // (e^{2u}-1)/(e^u-1) -> 2 as u -> 0
    f.delta2_inf_ = false;   // ratio grows like e^u at infinity
    f.name_ = "exp_minus_one";
    f.validate();
    return f;
  }

  // Points (u_i, y_i) with u_0 = 0, y_0 = 0, non-decreasing slopes; the last
  // slope extrapolates.  Delta_2 flags cannot be inferred from finitely many
  // samples and must be supplied.
  static OrliczFunction piecewise_linear(std::vector<std::pair<double, double>> pts,
                                         bool delta2_at_zero, bool delta2_at_infinity) {
    if (pts.size() < 2 || pts.front().first != 0.0 || pts.front().second != 0.0)
      throw InvalidOrlicz("piecewise Orlicz function must start at (0,0)");
    OrliczFunction f;
    f.kind_ = Kind::Piecewise;
    f.points_ = std::move(pts);
    f.delta2_zero_ = delta2_at_zero;
    f.delta2_inf_ = delta2_at_infinity;
    f.name_ = "piecewise_convex";
    f.validate();
    return f;
  }

  double operator()(double u) const {
    if (u < 0.0) throw std::invalid_argument("Orlicz function argument must be >= 0");
    switch (kind_) {
      case Kind::Power:
        return std::pow(u, p_);
      case Kind::ExpM1:
        return std::expm1(u);
      case Kind::Piecewise: {
        if (u == 0.0) return 0.0;
        for (std::size_t i = 1; i < points_.size(); ++i) {
          if (u <= points_[i].first) {
            const auto& [u0, y0] = points_[i - 1];
            const auto& [u1, y1] = points_[i];
            return y0 + (y1 - y0) * (u - u0) / (u1 - u0);
          }
        }
        const auto& [u0, y0] = points_[points_.size() - 2];
        const auto& [u1, y1] = points_.back();
        return y1 + (y1 - y0) / (u1 - u0) * (u - u1);
      }
    }
    return 0.0;
  }

  bool delta2_at_zero() const { return delta2_zero_; }
  bool delta2_at_infinity() const { return delta2_inf_; }
  const std::string& name() const { return name_; }

 private:
  enum class Kind { Power, ExpM1, Piecewise };

  // Midpoint convexity and positivity on a 256-point log grid.
  void validate() const {
    const auto& f = *this;
    if (f(0.0) != 0.0) throw InvalidOrlicz("Phi(0) must be 0");
    const int n = 256;
    const double lo = std::log(1e-6), hi = std::log(1e6);
    double prev_u = 0.0, prev_y = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = std::exp(lo + (hi - lo) * i / (n - 1));
      const double y = f(u);
      if (!(y > 0.0)) throw InvalidOrlicz("Phi(u) must be > 0 for u > 0");
      if (i > 0) {
        const double mid = 0.5 * (prev_u + u);
        if (f(mid) > 0.5 * (prev_y + y) + 1e-12 * (1.0 + 0.5 * (prev_y + y)))
          throw InvalidOrlicz("Phi fails midpoint convexity");
      }
      prev_u = u;
      prev_y = y;
    }
  }

  Kind kind_ = Kind::Power;
  double p_ = 1.0;
  std::vector<std::pair<double, double>> points_;
  bool delta2_zero_ = true;
  bool delta2_inf_ = true;
  std::string name_;
};

// Concave phi on [0,inf) with phi(0)=0, phi(t)>0 for t>0.  Built-ins: t^alpha
// (0<alpha<=1), min(t,c), log(1+t); user functions are piecewise linear with
// an optional jump at 0+.
class ConcavePhi {
 public:
  static ConcavePhi power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidPhi("power alpha must be in (0,1]");
    ConcavePhi f;
    f.kind_ = Kind::Power;
    f.alpha_ = alpha;
    f.zero_plus_ = 0.0;
    f.at_infinity_ = kInf;
    f.slope_infinity_ = (alpha < 1.0) ? 0.0 : 1.0;
    f.name_ = "power(" + format_double(alpha) + ")";
    return f;
  }

  static ConcavePhi min_t(double c) {
    if (!(c > 0.0)) throw InvalidPhi("min(t,c) requires c > 0");
    ConcavePhi f;
    f.kind_ = Kind::MinT;
    f.c_ = c;
    f.zero_plus_ = 0.0;
    f.at_infinity_ = c;
    f.slope_infinity_ = 0.0;
    f.name_ = "min_t(" + format_double(c) + ")";
    return f;
  }

  static ConcavePhi log1p_t() {
    ConcavePhi f;
    f.kind_ = Kind::Log1p;
    f.zero_plus_ = 0.0;
    f.at_infinity_ = kInf;
    f.slope_infinity_ = 0.0;
    f.name_ = "log1p";
    return f;
  }

  // phi(0)=0, phi(0+)=jump_at_zero, then linear segments through the given
  // (t_i, y_i) points; the last slope extrapolates.  Slopes must be
  // non-increasing and the value at 0+ must not exceed the first point.
  static ConcavePhi piecewise_linear(double jump_at_zero,
                                     std::vector<std::pair<double, double>> pts) {
    if (jump_at_zero < 0.0) throw InvalidPhi("jump at zero must be >= 0");
    if (pts.empty()) throw InvalidPhi("piecewise phi needs at least one point");
    ConcavePhi f;
    f.kind_ = Kind::Piecewise;
    f.jump_ = jump_at_zero;
    f.points_ = std::move(pts);
    double prev_t = 0.0, prev_y = jump_at_zero;
    double prev_slope = kInf;
    for (const auto& [t, y] : f.points_) {
      if (!(t > prev_t)) throw InvalidPhi("piecewise phi abscissae must increase");
      if (y < prev_y) throw InvalidPhi("piecewise phi must be non-decreasing");
      const double slope = (y - prev_y) / (t - prev_t);
      if (slope > prev_slope + 1e-12) throw InvalidPhi("piecewise phi fails concavity");
      prev_slope = slope;
      prev_t = t;
      prev_y = y;
    }
    if (!(f.jump_ > 0.0 || f.points_.front().second > 0.0))
      throw InvalidPhi("phi(t) must be > 0 for t > 0");
    f.zero_plus_ = jump_at_zero;
    f.slope_infinity_ = prev_slope == kInf ? 0.0 : prev_slope;
    f.at_infinity_ = (f.slope_infinity_ > 0.0) ? kInf : f.points_.back().second;
    f.name_ = "piecewise_concave";
    return f;
  }

  double operator()(double t) const {
    if (t < 0.0) throw std::invalid_argument("phi argument must be >= 0");
    if (t == 0.0) return 0.0;
    switch (kind_) {
      case Kind::Power:
        return std::pow(t, alpha_);
      case Kind::MinT:
        return std::min(t, c_);
      case Kind::Log1p:
        return std::log1p(t);
      case Kind::Piecewise: {
        double prev_t = 0.0, prev_y = jump_;
        for (const auto& [tt, yy] : points_) {
          if (t <= tt) return prev_y + (yy - prev_y) * (t - prev_t) / (tt - prev_t);
          prev_t = tt;
          prev_y = yy;
        }
        return prev_y + slope_infinity_ * (t - prev_t);
      }
    }
    return 0.0;
  }

  double phi_at_zero_plus() const { return zero_plus_; }
  double phi_at_infinity() const { return at_infinity_; }  // kInf marks infinity
  double slope_at_infinity() const { return slope_infinity_; }
  const std::string& name() const { return name_; }

  // Breakpoints where the function is not smooth; empty for smooth built-ins.
  std::vector<double> knot_points() const {
    std::vector<double> k;
    if (kind_ == Kind::MinT) k.push_back(c_);
    if (kind_ == Kind::Piecewise)
      for (const auto& [t, y] : points_) k.push_back(t);
    return k;
  }

 private:
  enum class Kind { Power, MinT, Log1p, Piecewise };
  Kind kind_ = Kind::Power;
  double alpha_ = 1.0;
  double c_ = 1.0;
  double jump_ = 0.0;
  std::vector<std::pair<double, double>> points_;
  double zero_plus_ = 0.0;
  double at_infinity_ = kInf;
  double slope_infinity_ = 0.0;
  std::string name_;
};

// --- L^p ---------------------------------------------------------------

inline double norm_p(const StepFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_p requires p >= 1");
  if (f.empty()) return 0.0;
  if (std::isinf(p)) return f.sup_value();
  double acc = 0.0, prev = 0.0;
  for (const auto& [end, val] : f.knots) {
    acc += std::pow(val, p) * (end - prev);
    prev = end;
  }
  return std::pow(acc, 1.0 / p);
}

inline double norm_p(const Operator& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_p requires p >= 1");
  if (std::isinf(p)) return norm_inf(x);
  double acc = 0.0;
  for (const auto& [s, w] : singular_values(x)) acc += w * std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

// --- L^1 + M and L^1 n M -------------------------------------------------

inline double norm_l1_plus_linf(const StepFunction& f) { return partial_integral(f, 1.0); }
inline double norm_l1_plus_linf(const Operator& x) { return partial_integral(mu(x), 1.0); }

inline double norm_l1_cap_linf(const StepFunction& f) {
  return std::max(norm_p(f, 1.0), norm_p(f, kInf));
}
inline double norm_l1_cap_linf(const Operator& x) {
  return std::max(norm_p(x, 1.0), norm_p(x, kInf));
}

// --- Orlicz (Luxemburg norm) --------------------------------------------

namespace detail {

// Modular tau(Phi(f/a)) over the weighted value list of |x| or a step
// function's (value, length) pairs.
inline double orlicz_modular(const std::vector<std::pair<double, double>>& values_weights,
                             const OrliczFunction& phi, double a) {
  double m = 0.0;
  for (const auto& [v, w] : values_weights) {
    if (v == 0.0) continue;
    m += w * phi(v / a);
    if (std::isinf(m)) return m;
  }
  return m;
}

inline double luxemburg_from_values(std::vector<std::pair<double, double>> vw,
                                    const OrliczFunction& phi) {
  double vmax = 0.0;
  for (const auto& [v, w] : vw) vmax = std::max(vmax, v);
  if (vmax == 0.0) return 0.0;
  // bracket the unit-modular level; the modular is continuous and
  // non-increasing in a, so the infimum is attained with equality
  double a_hi = vmax;
  int guard = 0;
  while (orlicz_modular(vw, phi, a_hi) > 1.0 && guard++ < 2000) a_hi *= 2.0;
  double a_lo = a_hi;
  guard = 0;
  while (orlicz_modular(vw, phi, a_lo * 0.5) <= 1.0 && guard++ < 2000) a_lo *= 0.5;
  a_lo *= 0.5;
  // bisection to 1e-10 relative width
  while (a_hi - a_lo > 1e-10 * a_hi) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (orlicz_modular(vw, phi, mid) > 1.0)
      a_lo = mid;
    else
      a_hi = mid;
  }
  return 0.5 * (a_lo + a_hi);
}

inline std::vector<std::pair<double, double>> value_weights(const StepFunction& f) {
  std::vector<std::pair<double, double>> vw;
  double prev = 0.0;
  for (const auto& [end, val] : f.knots) {
    vw.emplace_back(val, end - prev);
    prev = end;
  }
  return vw;
}

}  // namespace detail

inline double luxemburg_norm(const Operator& x, const OrliczFunction& phi) {
  return detail::luxemburg_from_values(singular_values(x), phi);
}

inline double luxemburg_norm(const StepFunction& f, const OrliczFunction& phi) {
  return detail::luxemburg_from_values(detail::value_weights(f), phi);
}

// --- Lorentz ---------------------------------------------------------------

// ||x||_{Lambda_phi} = int_0^inf mu_t(x) dphi(t); exact Riemann-Stieltjes sum
// since mu is a step function.  A jump of phi at 0+ contributes through the
// first increment phi(s_1) - phi(0).
inline double lorentz_norm(const StepFunction& f, const ConcavePhi& phi) {
  double acc = 0.0, prev = 0.0;
  for (const auto& [end, val] : f.knots) {
    acc += val * (phi(end) - phi(prev));
    prev = end;
  }
  return acc;
}

inline double lorentz_norm(const Operator& x, const ConcavePhi& phi) {
  return lorentz_norm(mu(x), phi);
}

// --- Marcinkiewicz -----------------------------------------------------------

namespace detail {

inline double golden_section_max(const std::function<double(double)>& g, double a, double b) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > 1e-10 * (1.0 + b)) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g(c);
    }
  }
  return std::max(fc, fd);
}

}  // namespace detail

// ||x||_{M_phi} = sup_{s>0} (1/phi(s)) int_0^s mu_t(x) dt.  The cumulative is
// piecewise linear with knots at the mu breakpoints; the ratio is evaluated at
// the union of mu and phi knots and probed inside each segment (interior
// maxima occur for smooth phi).  Beyond the support the cumulative is constant
// and phi non-decreasing, so the tail sup sits at the last knot.
inline double marcinkiewicz_norm(const StepFunction& f, const ConcavePhi& phi) {
  if (f.empty()) return 0.0;
  std::vector<double> points;
  for (const auto& [end, val] : f.knots) points.push_back(end);
  for (double t : phi.knot_points())
    if (t > 0.0 && t < f.support_end()) points.push_back(t);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto ratio = [&](double s) { return partial_integral(f, s) / phi(s); };
  double best = 0.0;
  double prev = 0.0;
  for (double s : points) {
    best = std::max(best, ratio(s));
    const double lo = (prev == 0.0) ? s * 1e-9 : prev;
    best = std::max(best, detail::golden_section_max(ratio, lo, s));
    prev = s;
  }
  return best;
}

inline double marcinkiewicz_norm(const Operator& x, const ConcavePhi& phi) {
  return marcinkiewicz_norm(mu(x), phi);
}

// --- R_tau -------------------------------------------------------------------

// Symbolic stand-in for the unit of an infinite-trace algebra; mu_t(1) = 1 for
// all t, which never vanishes at infinity.
struct SymbolicUnitFunction {};

inline bool in_R_tau(const StepFunction&) { return true; }  // finite support
inline bool in_R_tau(const SymbolicUnitFunction&) { return false; }

// --- descriptors and traits ---------------------------------------------------

struct SpaceTraits {
  bool order_continuous = false;
  bool contains_unit_when_trace_infinite = false;
  bool subset_of_R_tau = true;

  SpaceTraits(bool oc, bool unit) noexcept
      : order_continuous(oc),
        contains_unit_when_trace_infinite(unit),
        subset_of_R_tau(!unit) {}
};

// A symmetric-space norm selected by name, evaluable on operators and step
// functions.
class NormDescriptor {
 public:
  enum class Kind { Lp, L1PlusLinf, L1CapLinf, Orlicz, Lorentz, Marcinkiewicz };

  static NormDescriptor lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp descriptor requires p >= 1");
    NormDescriptor d;
    d.kind_ = Kind::Lp;
    d.p_ = p;
    d.name_ = std::isinf(p) ? "linf" : ("l" + format_double(p));
    return d;
  }
  static NormDescriptor l1_plus_linf() {
    NormDescriptor d;
    d.kind_ = Kind::L1PlusLinf;
    d.name_ = "l1+linf";
    return d;
  }
  static NormDescriptor l1_cap_linf() {
    NormDescriptor d;
    d.kind_ = Kind::L1CapLinf;
    d.name_ = "l1&linf";
    return d;
  }
  static NormDescriptor orlicz(OrliczFunction phi) {
    NormDescriptor d;
    d.kind_ = Kind::Orlicz;
    d.orlicz_ = std::move(phi);
    d.name_ = "orlicz:" + d.orlicz_.name();
    return d;
  }
  static NormDescriptor lorentz(ConcavePhi phi) {
    NormDescriptor d;
    d.kind_ = Kind::Lorentz;
    d.phi_ = std::move(phi);
    d.name_ = "lorentz:" + d.phi_.name();
    return d;
  }
  static NormDescriptor marcinkiewicz(ConcavePhi phi) {
    NormDescriptor d;
    d.kind_ = Kind::Marcinkiewicz;
    d.phi_ = std::move(phi);
    d.name_ = "marcinkiewicz:" + d.phi_.name();
    return d;
  }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const OrliczFunction& orlicz_function() const { return orlicz_; }
  const ConcavePhi& phi() const { return phi_; }
  const std::string& name() const { return name_; }

  template <typename X>
  double operator()(const X& x) const {
    switch (kind_) {
      case Kind::Lp:
        return norm_p(x, p_);
      case Kind::L1PlusLinf:
        return norm_l1_plus_linf(x);
      case Kind::L1CapLinf:
        return norm_l1_cap_linf(x);
      case Kind::Orlicz:
        return luxemburg_norm(x, orlicz_);
      case Kind::Lorentz:
        return lorentz_norm(x, phi_);
      case Kind::Marcinkiewicz:
        return marcinkiewicz_norm(x, phi_);
    }
    return 0.0;
  }

 private:
  Kind kind_ = Kind::Lp;
  double p_ = 1.0;
  OrliczFunction orlicz_ = OrliczFunction::power(1.0);
  ConcavePhi phi_ = ConcavePhi::power(1.0);
  std::string name_ = "l1";
};

// Membership/order-continuity traits of the space the descriptor names, read
// against an infinite-trace algebra.
inline SpaceTraits space_traits(const NormDescriptor& d) {
  switch (d.kind()) {
    case NormDescriptor::Kind::Lp:
      if (std::isinf(d.p())) return SpaceTraits(false, true);  // M itself
      return SpaceTraits(true, false);
    case NormDescriptor::Kind::L1PlusLinf:
      return SpaceTraits(false, true);
    case NormDescriptor::Kind::L1CapLinf:
      return SpaceTraits(false, false);
    case NormDescriptor::Kind::Orlicz: {
      const auto& f = d.orlicz_function();
      return SpaceTraits(f.delta2_at_zero() && f.delta2_at_infinity(), false);
    }
    case NormDescriptor::Kind::Lorentz: {
      const auto& f = d.phi();
      const bool unit = !std::isinf(f.phi_at_infinity());
      const bool oc = f.phi_at_zero_plus() == 0.0 && std::isinf(f.phi_at_infinity());
      return SpaceTraits(oc, unit);
    }
    case NormDescriptor::Kind::Marcinkiewicz: {
      const auto& f = d.phi();
      const bool unit = f.slope_at_infinity() > 0.0;
      // phi(0+)>0 and phi(inf)<inf force equivalence with the L^1 norm
      const bool oc = f.phi_at_zero_plus() > 0.0 && !std::isinf(f.phi_at_infinity());
      return SpaceTraits(oc, unit);
    }
  }
  return SpaceTraits(false, false);
}

}  // namespace ncerg
