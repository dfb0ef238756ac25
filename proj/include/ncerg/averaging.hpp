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

#include <stdexcept>
#include <vector>

#include "ncerg/dynamics.hpp"
#include "ncerg/quadrature.hpp"

namespace ncerg {

inline constexpr int kDefaultQuadratureOrder = 12;

// The local ergodic average A_t(x) = t^{-d} int_{[0,t]^d} T_u(x) du, computed
// through the Hilbert-Schmidt matrices of the semigroup generators.  Two
// independent routes are provided: tensor-product Gauss-Legendre quadrature
// and the closed-form phi1 matrix function.

namespace detail {

// Per-axis quadrature operator (1/t) int_0^t exp(u L_i) du.
inline Matrix axis_quadrature(const Matrix& gen, double t, const QuadratureRule& rule) {
  Matrix s = Matrix::Zero(gen.rows(), gen.cols());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    s += rule.weights[j] * expm((rule.nodes[j] * gen).eval());
  return s / t;
}

}  // namespace detail

// Averaging superoperator by Gauss-Legendre quadrature of the given order per
// axis.  The default path factors the cube integral through the commuting
// axes; `factorized = false` evaluates the genuine d-dimensional tensor grid
// as an independent check path.
inline Superoperator average_superop_quadrature(const Semigroup& sg, double t, int order,
                                                bool factorized = true) {
  if (!(t > 0.0)) throw std::invalid_argument("average: t must be > 0");
  if (order < 2) throw std::invalid_argument("average: quadrature order must be >= 2");
  const QuadratureRule rule = gauss_legendre_on(order, t);
  const int hd = sg.shape.hs_dim();
  if (factorized) {
    Matrix s = Matrix::Identity(hd, hd);
    for (int axis = 0; axis < sg.d; ++axis)
      s = detail::axis_quadrature(sg.generators[axis], t, rule) * s;
    return Superoperator(sg.shape, std::move(s));
  }
  // tensor grid: iterate all node multi-indices in axis-major order
  std::vector<std::size_t> idx(sg.d, 0);
  Matrix s = Matrix::Zero(hd, hd);
  const double scale = 1.0 / std::pow(t, sg.d);
  while (true) {
    double w = 1.0;
    Matrix g = Matrix::Zero(hd, hd);
    for (int axis = 0; axis < sg.d; ++axis) {
      w *= rule.weights[idx[axis]];
      g += rule.nodes[idx[axis]] * sg.generators[axis];
    }
    s += w * expm(g);
    int axis = sg.d - 1;
    while (axis >= 0 && ++idx[axis] == rule.nodes.size()) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return Superoperator(sg.shape, (scale * s).eval());
}

inline Operator average_quadrature(const Semigroup& sg, const Operator& x, double t,
                                   int order = kDefaultQuadratureOrder, bool factorized = true) {
  return apply(average_superop_quadrature(sg, t, order, factorized), x);
}

// Quadrature value together with an error estimate against order + 4.
struct QuadratureAverage {
  Operator value;
  double estimated_error = 0.0;  // ||order - (order+4)||_inf
};

inline QuadratureAverage average_quadrature_with_error(const Semigroup& sg, const Operator& x,
                                                       double t,
                                                       int order = kDefaultQuadratureOrder) {
  QuadratureAverage r{average_quadrature(sg, x, t, order), 0.0};
  const Operator refined = average_quadrature(sg, x, t, order + 4);
  r.estimated_error = norm_inf(r.value - refined);
  return r;
}

// Closed form: (1/t) int_0^t exp(sL) ds = phi1(tL), so A_t factors through the
// commuting axes as prod_i phi1(t L_i); exact at L_i = 0.
inline Superoperator average_superop_phi1(const Semigroup& sg, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("average: t must be > 0");
  const int hd = sg.shape.hs_dim();
  Matrix s = Matrix::Identity(hd, hd);
  for (int axis = 0; axis < sg.d; ++axis) s = phi1((t * sg.generators[axis]).eval()) * s;
  return Superoperator(sg.shape, std::move(s));
}

inline Operator average_phi1(const Semigroup& sg, const Operator& x, double t) {
  return apply(average_superop_phi1(sg, t), x);
}

// (1/n) sum_{k=0}^{n-1} T^k(x), exact finite sum.
inline Operator discrete_average(const Superoperator& t, const Operator& x, int n) {
  if (n < 1) throw std::invalid_argument("discrete_average: n must be >= 1");
  Operator acc = x;
  Operator cur = x;
  for (int k = 1; k < n; ++k) {
    cur = apply(t, cur);
    acc = acc + cur;
  }
  return (1.0 / n) * acc;
}

// A_{n/m}(x) through the product decomposition: first y_m, the average of
// T_{v/m}(x) over the unit cube (by quadrature), then the d-fold discrete
// average of the axis step maps exp(L_i/m).
inline Operator product_average(const Semigroup& sg, const Operator& x, int n, int m,
                                   int order = kDefaultQuadratureOrder) {
  if (n < 1 || m < 1) throw std::invalid_argument("product_average: n, m must be >= 1");
  if (order < 2) throw std::invalid_argument("product_average: order must be >= 2");
  const QuadratureRule rule = gauss_legendre_on(order, 1.0);
  Operator y = x;
  for (int axis = 0; axis < sg.d; ++axis) {
    Matrix s = Matrix::Zero(sg.generators[axis].rows(), sg.generators[axis].cols());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      s += rule.weights[j] * expm((rule.nodes[j] / m * sg.generators[axis]).eval());
    y = apply(Superoperator(sg.shape, std::move(s)), y);
  }
  for (int axis = 0; axis < sg.d; ++axis) {
    const Superoperator step(sg.shape, expm((sg.generators[axis] / m).eval()));
    y = discrete_average(step, y, n);
  }
  return y;
}

}  // namespace ncerg
