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

#include <random>

#include "ncerg/algebra.hpp"

namespace ncerg {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline cplx gaussian_c(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline AlgebraShape random_shape(Rng& rng, int max_blocks = 3, int max_dim = 6) {
  const int nb = uniform_int(rng, 1, max_blocks);
  std::vector<Block> blocks(nb);
  for (auto& b : blocks) {
    b.dim = uniform_int(rng, 1, max_dim);
    b.weight = uniform(rng, 0.25, 2.0);
  }
  return AlgebraShape(std::move(blocks));
}

inline Operator random_operator(const AlgebraShape& s, Rng& rng) {
  Operator x = Operator::zero(s);
  for (std::size_t k = 0; k < x.blocks.size(); ++k)
    for (int i = 0; i < s.blocks[k].dim; ++i)
      for (int j = 0; j < s.blocks[k].dim; ++j) x.blocks[k](i, j) = gaussian_c(rng);
  return x;
}

inline Operator random_selfadjoint(const AlgebraShape& s, Rng& rng) {
  Operator a = random_operator(s, rng);
  return 0.5 * (a + adjoint(a));
}

inline Operator random_positive(const AlgebraShape& s, Rng& rng) {
  Operator a = random_operator(s, rng);
  return adjoint(a) * a;
}

// ||z||_inf strictly below 1.
inline Operator random_contraction(const AlgebraShape& s, Rng& rng) {
  Operator a = random_operator(s, rng);
  const double n = norm_inf(a);
  if (n == 0.0) return a;
  return (uniform(rng, 0.05, 0.999) / n) * a;
}

inline Operator random_projection(const AlgebraShape& s, Rng& rng) {
  Operator e = Operator::zero(s);
  for (std::size_t k = 0; k < e.blocks.size(); ++k) {
    const int n = s.blocks[k].dim;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gaussian_c(rng);
    const Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix q = qr.householderQ();
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = uniform_int(rng, 0, 1);
    e.blocks[k] = q * d * q.adjoint();
  }
  return e;
}

}  // namespace ncerg
