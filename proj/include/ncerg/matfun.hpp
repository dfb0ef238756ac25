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

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ncerg/algebra.hpp"

namespace ncerg {

// exp(M), scaling-and-squaring with Pade approximation (norm-driven degree).
inline Matrix expm(const Matrix& m) { return m.exp(); }

// phi1(M) = (exp(M) - 1) / M, read off the augmented block exponential
//   exp([[M, I], [0, 0]]) = [[exp(M), phi1(M)], [0, I]].
// Uniformly stable through M -> 0, where phi1(0) = I.
inline Matrix phi1(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = m;
  aug.topRightCorner(n, n) = Matrix::Identity(n, n);
  return expm(aug).topRightCorner(n, n);
}

}  // namespace ncerg
