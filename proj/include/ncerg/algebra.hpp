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
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncerg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// A finite-dimensional semifinite tracial algebra: a direct sum of complex
// matrix factors, each carrying a strictly positive trace weight.  The trace
// of x is sum_k weight_k * Tr(x_k).
struct Block {
  int dim = 1;
  double weight = 1.0;
};

struct AlgebraShape {
  std::vector<Block> blocks;

  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<Block> b) : blocks(std::move(b)) { validate(); }

  // Convenience: n atoms of the given weights (all factors 1x1).
  static AlgebraShape atoms(const std::vector<double>& weights) {
    AlgebraShape s;
    s.blocks.reserve(weights.size());
    for (double w : weights) s.blocks.push_back({1, w});
    s.validate();
    return s;
  }

  static AlgebraShape single(int dim, double weight = 1.0) {
    return AlgebraShape({{dim, weight}});
  }

  void validate() const {
    if (blocks.empty()) throw std::invalid_argument("AlgebraShape: needs at least one block");
    for (const auto& b : blocks) {
      if (b.dim < 1) throw std::invalid_argument("AlgebraShape: block dim must be >= 1");
      if (!(b.weight > 0.0)) throw std::invalid_argument("AlgebraShape: block weight must be > 0");
    }
  }

  std::size_t block_count() const { return blocks.size(); }

  // tau(1)
  double total_trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.weight * b.dim;
    return t;
  }

  double min_weight() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) w = std::min(w, b.weight);
    return w;
  }

  // Dimension of the Hilbert-Schmidt representation: sum dim_k^2.
  int hs_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.dim * b.dim;
    return d;
  }

  bool is_diagonal() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const Block& b) { return b.dim == 1; });
  }

  bool operator==(const AlgebraShape& o) const {
    if (blocks.size() != o.blocks.size()) return false;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k].dim != o.blocks[k].dim || blocks[k].weight != o.blocks[k].weight) return false;
    return true;
  }
};

struct ShapeMismatch : std::invalid_argument {
  ShapeMismatch() : std::invalid_argument("operator shapes do not match") {}
  explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotSelfAdjoint : std::invalid_argument {
  explicit NotSelfAdjoint(double residual)
      : std::invalid_argument("operator is not self-adjoint (residual " +
                              std::to_string(residual) + ")") {}
};

struct NotProjection : std::invalid_argument {
  NotProjection() : std::invalid_argument("operator is not a projection") {}
};

struct InvalidWindow : std::invalid_argument {
  InvalidWindow() : std::invalid_argument("spectral window requires lo < hi") {}
};

inline constexpr double kProjectionTol = 1e-9;

// Block-diagonal element of the algebra.  Immutable by convention: every
// operation returns a fresh value.
struct Operator {
  AlgebraShape shape;
  std::vector<Matrix> blocks;

  Operator() = default;
  Operator(AlgebraShape s, std::vector<Matrix> b) : shape(std::move(s)), blocks(std::move(b)) {
    if (blocks.size() != shape.block_count()) throw ShapeMismatch("block count mismatch");
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k].rows() != shape.blocks[k].dim || blocks[k].cols() != shape.blocks[k].dim)
        throw ShapeMismatch("block dimension mismatch");
  }

  static Operator zero(const AlgebraShape& s) {
    std::vector<Matrix> b;
    b.reserve(s.block_count());
    for (const auto& blk : s.blocks) b.push_back(Matrix::Zero(blk.dim, blk.dim));
    return Operator(s, std::move(b));
  }

  static Operator identity(const AlgebraShape& s) {
    std::vector<Matrix> b;
    b.reserve(s.block_count());
    for (const auto& blk : s.blocks) b.push_back(Matrix::Identity(blk.dim, blk.dim));
    return Operator(s, std::move(b));
  }

  // Diagonal element of an all-atoms shape.
  static Operator diagonal(const AlgebraShape& s, const std::vector<double>& values) {
    if (!s.is_diagonal() || values.size() != s.block_count())
      throw ShapeMismatch("diagonal() expects an atomic shape matching the value count");
    std::vector<Matrix> b;
    b.reserve(values.size());
    for (double v : values) {
      Matrix m(1, 1);
      m(0, 0) = v;
      b.push_back(m);
    }
    return Operator(s, std::move(b));
  }

  std::vector<double> diagonal_values() const {
    if (!shape.is_diagonal()) throw ShapeMismatch("diagonal_values() expects an atomic shape");
    std::vector<double> v(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) v[k] = blocks[k](0, 0).real();
    return v;
  }
};

inline void check_same_shape(const Operator& a, const Operator& b) {
  if (!(a.shape == b.shape)) throw ShapeMismatch();
}

inline Operator operator+(const Operator& a, const Operator& b) {
  check_same_shape(a, b);
  Operator r = a;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] += b.blocks[k];
  return r;
}

inline Operator operator-(const Operator& a, const Operator& b) {
  check_same_shape(a, b);
  Operator r = a;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] -= b.blocks[k];
  return r;
}

inline Operator operator*(cplx c, const Operator& a) {
  Operator r = a;
  for (auto& blk : r.blocks) blk *= c;
  return r;
}

inline Operator operator*(double c, const Operator& a) { return cplx(c, 0.0) * a; }

inline Operator operator*(const Operator& a, const Operator& b) {
  check_same_shape(a, b);
  Operator r = a;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] = a.blocks[k] * b.blocks[k];
  return r;
}

inline Operator adjoint(const Operator& a) {
  Operator r = a;
  for (auto& blk : r.blocks) blk = blk.adjoint().eval();
  return r;
}

// tau(x) = sum_k weight_k * Tr(x_k).  Complex-linear; real on self-adjoint
// elements.
inline cplx trace(const Operator& x) {
  cplx t = 0.0;
  for (std::size_t k = 0; k < x.blocks.size(); ++k)
    t += x.shape.blocks[k].weight * x.blocks[k].trace();
  return t;
}

// Singular values of every block, paired with the block's trace weight.
inline std::vector<std::pair<double, double>> singular_values(const Operator& x) {
  std::vector<std::pair<double, double>> sv;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    const double w = x.shape.blocks[k].weight;
    if (x.shape.blocks[k].dim == 1) {
      sv.emplace_back(std::abs(x.blocks[k](0, 0)), w);
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(x.blocks[k]);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) sv.emplace_back(s(i), w);
  }
  return sv;
}

// ||x||_inf: largest block operator norm.
inline double norm_inf(const Operator& x) {
  double n = 0.0;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    if (x.shape.blocks[k].dim == 1) {
      n = std::max(n, std::abs(x.blocks[k](0, 0)));
    } else {
      Eigen::JacobiSVD<Matrix> svd(x.blocks[k]);
      n = std::max(n, svd.singularValues()(0));
    }
  }
  return n;
}

// tau(|x|)
inline double norm_tr(const Operator& x) {
  double n = 0.0;
  for (const auto& [s, w] : singular_values(x)) n += w * s;
  return n;
}

inline double selfadjoint_residual(const Operator& x) { return norm_inf(x - adjoint(x)); }

inline bool is_selfadjoint(const Operator& x, double tol = kProjectionTol) {
  return selfadjoint_residual(x) <= tol;
}

// Eigenvalues of a self-adjoint operator paired with block weights, unsorted.
inline std::vector<std::pair<double, double>> selfadjoint_eigenvalues(const Operator& x) {
  std::vector<std::pair<double, double>> ev;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    const double w = x.shape.blocks[k].weight;
    if (x.shape.blocks[k].dim == 1) {
      ev.emplace_back(x.blocks[k](0, 0).real(), w);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.blocks[k], Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      ev.emplace_back(es.eigenvalues()(i), w);
  }
  return ev;
}

inline bool is_positive(const Operator& x, double tol = kProjectionTol) {
  if (!is_selfadjoint(x, tol)) return false;
  const double scale = tol * (1.0 + norm_inf(x));
  for (const auto& [ev, w] : selfadjoint_eigenvalues(x))
    if (ev < -scale) return false;
  return true;
}

inline bool is_projection(const Operator& e, double tol = kProjectionTol) {
  if (selfadjoint_residual(e) > tol) return false;
  return norm_inf(e * e - e) <= tol;
}

// |x| = (x* x)^{1/2}
inline Operator abs_op(const Operator& x) {
  Operator r = x;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    const Matrix h = x.blocks[k].adjoint() * x.blocks[k];
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    r.blocks[k] = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  }
  return r;
}

// Entrywise spectral calculus f(x) for self-adjoint x.
template <typename F>
Operator spectral_map(const Operator& x, F&& f, double tol = kProjectionTol) {
  const double res = selfadjoint_residual(x);
  if (res > tol) throw NotSelfAdjoint(res);
  Operator r = x;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.blocks[k]);
    Eigen::VectorXd d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(d(i));
    r.blocks[k] = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  }
  return r;
}

// Positive part (x)_+ of a self-adjoint operator.
inline Operator positive_part(const Operator& x) {
  return spectral_map(x, [](double v) { return std::max(v, 0.0); }, 1e-7);
}

// max(0, largest eigenvalue): ||(x)_+||_inf for self-adjoint x.
inline double positive_part_norm(const Operator& x) {
  double m = 0.0;
  for (const auto& [ev, w] : selfadjoint_eigenvalues(x)) m = std::max(m, ev);
  return m;
}

struct SpectralDecomposition {
  std::vector<double> eigenvalues;      // strictly increasing after merging
  std::vector<Operator> eigenprojections;
  std::vector<double> traces;           // tau(P_i)
};

// Spectral decomposition of a self-adjoint operator with degenerate
// eigenvalues merged at threshold 1e-9 * (1 + ||x||_inf).  Merging keeps
// spectral windows stable against floating-point splitting of multiple
// eigenvalues.
inline SpectralDecomposition spectral_decompose(const Operator& x, double tol = kProjectionTol) {
  const double res = selfadjoint_residual(x);
  if (res > tol) throw NotSelfAdjoint(res);

  struct Item {
    double ev;
    double weight;     // block weight
    std::size_t block;
    Eigen::VectorXcd vec;
  };
  std::vector<Item> items;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.blocks[k]);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      items.push_back({es.eigenvalues()(i), x.shape.blocks[k].weight, k, es.eigenvectors().col(i)});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.ev < b.ev; });

  const double merge_tol = 1e-9 * (1.0 + norm_inf(x));
  SpectralDecomposition sd;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    // cluster by gaps below the merge threshold
    while (j + 1 < items.size() && items[j + 1].ev - items[j].ev <= merge_tol) ++j;
    Operator proj = Operator::zero(x.shape);
    double wsum = 0.0, wev = 0.0;
    for (std::size_t m = i; m <= j; ++m) {
      proj.blocks[items[m].block] += items[m].vec * items[m].vec.adjoint();
      wsum += items[m].weight;
      wev += items[m].weight * items[m].ev;
    }
    sd.eigenvalues.push_back(wev / wsum);
    sd.traces.push_back(trace(proj).real());
    sd.eigenprojections.push_back(std::move(proj));
    i = j + 1;
  }
  return sd;
}

// Spectral truncation onto the half-open window (lo, hi]; eigenvalues equal
// to hi within the merge tolerance are included.
inline Operator spectral_window(const Operator& x, double lo, double hi,
                                double tol = kProjectionTol) {
  if (!(lo < hi)) throw InvalidWindow();
  const SpectralDecomposition sd = spectral_decompose(x, tol);
  const double merge_tol = 1e-9 * (1.0 + norm_inf(x));
  Operator r = Operator::zero(x.shape);
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    const double ev = sd.eigenvalues[i];
    if (ev > lo && ev <= hi + merge_tol) r = r + ev * sd.eigenprojections[i];
  }
  return r;
}

// Lattice meet e ^ f of two projections, computed from the kernel of
// (1-e) + (1-f); the null space is exactly range(e) n range(f).
inline Operator proj_meet(const Operator& e, const Operator& f, double tol = kProjectionTol) {
  if (!is_projection(e, tol) || !is_projection(f, tol)) throw NotProjection();
  check_same_shape(e, f);
  Operator r = Operator::zero(e.shape);
  for (std::size_t k = 0; k < e.blocks.size(); ++k) {
    const int n = e.shape.blocks[k].dim;
    const Matrix s = (Matrix::Identity(n, n) - e.blocks[k]) +
                     (Matrix::Identity(n, n) - f.blocks[k]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    Matrix basis(n, 0);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (std::abs(es.eigenvalues()(i)) < 1e-9) {
        basis.conservativeResize(n, basis.cols() + 1);
        basis.col(basis.cols() - 1) = es.eigenvectors().col(i);
      }
    }
    r.blocks[k] = basis * basis.adjoint();
  }
  return r;
}

inline Operator proj_complement(const Operator& e) {
  return Operator::identity(e.shape) - e;
}

}  // namespace ncerg
