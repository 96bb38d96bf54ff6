// Copyright 2026 The puresteady Authors
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

#ifndef PURESTEADY_TESTS_ORACLES_HPP
#define PURESTEADY_TESTS_ORACLES_HPP

// Independent reference computations. Nothing here calls the library's
// generator, vectorization or eigenspace code.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "puresteady/lindblad.hpp"
#include "puresteady/random.hpp"

namespace oracle {

using puresteady::Complex;
using puresteady::Index;
using puresteady::Matrix;
using puresteady::Vector;
using puresteady::Xoshiro256;

inline double uniform(Xoshiro256& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

inline Matrix random_matrix(Xoshiro256& rng, Index n, double scale = 1.0) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = scale * Complex(rng.gaussian(), rng.gaussian());
  return m;
}

inline Matrix random_hermitian(Xoshiro256& rng, Index n, double scale = 1.0) {
  const Matrix m = random_matrix(rng, n, scale);
  return 0.5 * (m + m.adjoint());
}

inline Vector random_vector(Xoshiro256& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
  return v.normalized();
}

inline Matrix random_unitary(Xoshiro256& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline Matrix random_density(Xoshiro256& rng, Index n, Index rank = -1) {
  Matrix g = random_matrix(rng, n);
  if (rank > 0) g = g.leftCols(rank).eval();
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Unitary whose first column is v.
inline Matrix completing_unitary(Xoshiro256& rng, const Vector& v) {
  const Index n = v.size();
  Matrix m = random_matrix(rng, n);
  m.col(0) = v;
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Complex phase = q.col(0).dot(v);  // conj(q0) . v
  q.col(0) *= phase / std::abs(phase);
  return q;
}

/// Term-by-term Lindblad generator with explicit index loops.
inline Matrix liouvillian(const Matrix& h, const std::vector<Matrix>& ops, const Matrix& rho) {
  const Index n = rho.rows();
  auto mul = [n](const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  };
  auto adj = [n](const Matrix& a) {
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
    return out;
  };
  const Complex i1(0.0, 1.0);
  Matrix out = -i1 * (mul(h, rho) - mul(rho, h));
  for (const Matrix& b : ops) {
    const Matrix bdb = mul(adj(b), b);
    out += mul(mul(b, rho), adj(b)) - 0.5 * mul(bdb, rho) - 0.5 * mul(rho, bdb);
  }
  return out;
}

/// Superoperator on column-stacked vec(rho), one column per matrix unit E_ij.
inline Matrix superoperator(const Matrix& h, const std::vector<Matrix>& ops) {
  const Index n = h.rows();
  Matrix s(n * n, n * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      const Matrix image = liouvillian(h, ops, e);
      s.col(i + j * n) = Eigen::Map<const Vector>(image.data(), n * n);
    }
  return s;
}

/// Orthonormal basis of the null space of m (singular values <= threshold).
inline Matrix kernel(const Matrix& m, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

/// Eigenspaces of m on the full space: eigenvalues clustered within
/// `cluster`, each space the kernel of (m - lambda I).
inline std::vector<Matrix> full_eigenspaces(const Matrix& m, double cluster, double threshold) {
  const Index n = m.rows();
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::vector<Complex> centers;
  std::vector<bool> used(values.size(), false);
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (used[a]) continue;
    Complex sum = values[a];
    int count = 1;
    used[a] = true;
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      if (!used[b] && std::abs(values[b] - values[a]) <= cluster) {
        used[b] = true;
        sum += values[b];
        ++count;
      }
    }
    centers.push_back(sum / static_cast<double>(count));
  }
  std::vector<Matrix> spaces;
  for (Complex c : centers) {
    Matrix k = kernel(m - c * Matrix::Identity(n, n), threshold);
    if (k.cols() > 0) spaces.push_back(k);
  }
  return spaces;
}

/// Intersection of the column spans of u and v.
inline Matrix intersect(const Matrix& u, const Matrix& v, double threshold) {
  if (u.cols() == 0 || v.cols() == 0) return Matrix(u.rows(), 0);
  Matrix stacked(u.rows(), u.cols() + v.cols());
  stacked << u, -v;
  const Matrix coeffs = kernel(stacked, threshold);
  if (coeffs.cols() == 0) return Matrix(u.rows(), 0);
  Matrix span = u * coeffs.topRows(u.cols());
  Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeThinU);
  Index rank = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > 1e-6) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Total dimension of all joint eigenspaces of `ops`, by exhaustive
/// intersection of every combination of full-space eigenspaces.
inline Index joint_eigenspace_dimension(const std::vector<Matrix>& ops, double cluster_rel = 1e-6,
                                        double threshold_rel = 1e-7) {
  const Index n = ops.front().rows();
  std::vector<Matrix> current{Matrix::Identity(n, n)};
  for (const Matrix& m : ops) {
    const double scale = std::max(m.norm(), 1e-300);
    std::vector<Matrix> next;
    const auto spaces = full_eigenspaces(m, cluster_rel * scale, threshold_rel * scale);
    for (const Matrix& c : current)
      for (const Matrix& s : spaces) {
        Matrix inter = intersect(c, s, 1e-7);
        if (inter.cols() > 0) next.push_back(inter);
      }
    current = std::move(next);
    if (current.empty()) return 0;
  }
  Index total = 0;
  for (const Matrix& c : current) total += c.cols();
  return total;
}

/// Wootters concurrence from the eigenvalues of the non-Hermitian product
/// rho (Y x Y) conj(rho) (Y x Y).
inline double wootters(const Matrix& rho) {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> solver(r, false);
  std::vector<double> l;
  for (Index k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(k).real())));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Trace norm distance from singular values.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::JacobiSVD<Matrix> svd(a - b);
  return 0.5 * svd.singularValues().sum();
}

}  // namespace oracle

#endif  // PURESTEADY_TESTS_ORACLES_HPP
