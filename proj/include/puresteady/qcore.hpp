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

#ifndef PURESTEADY_QCORE_HPP
#define PURESTEADY_QCORE_HPP

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "puresteady/config.hpp"
#include "puresteady/errors.hpp"

namespace puresteady {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Operator algebra. These accept any dense Eigen expression and keep the
// scalar type of their arguments.

/// Kronecker product; row index of the result is (row of a) * b.rows() + (row of b).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

template <typename Derived>
typename Derived::PlainObject dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Commutator ab - ba.
template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject comm(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  return a * b - b * a;
}

/// Anticommutator ab + ba.
template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject anticomm(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  return a * b + b * a;
}

template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

enum class Pauli { I, X, Y, Z };

Matrix pauli(Pauli which);
/// Accepts "I", "X", "Y", "Z" (case-insensitive); throws ValidationError otherwise.
Matrix pauli(std::string_view name);

/// Lowering operator |g><e| with |e> = (1, 0) and |g> = (0, 1).
Matrix sigma_minus();
Matrix sigma_plus();

Matrix identity(Index n);
Vector basis_vector(Index n, Index k);

/// Kronecker product of a list of 2x2 Paulis, e.g. pauli_string("XZ") = X (x) Z.
Matrix pauli_string(std::string_view labels);

// ---------------------------------------------------------------------------
// States.

/// Unit-norm complex vector.
class StateVector {
 public:
  /// Throws ValidationError unless | ||v|| - 1 | <= 1e-12.
  explicit StateVector(Vector amplitudes);

  /// Rescales v to unit norm; throws ValidationError for the zero vector.
  static StateVector normalized(const Vector& v);

  const Vector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  Complex operator[](Index k) const { return amplitudes_(k); }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  /// Same ray with the largest-magnitude amplitude made real and positive.
  /// Ties are resolved towards the lowest index.
  StateVector canonical_phase() const;

  /// |<this|other>|^2.
  double overlap(const StateVector& other) const;

 private:
  struct Trusted {};
  StateVector(Vector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}

  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and positivity against `tol`.
  explicit DensityMatrix(Matrix m, const Tolerances& tol = default_tolerances());

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Index n);

  /// Hermitizes and renormalizes the trace without checking positivity.
  /// Used by integrators, which monitor positivity themselves.
  static DensityMatrix hermitized(const Matrix& m);

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  double min_eigenvalue() const;

 private:
  struct Trusted {};
  DensityMatrix(Matrix m, Trusted) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Wootters concurrence of a two-qubit state; DimensionError unless 4x4.
double concurrence(const DensityMatrix& rho);

/// <psi|rho|psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// (1/2) || a - b ||_1 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// Spectral tools.

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;
  std::vector<StateVector> eigenvectors;
  std::vector<double> residuals;  // ||M v - lambda v||
  double matrix_norm = 0.0;

  /// True when every residual is within tol * ||M||.
  bool accepted(double relative_tol) const;
};

/// Full right eigen-decomposition of a square complex matrix.
/// Throws DimensionError for non-square input and NumericalError when the
/// Schur iteration does not converge.
EigenDecomposition eig(const Matrix& m);

/// Orthonormal basis of { v : ||m v|| <= threshold ||v|| }, computed from the
/// right singular vectors. Returns an n x 0 matrix when the kernel is trivial.
Matrix null_space(const Matrix& m, double threshold);

/// One eigenvalue cluster of a matrix and the exact eigenvectors belonging to it.
struct Eigenspace {
  Complex eigenvalue;
  Matrix basis;  // orthonormal columns
};

/// Eigenvalues of m grouped into clusters of radius tol.eigen_cluster * ||m||;
/// each cluster's basis spans ker(m - lambda I) for the cluster mean lambda.
/// Clusters with an empty kernel at `residual_tol * ||m||` are dropped.
std::vector<Eigenspace> eigenspaces(const Matrix& m, double residual_tol,
                                    const Tolerances& tol = default_tolerances());

/// Same as eigenspaces() with absolute thresholds: eigenvalues closer than
/// `cluster_radius` are merged and kernels are cut at `threshold`.
std::vector<Eigenspace> eigenspaces_within(const Matrix& m, double threshold,
                                           double cluster_radius);

}  // namespace puresteady

#endif  // PURESTEADY_QCORE_HPP
