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

#include "puresteady/qcore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace puresteady {

Matrix pauli(Pauli which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case Pauli::I:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

Matrix pauli(std::string_view name) {
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name.front()))) {
      case 'I':
        return pauli(Pauli::I);
      case 'X':
        return pauli(Pauli::X);
      case 'Y':
        return pauli(Pauli::Y);
      case 'Z':
        return pauli(Pauli::Z);
      default:
        break;
    }
  }
  throw ValidationError("unknown Pauli label '" + std::string(name) + "'");
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Vector basis_vector(Index n, Index k) {
  if (k < 0 || k >= n) {
    throw DimensionError("basis index " + std::to_string(k) + " out of range for dimension " +
                         std::to_string(n));
  }
  Vector v = Vector::Zero(n);
  v(k) = 1.0;
  return v;
}

Matrix pauli_string(std::string_view labels) {
  Matrix out = Matrix::Identity(1, 1);
  for (char label : labels) {
    out = kron(out, pauli(std::string_view(&label, 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kNormTolerance = 1e-12;

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "state vector norm " << norm << " differs from 1";
    throw ValidationError(msg.str());
  }
}

StateVector StateVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("cannot normalize a zero or non-finite vector");
  }
  return StateVector(v / norm, Trusted{});
}

StateVector StateVector::canonical_phase() const {
  const double largest = amplitudes_.cwiseAbs().maxCoeff();
  Index pivot = 0;
  for (Index k = 0; k < amplitudes_.size(); ++k) {
    if (std::abs(amplitudes_(k)) >= largest * (1.0 - 1e-9)) {
      pivot = k;
      break;
    }
  }
  const Complex phase = std::conj(amplitudes_(pivot)) / std::abs(amplitudes_(pivot));
  Vector rotated = amplitudes_ * phase;
  rotated(pivot) = std::abs(rotated(pivot));
  return StateVector(std::move(rotated), Trusted{});
}

double StateVector::overlap(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw DimensionError("overlap of states with different dimensions");
  }
  return std::norm(amplitudes_.dot(other.amplitudes_));
}

DensityMatrix::DensityMatrix(Matrix m, const Tolerances& tol) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) {
    throw ValidationError("density matrix has non-finite entries");
  }
  if (hermiticity_defect(matrix_) > tol.hermiticity) {
    throw ValidationError("density matrix is not Hermitian");
  }
  const Complex trace = matrix_.trace();
  if (std::abs(trace - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "density matrix trace " << trace.real() << " differs from 1";
    throw ValidationError(msg.str());
  }
  if (min_eigenvalue() < -tol.positivity) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << min_eigenvalue();
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.projector(), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n), Trusted{});
}

DensityMatrix DensityMatrix::hermitized(const Matrix& m) {
  Matrix h = hermitian_part(m);
  const double trace = h.trace().real();
  if (!(std::abs(trace) > 0.0) || !h.allFinite()) {
    throw NumericalError("cannot renormalize a state with zero or non-finite trace");
  }
  return DensityMatrix(h / trace, Trusted{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw DimensionError("concurrence needs a 4x4 two-qubit state, got dimension " +
                         std::to_string(rho.dim()));
  }
  // The square roots of the eigenvalues of rho rho~ are the singular values of
  // X^T (Y (x) Y) X with rho = X X^dagger.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  const Matrix x = solver.eigenvectors() *
                   solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const Matrix tau = x.transpose() * pauli_string("YY") * x;
  Eigen::JacobiSVD<Matrix> svd(tau);
  RealVector lambdas = svd.singularValues();
  std::sort(lambdas.data(), lambdas.data() + lambdas.size(), std::greater<>());
  return std::max(0.0, lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) {
    throw DimensionError("fidelity of state and vector with different dimensions");
  }
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace distance of matrices with different shapes");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(Matrix(a - b)),
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------

bool EigenDecomposition::accepted(double relative_tol) const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [&](double r) { return r <= relative_tol * matrix_norm; });
}

EigenDecomposition eig(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eig requires a square matrix");
  }
  EigenDecomposition out;
  out.matrix_norm = m.norm();
  if (m.rows() == 0) {
    return out;
  }
  Eigen::ComplexEigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "complex Schur iteration did not converge (||M||_F = " << out.matrix_norm << ")";
    throw NumericalError(msg.str());
  }
  const Index n = m.rows();
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  out.residuals.reserve(n);
  for (Index k = 0; k < n; ++k) {
    const Complex lambda = solver.eigenvalues()(k);
    StateVector v = StateVector::normalized(solver.eigenvectors().col(k));
    out.residuals.push_back((m * v.amplitudes() - lambda * v.amplitudes()).norm());
    out.eigenvalues.push_back(lambda);
    out.eigenvectors.push_back(std::move(v));
  }
  return out;
}

Matrix null_space(const Matrix& m, double threshold) {
  const Index cols = m.cols();
  if (m.rows() == 0) {
    return Matrix::Identity(cols, cols);
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > threshold) {
      ++rank;
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

std::vector<Eigenspace> eigenspaces(const Matrix& m, double residual_tol, const Tolerances& tol) {
  const double scale = m.norm();
  return eigenspaces_within(m, residual_tol * scale, tol.eigen_cluster * scale);
}

std::vector<Eigenspace> eigenspaces_within(const Matrix& m, double threshold,
                                           double cluster_radius) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eigenspaces requires a square matrix");
  }
  const Index n = m.rows();
  if (n == 0) {
    return {};
  }
  if (m.norm() == 0.0) {
    return {Eigenspace{Complex{0.0, 0.0}, Matrix::Identity(n, n)}};
  }

  const EigenDecomposition decomposition = eig(m);
  const std::vector<Complex>& values = decomposition.eigenvalues;

  // Single-linkage clustering with union-find.
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index k) {
    while (parent[k] != k) {
      parent[k] = parent[parent[k]];
      k = parent[k];
    }
    return k;
  };
  const double radius = cluster_radius;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= radius) {
        parent[find(i)] = find(j);
      }
    }
  }

  std::vector<std::vector<Index>> clusters;
  std::vector<Index> cluster_of(n, -1);
  for (Index k = 0; k < n; ++k) {
    const Index root = find(k);
    if (cluster_of[root] < 0) {
      cluster_of[root] = static_cast<Index>(clusters.size());
      clusters.emplace_back();
    }
    clusters[cluster_of[root]].push_back(k);
  }

  std::vector<Eigenspace> out;
  out.reserve(clusters.size());
  for (const auto& members : clusters) {
    Complex mean{0.0, 0.0};
    for (Index k : members) {
      mean += values[k];
    }
    mean /= static_cast<double>(members.size());
    double spread = 0.0;
    for (Index k : members) {
      spread = std::max(spread, std::abs(values[k] - mean));
    }
    const Matrix shifted = m - mean * Matrix::Identity(n, n);
    Matrix basis = null_space(shifted, threshold + 2.0 * spread);
    if (basis.cols() > 0) {
      out.push_back(Eigenspace{mean, std::move(basis)});
    }
  }
  return out;
}

}  // namespace puresteady
