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

#include "puresteady/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "puresteady/certify.hpp"

namespace puresteady {

LindbladSystem::LindbladSystem(Matrix hamiltonian, std::vector<Matrix> lindblad_ops,
                               const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), lindblad_ops_(std::move(lindblad_ops)) {
  const Index n = hamiltonian_.rows();
  if (hamiltonian_.cols() != n || n == 0) {
    throw DimensionError("Hamiltonian must be square and non-empty");
  }
  if (!hamiltonian_.allFinite()) {
    throw ValidationError("Hamiltonian has non-finite entries");
  }
  if (hermiticity_defect(hamiltonian_) > tol.hermiticity) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  for (std::size_t k = 0; k < lindblad_ops_.size(); ++k) {
    const Matrix& b = lindblad_ops_[k];
    if (b.rows() != n || b.cols() != n) {
      throw DimensionError("Lindblad operator " + std::to_string(k) + " is " +
                           std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                           ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!b.allFinite()) {
      throw ValidationError("Lindblad operator " + std::to_string(k) + " has non-finite entries");
    }
  }
}

Matrix LindbladSystem::drift() const {
  Matrix d = kI * hamiltonian_;
  for (const Matrix& b : lindblad_ops_) {
    d += 0.5 * b.adjoint() * b;
  }
  return d;
}

double LindbladSystem::scale() const {
  double s = hamiltonian_.norm() + 1.0;
  for (const Matrix& b : lindblad_ops_) {
    s += b.squaredNorm();
  }
  return s;
}

Matrix apply_liouvillian(const LindbladSystem& sys, const Matrix& rho) {
  if (rho.rows() != sys.dim() || rho.cols() != sys.dim()) {
    throw DimensionError("state dimension does not match the Lindblad system");
  }
  const Matrix& h = sys.hamiltonian();
  Matrix out = -kI * (h * rho - rho * h);
  for (const Matrix& b : sys.lindblad_ops()) {
    const Matrix bdb = b.adjoint() * b;
    out += b * rho * b.adjoint() - 0.5 * (bdb * rho + rho * bdb);
  }
  return out;
}

Matrix superoperator(const LindbladSystem& sys) {
  // vec(X Y Z) = (Z^T kron X) vec(Y) for column-stacked vec.
  const Index n = sys.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& h = sys.hamiltonian();
  Matrix s = -kI * (kron(id, h) - kron(Matrix(h.transpose()), id));
  for (const Matrix& b : sys.lindblad_ops()) {
    const Matrix bdb = b.adjoint() * b;
    s += kron(Matrix(b.conjugate()), b) - 0.5 * kron(id, bdb) -
         0.5 * kron(Matrix(bdb.transpose()), id);
  }
  return s;
}

// ---------------------------------------------------------------------------

CoordinateMap::CoordinateMap(Index n) : n_(n) {
  if (n < 1) {
    throw DimensionError("coordinate map needs dimension >= 1");
  }
  entries_.reserve(static_cast<std::size_t>(n * n - 1));
  for (Index i = 0; i + 1 < n; ++i) {
    entries_.push_back({Kind::population, i, i});
  }
  for (Index i = 1; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      entries_.push_back({Kind::real_part, i, j});
      entries_.push_back({Kind::imag_part, i, j});
    }
  }
}

std::string CoordinateMap::label(Index k) const {
  const Entry& e = entries_.at(static_cast<std::size_t>(k));
  std::ostringstream out;
  switch (e.kind) {
    case Kind::population:
      out << "nu_" << e.row;
      break;
    case Kind::real_part:
      out << "lambda_" << e.row << "_" << e.col;
      break;
    case Kind::imag_part:
      out << "mu_" << e.row << "_" << e.col;
      break;
  }
  return out.str();
}

RealVector CoordinateMap::coordinates(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) {
    throw DimensionError("matrix dimension does not match the coordinate map");
  }
  RealVector x(size());
  for (Index k = 0; k < size(); ++k) {
    const Entry& e = entries_[static_cast<std::size_t>(k)];
    const Complex value = m(e.row, e.col);
    x(k) = e.kind == Kind::imag_part ? value.imag() : value.real();
  }
  return x;
}

Matrix CoordinateMap::tangent(const RealVector& dx) const {
  if (dx.size() != size()) {
    throw DimensionError("coordinate vector has the wrong length");
  }
  Matrix m = Matrix::Zero(n_, n_);
  double population_sum = 0.0;
  for (Index k = 0; k < size(); ++k) {
    const Entry& e = entries_[static_cast<std::size_t>(k)];
    switch (e.kind) {
      case Kind::population:
        m(e.row, e.row) = dx(k);
        population_sum += dx(k);
        break;
      case Kind::real_part:
        m(e.row, e.col) += dx(k);
        m(e.col, e.row) += dx(k);
        break;
      case Kind::imag_part:
        m(e.row, e.col) += kI * dx(k);
        m(e.col, e.row) -= kI * dx(k);
        break;
    }
  }
  m(n_ - 1, n_ - 1) = -population_sum;
  return m;
}

Matrix CoordinateMap::state(const RealVector& x) const {
  Matrix m = tangent(x);
  m(n_ - 1, n_ - 1) += 1.0;
  return m;
}

VectorizedDynamics vectorize(const LindbladSystem& sys) {
  const Index n = sys.dim();
  CoordinateMap map(n);
  const Index size = map.size();
  const Matrix s = superoperator(sys);

  auto unvec = [n](const Vector& v) { return Eigen::Map<const Matrix>(v.data(), n, n).eval(); };
  auto vec = [n](const Matrix& m) { return Eigen::Map<const Vector>(m.data(), n * n).eval(); };

  RealMatrix a_matrix(size, size);
  for (Index k = 0; k < size; ++k) {
    RealVector unit = RealVector::Zero(size);
    unit(k) = 1.0;
    a_matrix.col(k) = map.coordinates(unvec(s * vec(map.tangent(unit))));
  }
  const RealVector offset = map.coordinates(unvec(s * vec(map.state(RealVector::Zero(size)))));
  return VectorizedDynamics{std::move(a_matrix), offset, std::move(map)};
}

// ---------------------------------------------------------------------------

namespace {

double spectral_abscissa_of(const RealMatrix& a, std::vector<Complex>* eigenvalues) {
  if (a.size() == 0) {
    return 0.0;
  }
  const EigenDecomposition decomposition = eig(a.cast<Complex>());
  double abscissa = -std::numeric_limits<double>::infinity();
  for (const Complex& lambda : decomposition.eigenvalues) {
    abscissa = std::max(abscissa, lambda.real());
  }
  if (eigenvalues != nullptr) {
    *eigenvalues = decomposition.eigenvalues;
  }
  return abscissa;
}

struct ErgodicProjector {
  Matrix projector;  // n^2 x n^2
  Index kernel_dim = 0;
};

ErgodicProjector ergodic_projector(const LindbladSystem& sys, const Tolerances& tol) {
  const Matrix s = superoperator(sys);
  const double threshold = tol.null_space * std::max(s.norm(), 1.0);
  const Matrix right = null_space(s, threshold);
  const Matrix left = null_space(s.adjoint(), threshold);
  if (right.cols() == 0 || right.cols() != left.cols()) {
    return {Matrix(), right.cols()};
  }
  // The zero eigenvalue of a Lindblad generator is semisimple, so L^H R is invertible.
  const Matrix overlap = left.adjoint() * right;
  Eigen::FullPivLU<Matrix> lu(overlap);
  if (!lu.isInvertible()) {
    return {Matrix(), right.cols()};
  }
  return {right * lu.solve(left.adjoint()), right.cols()};
}

DensityMatrix apply_projector(const Matrix& projector, const DensityMatrix& rho0) {
  const Index n = rho0.dim();
  const Vector v = Eigen::Map<const Vector>(rho0.matrix().data(), n * n);
  const Vector image = projector * v;
  return DensityMatrix::hermitized(Eigen::Map<const Matrix>(image.data(), n, n));
}

}  // namespace

DensityMatrix ergodic_projection(const LindbladSystem& sys, const DensityMatrix& rho0,
                                 const Tolerances& tol) {
  if (rho0.dim() != sys.dim()) {
    throw DimensionError("initial state dimension does not match the Lindblad system");
  }
  const ErgodicProjector p = ergodic_projector(sys, tol);
  if (p.projector.size() == 0) {
    throw InfeasibleError("could not build the ergodic projector (kernel dimension " +
                          std::to_string(p.kernel_dim) + ")");
  }
  return apply_projector(p.projector, rho0);
}

SteadyStateResult steady_state(const LindbladSystem& sys, const SteadyStateOptions& options,
                               const Tolerances& tol) {
  const Index n = sys.dim();
  if (n == 1) {
    return SteadyStateResult{DensityMatrix(Matrix::Ones(1, 1)), true, 0.0, 0.0, 1};
  }
  const VectorizedDynamics dyn = vectorize(sys);
  const double abscissa = spectral_abscissa_of(dyn.A, nullptr);

  Eigen::JacobiSVD<RealMatrix> svd(dyn.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  const bool invertible = largest > 0.0 && smallest > 0.0 && largest / smallest < tol.condition_limit;

  std::optional<DensityMatrix> rho;
  bool unique = false;
  Index kernel_dim = 1;
  if (invertible) {
    const RealVector x = -svd.solve(dyn.a);
    rho.emplace(dyn.coordinates.state(x), tol);
    unique = true;
  } else {
    const ErgodicProjector p = ergodic_projector(sys, tol);
    kernel_dim = p.kernel_dim;
    if (options.initial) {
      if (options.initial->dim() != n) {
        throw DimensionError("initial state dimension does not match the Lindblad system");
      }
      if (p.projector.size() != 0) {
        rho = apply_projector(p.projector, *options.initial);
      }
    } else if (options.selection == SteadyStateSelection::prefer_pure) {
      if (auto certificate = certify_pure_steady_state(sys, tol)) {
        rho = DensityMatrix::pure(certificate->state);
      }
    }
    if (!rho && p.projector.size() != 0) {
      rho = apply_projector(p.projector, DensityMatrix::maximally_mixed(n));
    }
    if (!rho) {
      // Numerically singular A without a resolvable kernel: minimum-norm least squares.
      const RealVector x = -svd.solve(dyn.a);
      rho = DensityMatrix::hermitized(dyn.coordinates.state(x));
    }
  }

  const double residual = apply_liouvillian(sys, rho->matrix()).norm();
  if (!(residual <= 1e-9 * sys.scale())) {
    std::ostringstream msg;
    msg << "steady state residual " << residual << " exceeds tolerance " << 1e-9 * sys.scale();
    throw InfeasibleError(msg.str());
  }
  if (rho->min_eigenvalue() < -tol.positivity) {
    throw InfeasibleError("steady state is not positive semidefinite");
  }
  return SteadyStateResult{std::move(*rho), unique, abscissa, residual, kernel_dim};
}

StabilityReport stability(const VectorizedDynamics& dyn, const Tolerances& tol) {
  StabilityReport report;
  report.spectral_abscissa = spectral_abscissa_of(dyn.A, &report.eigenvalues);
  if (dyn.A.size() == 0) {
    report.spectral_abscissa = 0.0;
  }
  report.classification = report.spectral_abscissa < -tol.stability
                              ? Stability::strictly_stable
                              : Stability::marginally_stable;
  return report;
}

IntegrationResult integrate(const LindbladSystem& sys, const DensityMatrix& rho0, double horizon,
                            double dt, std::size_t sample_every) {
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw ValidationError("integrate needs dt > 0 and T >= dt");
  }
  if (rho0.dim() != sys.dim()) {
    throw DimensionError("initial state dimension does not match the Lindblad system");
  }
  sample_every = std::max<std::size_t>(sample_every, 1);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));

  IntegrationResult result;
  auto record = [&](std::size_t step, const DensityMatrix& state) {
    result.times.push_back(static_cast<double>(step) * dt);
    const double lowest = state.min_eigenvalue();
    result.min_eigenvalue = std::min(result.min_eigenvalue, lowest);
    if (lowest < -1e-6) {
      std::ostringstream msg;
      msg << "t=" << result.times.back() << ": state eigenvalue " << lowest
          << " below -1e-6 (integration quality)";
      result.warnings.push_back(msg.str());
    }
    result.states.push_back(state);
  };

  Matrix rho = rho0.matrix();
  record(0, rho0);
  for (std::size_t step = 1; step <= steps; ++step) {
    const Matrix k1 = apply_liouvillian(sys, rho);
    const Matrix k2 = apply_liouvillian(sys, rho + 0.5 * dt * k1);
    const Matrix k3 = apply_liouvillian(sys, rho + 0.5 * dt * k2);
    const Matrix k4 = apply_liouvillian(sys, rho + dt * k3);
    Matrix next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    result.max_trace_drift = std::max(result.max_trace_drift, std::abs(next.trace() - 1.0));
    DensityMatrix state = DensityMatrix::hermitized(next);
    rho = state.matrix();
    if (step % sample_every == 0 || step == steps) {
      record(step, state);
    }
  }
  return result;
}

}  // namespace puresteady
