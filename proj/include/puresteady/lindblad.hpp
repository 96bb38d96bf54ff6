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

#ifndef PURESTEADY_LINDBLAD_HPP
#define PURESTEADY_LINDBLAD_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "puresteady/qcore.hpp"

namespace puresteady {

/// Generator L rho = -i[H, rho] + sum_k D[b_k] rho with
/// D[b] rho = b rho b^dagger - (1/2) b^dagger b rho - (1/2) rho b^dagger b.
class LindbladSystem {
 public:
  /// Throws DimensionError for mismatched shapes and ValidationError when H is
  /// not Hermitian within tol.hermiticity.
  LindbladSystem(Matrix hamiltonian, std::vector<Matrix> lindblad_ops,
                 const Tolerances& tol = default_tolerances());

  const Matrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Matrix>& lindblad_ops() const { return lindblad_ops_; }
  Index dim() const { return hamiltonian_.rows(); }

  /// i H + (1/2) sum_k b_k^dagger b_k. A pure state is stationary exactly when
  /// it is a common eigenvector of this matrix and every b_k.
  Matrix drift() const;

  /// ||H||_F + sum_k ||b_k||_F^2 + 1, the natural size of the generator.
  double scale() const;

 private:
  Matrix hamiltonian_;
  std::vector<Matrix> lindblad_ops_;
};

Matrix apply_liouvillian(const LindbladSystem& sys, const Matrix& rho);

/// n^2 x n^2 matrix of the generator acting on column-stacked vec(rho).
Matrix superoperator(const LindbladSystem& sys);

/// Real coordinates of a unit-trace Hermitian matrix. Order: populations
/// rho_00 .. rho_{n-2,n-2}, then for every lower-triangle pair (i > j) in
/// row-major order the pair (Re rho_ij, Im rho_ij). rho_{n-1,n-1} is implied
/// by the unit trace.
class CoordinateMap {
 public:
  enum class Kind { population, real_part, imag_part };
  struct Entry {
    Kind kind;
    Index row;
    Index col;
  };

  explicit CoordinateMap(Index n);

  Index dim() const { return n_; }
  Index size() const { return static_cast<Index>(entries_.size()); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::string label(Index k) const;

  /// Coordinates of a Hermitian matrix (the trace is not checked).
  RealVector coordinates(const Matrix& m) const;
  /// The unit-trace Hermitian matrix with coordinates x.
  Matrix state(const RealVector& x) const;
  /// The traceless Hermitian matrix with coordinates dx (a velocity).
  Matrix tangent(const RealVector& dx) const;

 private:
  Index n_;
  std::vector<Entry> entries_;
};

/// The master equation as the affine system dx/dt = A x + a.
struct VectorizedDynamics {
  RealMatrix A;
  RealVector a;
  CoordinateMap coordinates;
};

VectorizedDynamics vectorize(const LindbladSystem& sys);

enum class SteadyStateSelection {
  prefer_pure,      // certified pure steady state if one exists, else ergodic average of I/n
  ergodic_average,  // ergodic projection of I/n
};

struct SteadyStateOptions {
  SteadyStateSelection selection = SteadyStateSelection::prefer_pure;
  /// When set and the steady state is not unique, return the state reached
  /// from this initial condition instead.
  std::optional<DensityMatrix> initial;
};

struct SteadyStateResult {
  DensityMatrix rho;
  bool unique = false;
  double spectral_abscissa = 0.0;
  double residual = 0.0;          // ||L rho||_F
  Index steady_dimension = 1;     // dimension of the generator kernel
};

/// Unique case: x = -A^{-1} a when cond(A) < tol.condition_limit.
/// Otherwise one steady state chosen per `options`. Throws InfeasibleError
/// when the residual exceeds 1e-9 * sys.scale().
SteadyStateResult steady_state(const LindbladSystem& sys, const SteadyStateOptions& options = {},
                               const Tolerances& tol = default_tolerances());

/// Limit of the time average of exp(L t) rho0 (the ergodic projection).
DensityMatrix ergodic_projection(const LindbladSystem& sys, const DensityMatrix& rho0,
                                 const Tolerances& tol = default_tolerances());

enum class Stability { strictly_stable, marginally_stable };

struct StabilityReport {
  Stability classification = Stability::marginally_stable;
  std::vector<Complex> eigenvalues;
  double spectral_abscissa = 0.0;
};

StabilityReport stability(const VectorizedDynamics& dyn,
                          const Tolerances& tol = default_tolerances());

struct IntegrationResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_trace_drift = 0.0;   // largest |Tr - 1| before renormalization
  double min_eigenvalue = 1.0;    // smallest eigenvalue over the sampled states
  std::vector<std::string> warnings;
};

/// Classic fourth-order Runge-Kutta on the master equation. States are stored
/// every `sample_every` steps (and at t = 0), each Hermitized and
/// trace-renormalized. A sampled eigenvalue below -1e-6 adds a warning.
IntegrationResult integrate(const LindbladSystem& sys, const DensityMatrix& rho0, double horizon,
                            double dt, std::size_t sample_every = 1);

}  // namespace puresteady

#endif  // PURESTEADY_LINDBLAD_HPP
