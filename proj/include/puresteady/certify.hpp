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

#ifndef PURESTEADY_CERTIFY_HPP
#define PURESTEADY_CERTIFY_HPP

#include <optional>
#include <span>
#include <vector>

#include "puresteady/lindblad.hpp"
#include "puresteady/qcore.hpp"

namespace puresteady {

/// A subspace on which every operator of a list acts as a scalar.
struct JointEigenspace {
  Matrix basis;                      // orthonormal columns
  std::vector<Complex> eigenvalues;  // one per operator, in input order
};

/// All joint eigenspaces of `ops`. The first operator is diagonalized on the
/// full space; every later operator is compressed onto each surviving
/// eigenspace, diagonalized there, and only directions it maps back into the
/// subspace are kept. A vector is accepted when ||M v - lambda v|| <=
/// relative_tol * ||M||_F for every operator M. Results are sorted
/// lexicographically by (Re, Im) of the eigenvalues in operator order.
std::vector<JointEigenspace> joint_eigenspaces(std::span<const Matrix> ops, double relative_tol,
                                               const Tolerances& tol = default_tolerances());

struct CommonEigenvector {
  StateVector vector;
  Complex first_eigenvalue;   // eigenvalue of M1
  Complex second_eigenvalue;  // eigenvalue of M2
};

/// A unit vector v with M1 v = l1 v and M2 v = l2 v, or nothing. Eigenspaces
/// of M2 are searched first, so among several candidates the one whose pair
/// sorts first by (Re l2, Im l2, Re l1, Im l1) is returned.
std::optional<CommonEigenvector> common_eigenvector(const Matrix& m1, const Matrix& m2,
                                                    double relative_tol = 1e-9);

/// Evidence that |phi><phi| is a steady state of a Lindblad system.
struct PureSteadyCertificate {
  StateVector state;
  std::vector<Complex> lindblad_eigenvalues;  // mu_k with b_k phi = mu_k phi
  Complex drift_eigenvalue;                   // of iH + (1/2) sum b_k^dagger b_k
  std::vector<double> lindblad_residuals;     // ||b_k phi - mu_k phi||
  double drift_residual = 0.0;
  double generator_residual = 0.0;            // ||L(|phi><phi|)||_F
};

/// Rayleigh quotients and residuals of `phi` for `sys`; performs no acceptance test.
PureSteadyCertificate make_certificate(const LindbladSystem& sys, const StateVector& phi);

/// Searches for a common eigenvector of every b_k and of iH + (1/2) sum b_k^dagger b_k.
/// A returned certificate always satisfies the generator check
/// ||L(|phi><phi|)||_F <= tol.generator_residual.
std::optional<PureSteadyCertificate> certify_pure_steady_state(
    const LindbladSystem& sys, const Tolerances& tol = default_tolerances());

/// Every certified pure steady state: one per basis vector of each joint eigenspace.
std::vector<PureSteadyCertificate> enumerate_pure_steady_states(
    const LindbladSystem& sys, const Tolerances& tol = default_tolerances());

/// sum_k ( |<phi|b_k|phi>|^2 - <phi|b_k^dagger b_k|phi> ). Never positive; zero
/// exactly when phi is an eigenvector of every b_k.
double schwarz_gap(const LindbladSystem& sys, const StateVector& phi);

/// schwarz_gap(sys, phi) >= -1e-10.
bool schwarz_saturation(const LindbladSystem& sys, const StateVector& phi);

/// Block data of a decoherence-free split C^n = C^d (+) C^(n-d).
struct DfsSpec {
  LindbladSystem system;
  Index split = 0;
  bool strict = false;
  std::vector<Complex> alpha;
  std::vector<Matrix> P, Q, R, S;  // blocks of each b_k
  Matrix H1, H2, H3;
};

/// Checks P_k = alpha_k I, R_k = 0 and H2 + (i/2) sum_k conj(alpha_k) Q_k = 0 for
/// the leading d x d block; with `strict`, also Q_k = 0 (needed when the
/// initial state has weight outside the subspace). Throws ValidationError
/// unless 1 <= d < n.
std::optional<DfsSpec> decoherence_free_check(const LindbladSystem& sys, Index d,
                                              bool strict = false,
                                              const Tolerances& tol = default_tolerances());

/// Certificate for |h> (+) 0 where |h> is eigenvector `h_index` of H1 (ascending
/// eigenvalue order). Throws NumericalError if the state fails certification,
/// which means the DFS tolerance admitted a system it should not have.
PureSteadyCertificate decoherence_free_steady_state(const DfsSpec& spec, Index h_index,
                                                    const Tolerances& tol = default_tolerances());

}  // namespace puresteady

#endif  // PURESTEADY_CERTIFY_HPP
