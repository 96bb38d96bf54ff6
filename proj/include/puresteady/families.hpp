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

#ifndef PURESTEADY_FAMILIES_HPP
#define PURESTEADY_FAMILIES_HPP

#include "puresteady/feedback.hpp"

namespace puresteady {

/// Sign choice of the single-atom feedback strength.
enum class Branch { plus, minus };

/// A point of the single-atom pure-steady-state manifold. The atom decays
/// through c = sqrt(gamma) sigma_minus, is driven by H = alpha sigma_y and
/// receives feedback F = lambda sigma_y.
struct SingleAtomPoint {
  double theta = 0.0;
  Branch branch = Branch::plus;
  double gamma = 1.0;
  double alpha = 0.0;   // (gamma/4) sin(theta) cos(theta)
  double lambda = 0.0;  // -(sqrt(gamma)/2)(1 +/- cos(theta))
  StateVector phi;

  FeedbackSetup setup() const;
};

/// Builds (alpha, lambda) from theta and the matching steady state
///   plus:  [cos(theta/2),  sin(theta/2)]
///   minus: [sin(theta/2), -cos(theta/2)]
/// and verifies ||L(|phi><phi|)||_F <= 1e-9 on the closed loop.
/// Throws ValidationError unless gamma > 0.
SingleAtomPoint single_atom_point(double theta, Branch branch, double gamma);

/// H = alpha sigma_y, c = sqrt(gamma) sigma_minus, F = lambda sigma_y.
FeedbackSetup single_atom_setup(double alpha, double lambda, double gamma, double eta = 1.0);

/// alpha^2 + ((lambda + sqrt(gamma)/2)^2 - gamma/8)^2 == (gamma/8)^2 within 1e-9 gamma^2.
bool on_single_atom_manifold(double alpha, double lambda, double gamma);

/// -i sqrt(gamma) (s (x) I + I (x) s) with s = sigma_x - i sigma_y = 2 sigma_minus.
Matrix two_qubit_measurement_operator(double gamma);

/// (|00> + |11>)/sqrt(2).
StateVector bell_state();

/// Feedback Hamiltonian stabilizing the Bell state under collective decay, H = 0.
struct BellFamilyPoint {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;
  double mu = 0.0;
  double gamma = 1.0;
  Matrix F;

  FeedbackSetup setup(double eta = 1.0) const;
};

/// Largest violation of the entry relations a Hermitian F must satisfy for
/// c - iF to have the Bell state as eigenvector with eigenvalue i mu:
///   f00 = f33, f03 = -mu - f00, f11 = f22, f12 = -f11 - mu,
///   f23 = -conj(f02) - 2 sqrt(gamma), f13 = -conj(f01) - 2 sqrt(gamma),
///   f01 + f02 = -4 sqrt(gamma).
double bell_constraint_violation(const Matrix& F, double mu, double gamma);

/// F = (x1+x2) II - (mu+x1+x2) XX + (x1-x2)(YY+ZZ) + (x3+sqrt(g)) IX
///     - (x3+3 sqrt(g)) XI + x4 (YZ-ZY) - sqrt(g) (XZ+ZX).
/// Throws NumericalError if the entry relations or the Bell-state generator
/// residual fail, and ValidationError unless gamma > 0.
BellFamilyPoint bell_feedback_family(double x1, double x2, double x3, double x4, double mu,
                                     double gamma);

/// Collective-spin scheme H = alpha Jx, F = lambda Jx with Jx = (XI + IX)/2.
struct OriginalScheme {
  double alpha = 0.0;
  double lambda = 0.0;
  double gamma = 1.0;
  Matrix H;
  Matrix F;

  FeedbackSetup setup(double eta = 1.0) const;
};

OriginalScheme two_qubit_original_scheme(double alpha, double lambda, double gamma);

}  // namespace puresteady

#endif  // PURESTEADY_FAMILIES_HPP
