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

#ifndef PURESTEADY_CONFIG_HPP
#define PURESTEADY_CONFIG_HPP

namespace puresteady {

/// Numerical thresholds shared by every module. Relative thresholds are
/// multiplied by the Frobenius norm of the operator they test.
struct Tolerances {
  double eig_residual = 1e-9;         // relative, per eigenpair
  double hermiticity = 1e-12;         // absolute, ||M - M^dagger||
  double certification = 1e-9;        // relative, common-eigenvector residuals
  double eigen_cluster = 1e-8;        // relative, eigenvalue clustering radius
  double trace = 1e-12;               // absolute, |Tr(rho) - 1|
  double positivity = 1e-10;          // absolute, allowed negative eigenvalue
  double generator_residual = 1e-8;   // absolute, ||L(|phi><phi|)||_F
  double condition_limit = 1e12;      // A is treated as singular beyond this
  double stability = 1e-9;            // strictly stable iff abscissa < -this
  double operator_prune = 1e-14;      // relative, drop near-zero Lindblad operators
  double null_space = 1e-10;          // relative, superoperator null-space rank cut
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

}  // namespace puresteady

#endif  // PURESTEADY_CONFIG_HPP
