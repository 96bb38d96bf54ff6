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

#ifndef PURESTEADY_FEEDBACK_HPP
#define PURESTEADY_FEEDBACK_HPP

#include <optional>

#include "puresteady/certify.hpp"
#include "puresteady/lindblad.hpp"

namespace puresteady {

/// Homodyne measurement of channel c with the current I(t) = dy/dt fed back
/// through the Hamiltonian I(t) F; eta is the detection efficiency.
class FeedbackSetup {
 public:
  /// Throws ValidationError when H or F is not Hermitian or eta is outside
  /// (0, 1], and DimensionError for mismatched shapes.
  FeedbackSetup(Matrix hamiltonian, Matrix measurement, Matrix feedback, double eta = 1.0,
                const Tolerances& tol = default_tolerances());

  const Matrix& hamiltonian() const { return hamiltonian_; }
  const Matrix& measurement() const { return measurement_; }
  const Matrix& feedback() const { return feedback_; }
  double eta() const { return eta_; }
  Index dim() const { return hamiltonian_.rows(); }

  /// H + (1/2)(c^dagger F + F c), Hermitized.
  Matrix effective_hamiltonian() const;
  /// c - i F.
  Matrix effective_measurement() const;

 private:
  Matrix hamiltonian_;
  Matrix measurement_;
  Matrix feedback_;
  double eta_;
};

/// Averaged closed-loop dynamics for efficient detection:
/// H' = H + (1/2)(c^dagger F + F c) and the single operator c' = c - iF.
/// Throws ValidationError unless eta == 1.
LindbladSystem feedback_master_equation(const FeedbackSetup& setup);

/// Closed-loop dynamics for any eta in (0, 1]: the efficient system plus the
/// extra operator sqrt((1 - eta)/eta) F. Operators with Frobenius norm below
/// 1e-14 * scale are dropped, so eta == 1 reproduces feedback_master_equation.
LindbladSystem inefficient_feedback_master_equation(const FeedbackSetup& setup);

/// The pair whose common eigenvectors are exactly the pure steady states of
/// the efficient closed loop:
///   drift = iH + iFc + (1/2)c^dagger c + (1/2)F^2,   jump = c - iF.
/// drift equals iH' + (1/2)c'^dagger c' identically.
struct FeedbackCertificationMatrices {
  Matrix drift;
  Matrix jump;
};

FeedbackCertificationMatrices feedback_certification_matrices(const FeedbackSetup& setup);

/// Pure steady state of the efficient closed loop, found as a common
/// eigenvector of (drift, jump) and re-checked against the closed-loop
/// generator. Throws ValidationError unless eta == 1 and NumericalError if the
/// eigenvector passes but the generator residual does not.
std::optional<PureSteadyCertificate> certify_feedback_pure_steady_state(
    const FeedbackSetup& setup, const Tolerances& tol = default_tolerances());

/// Every pure steady state of the efficient closed loop.
std::vector<PureSteadyCertificate> enumerate_feedback_pure_steady_states(
    const FeedbackSetup& setup, const Tolerances& tol = default_tolerances());

/// Feedback-independent necessary condition for inefficient detection:
/// whether c and iH + (1/2)c^dagger c share an eigenvector.
struct InefficientDiagnosis {
  bool measurement_shares_eigenvector = false;
  std::optional<StateVector> shared_state;
};

struct InefficientFeedbackReport {
  std::optional<PureSteadyCertificate> certificate;
  InefficientDiagnosis diagnosis;
};

/// Certification of the eta < 1 closed loop plus the diagnosis above.
/// Throws ValidationError unless eta < 1.
InefficientFeedbackReport certify_inefficient_feedback(const FeedbackSetup& setup,
                                                       const Tolerances& tol = default_tolerances());

}  // namespace puresteady

#endif  // PURESTEADY_FEEDBACK_HPP
