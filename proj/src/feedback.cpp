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

#include "puresteady/feedback.hpp"

#include <cmath>
#include <sstream>

namespace puresteady {

FeedbackSetup::FeedbackSetup(Matrix hamiltonian, Matrix measurement, Matrix feedback, double eta,
                             const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)),
      measurement_(std::move(measurement)),
      feedback_(std::move(feedback)),
      eta_(eta) {
  const Index n = hamiltonian_.rows();
  auto check_shape = [n](const Matrix& m, const char* name) {
    if (m.rows() != n || m.cols() != n || n == 0) {
      throw DimensionError(std::string(name) + " must be " + std::to_string(n) + "x" +
                           std::to_string(n));
    }
    if (!m.allFinite()) {
      throw ValidationError(std::string(name) + " has non-finite entries");
    }
  };
  check_shape(hamiltonian_, "H");
  check_shape(measurement_, "c");
  check_shape(feedback_, "F");
  if (hermiticity_defect(hamiltonian_) > tol.hermiticity) {
    throw ValidationError("H is not Hermitian");
  }
  if (hermiticity_defect(feedback_) > tol.hermiticity) {
    throw ValidationError("F is not Hermitian");
  }
  if (!(eta_ > 0.0 && eta_ <= 1.0)) {
    std::ostringstream msg;
    msg << "detection efficiency eta=" << eta_ << " outside (0, 1]";
    throw ValidationError(msg.str());
  }
}

Matrix FeedbackSetup::effective_hamiltonian() const {
  const Matrix raw = hamiltonian_ + 0.5 * (measurement_.adjoint() * feedback_ +
                                           feedback_ * measurement_);
  return hermitian_part(raw);
}

Matrix FeedbackSetup::effective_measurement() const { return measurement_ - kI * feedback_; }

namespace {

void push_unless_negligible(std::vector<Matrix>& ops, Matrix op, double scale,
                            const Tolerances& tol) {
  if (op.norm() > tol.operator_prune * scale) {
    ops.push_back(std::move(op));
  }
}

double setup_scale(const FeedbackSetup& setup) {
  return std::max({setup.hamiltonian().norm(), setup.measurement().norm(),
                   setup.feedback().norm(), 1.0});
}

}  // namespace

LindbladSystem feedback_master_equation(const FeedbackSetup& setup) {
  if (setup.eta() != 1.0) {
    throw ValidationError("feedback_master_equation requires eta == 1");
  }
  return inefficient_feedback_master_equation(setup);
}

LindbladSystem inefficient_feedback_master_equation(const FeedbackSetup& setup) {
  const Tolerances& tol = default_tolerances();
  const double scale = setup_scale(setup);
  std::vector<Matrix> ops;
  push_unless_negligible(ops, setup.effective_measurement(), scale, tol);
  if (setup.eta() < 1.0) {
    const double weight = std::sqrt((1.0 - setup.eta()) / setup.eta());
    push_unless_negligible(ops, weight * setup.feedback(), scale, tol);
  }
  return LindbladSystem(setup.effective_hamiltonian(), std::move(ops));
}

FeedbackCertificationMatrices feedback_certification_matrices(const FeedbackSetup& setup) {
  const Matrix& h = setup.hamiltonian();
  const Matrix& c = setup.measurement();
  const Matrix& f = setup.feedback();
  return FeedbackCertificationMatrices{
      kI * h + kI * f * c + 0.5 * c.adjoint() * c + 0.5 * f * f,
      c - kI * f,
  };
}

std::vector<PureSteadyCertificate> enumerate_feedback_pure_steady_states(
    const FeedbackSetup& setup, const Tolerances& tol) {
  if (setup.eta() != 1.0) {
    throw ValidationError("efficient-feedback certification requires eta == 1");
  }
  const FeedbackCertificationMatrices m = feedback_certification_matrices(setup);
  const LindbladSystem closed_loop = feedback_master_equation(setup);
  const std::vector<Matrix> ops{m.jump, m.drift};
  std::vector<PureSteadyCertificate> out;
  for (const JointEigenspace& space : joint_eigenspaces(ops, tol.certification, tol)) {
    for (Index k = 0; k < space.basis.cols(); ++k) {
      const StateVector phi = StateVector::normalized(space.basis.col(k)).canonical_phase();
      PureSteadyCertificate cert = make_certificate(closed_loop, phi);
      if (cert.generator_residual > tol.generator_residual) {
        std::ostringstream msg;
        msg << "common eigenvector of the feedback matrices has closed-loop generator residual "
            << cert.generator_residual;
        throw NumericalError(msg.str());
      }
      out.push_back(std::move(cert));
    }
  }
  return out;
}

std::optional<PureSteadyCertificate> certify_feedback_pure_steady_state(
    const FeedbackSetup& setup, const Tolerances& tol) {
  auto all = enumerate_feedback_pure_steady_states(setup, tol);
  if (all.empty()) {
    return std::nullopt;
  }
  return std::move(all.front());
}

InefficientFeedbackReport certify_inefficient_feedback(const FeedbackSetup& setup,
                                                       const Tolerances& tol) {
  if (!(setup.eta() < 1.0)) {
    throw ValidationError("inefficient-feedback certification requires eta < 1");
  }
  InefficientFeedbackReport report;
  report.certificate = certify_pure_steady_state(inefficient_feedback_master_equation(setup), tol);

  const Matrix& c = setup.measurement();
  const Matrix open_loop_drift = kI * setup.hamiltonian() + 0.5 * c.adjoint() * c;
  if (auto shared = common_eigenvector(c, open_loop_drift, tol.certification)) {
    report.diagnosis.measurement_shares_eigenvector = true;
    report.diagnosis.shared_state = shared->vector;
  }
  return report;
}

}  // namespace puresteady
