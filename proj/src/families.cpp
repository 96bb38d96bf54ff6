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

#include "puresteady/families.hpp"

#include <cmath>
#include <sstream>

namespace puresteady {

namespace {

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be positive and finite");
  }
}

}  // namespace

FeedbackSetup single_atom_setup(double alpha, double lambda, double gamma, double eta) {
  require_positive_gamma(gamma);
  return FeedbackSetup(alpha * pauli(Pauli::Y), std::sqrt(gamma) * sigma_minus(),
                       lambda * pauli(Pauli::Y), eta);
}

FeedbackSetup SingleAtomPoint::setup() const { return single_atom_setup(alpha, lambda, gamma); }

SingleAtomPoint single_atom_point(double theta, Branch branch, double gamma) {
  require_positive_gamma(gamma);
  const double sg = std::sqrt(gamma);
  const double c = std::cos(theta);
  const double half_c = std::cos(theta / 2.0);
  const double half_s = std::sin(theta / 2.0);
  Vector phi(2);
  double lambda = 0.0;
  if (branch == Branch::plus) {
    lambda = -(sg / 2.0) * (1.0 + c);
    phi << half_c, half_s;
  } else {
    lambda = -(sg / 2.0) * (1.0 - c);
    phi << half_s, -half_c;
  }
  SingleAtomPoint point{theta, branch, gamma, (gamma / 4.0) * std::sin(theta) * c, lambda,
                        StateVector::normalized(phi)};

  const PureSteadyCertificate cert =
      make_certificate(feedback_master_equation(point.setup()), point.phi);
  if (cert.generator_residual > 1e-9 * std::max(1.0, gamma)) {
    std::ostringstream msg;
    msg << "single-atom point theta=" << theta << " has generator residual "
        << cert.generator_residual;
    throw NumericalError(msg.str());
  }
  return point;
}

bool on_single_atom_manifold(double alpha, double lambda, double gamma) {
  require_positive_gamma(gamma);
  const double shifted = lambda + std::sqrt(gamma) / 2.0;
  const double inner = shifted * shifted - gamma / 8.0;
  const double lhs = alpha * alpha + inner * inner;
  const double rhs = (gamma / 8.0) * (gamma / 8.0);
  return std::abs(lhs - rhs) <= 1e-9 * gamma * gamma;
}

Matrix two_qubit_measurement_operator(double gamma) {
  require_positive_gamma(gamma);
  const Matrix s = 2.0 * sigma_minus();
  const Matrix id = identity(2);
  return -kI * std::sqrt(gamma) * (kron(s, id) + kron(id, s));
}

StateVector bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return StateVector::normalized(v);
}

FeedbackSetup BellFamilyPoint::setup(double eta) const {
  return FeedbackSetup(Matrix::Zero(4, 4), two_qubit_measurement_operator(gamma), F, eta);
}

double bell_constraint_violation(const Matrix& F, double mu, double gamma) {
  const double s2 = 2.0 * std::sqrt(gamma);
  const double checks[] = {
      hermiticity_defect(F),
      std::abs(F(0, 0) - F(3, 3)),
      std::abs(F(0, 3) - (-mu - F(0, 0))),
      std::abs(F(1, 1) - F(2, 2)),
      std::abs(F(1, 2) - (-F(1, 1) - mu)),
      std::abs(F(2, 3) - (-std::conj(F(0, 2)) - s2)),
      std::abs(F(1, 3) - (-std::conj(F(0, 1)) - s2)),
      std::abs(F(0, 1) + F(0, 2) + 2.0 * s2),
  };
  double worst = 0.0;
  for (double v : checks) worst = std::max(worst, v);
  return worst;
}

BellFamilyPoint bell_feedback_family(double x1, double x2, double x3, double x4, double mu,
                                     double gamma) {
  require_positive_gamma(gamma);
  const double sg = std::sqrt(gamma);
  auto p = [](const char* labels) { return pauli_string(labels); };
  Matrix F = (x1 + x2) * p("II") - (mu + x1 + x2) * p("XX") + (x1 - x2) * (p("YY") + p("ZZ")) +
             (x3 + sg) * p("IX") - (x3 + 3.0 * sg) * p("XI") + x4 * (p("YZ") - p("ZY")) -
             sg * (p("XZ") + p("ZX"));
  BellFamilyPoint point{x1, x2, x3, x4, mu, gamma, std::move(F)};

  const double scale = 1.0 + std::abs(x1) + std::abs(x2) + std::abs(x3) + std::abs(x4) +
                       std::abs(mu) + sg;
  const double violation = bell_constraint_violation(point.F, mu, gamma);
  if (violation > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "Bell feedback family violates its entry relations by " << violation;
    throw NumericalError(msg.str());
  }
  const PureSteadyCertificate cert =
      make_certificate(feedback_master_equation(point.setup()), bell_state());
  if (cert.generator_residual > 1e-8 * scale * scale) {
    std::ostringstream msg;
    msg << "Bell state is not stationary for the family point, residual "
        << cert.generator_residual;
    throw NumericalError(msg.str());
  }
  return point;
}

FeedbackSetup OriginalScheme::setup(double eta) const {
  return FeedbackSetup(H, two_qubit_measurement_operator(gamma), F, eta);
}

OriginalScheme two_qubit_original_scheme(double alpha, double lambda, double gamma) {
  require_positive_gamma(gamma);
  const Matrix jx = 0.5 * (pauli_string("XI") + pauli_string("IX"));
  return OriginalScheme{alpha, lambda, gamma, alpha * jx, lambda * jx};
}

}  // namespace puresteady
